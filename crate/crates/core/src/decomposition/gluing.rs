//! Anchors and blocks inside the left-diffuse endpoint sets, through which
//! avoiding paths of the blocks can be chained.

use serde::Serialize;

use super::classify::ColorClassification;
use super::tables::SubPaths;
use super::DecompositionError;
use crate::color::{Color, ColorSet};
use crate::tournament::ColoredTournament;

/// Anchors `v_1 .. v_{t+1}` and blocks `S_1 .. S_t` with
/// `v_a ≺ S_a ≺ v_{a+1}`, all arcs `v_a -> S_a -> v_{a+1}`, and every such
/// arc colored from `palette`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingStructure {
    pub anchors: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub palette: ColorSet,
    /// the block came from full windows of `4s` and `8s` vertices and so must have at least `s` vertices
    pub full_window: Vec<bool>,
    pub s: usize,
}

impl GluingStructure {
    pub fn t(&self) -> usize {
        self.blocks.len()
    }
}

/// Vertices `w` of the left half for which "`v ~ w` in the ordered graph
/// and `v -> w` implies color `i`" is not known to hold: the vertices of a
/// longest `i`-avoiding path ending at `v`, all of `X_i`, and every observed
/// exception (an arc against the order, or a forward arc of another color).
fn exceptional(
    t: &ColoredTournament,
    left: &[usize],
    pos: &[usize],
    v: usize,
    i: Color,
    path_to_v: &[usize],
    top: &[usize],
) -> Vec<bool> {
    let mut out = vec![false; t.n()];
    for &w in path_to_v.iter().chain(top) {
        out[w] = true;
    }
    for &w in left {
        if w == v {
            continue;
        }
        let against_order = if pos[w] > pos[v] { !t.beats(v, w) } else { !t.beats(w, v) };
        let wrong_color = pos[w] > pos[v] && t.beats(v, w) && t.color(v, w) != i;
        if against_order || wrong_color {
            out[w] = true;
        }
    }
    out
}

/// Builds the anchor/block chain from the chosen left-diffuse colors.
///
/// Windows of `4s` and `8s` vertices are used while at least `12s` vertices
/// of `U` remain; after that thirds of the remainder. A block smaller than
/// required ends the chain instead of being emitted.
pub fn build_gluing(
    t: &ColoredTournament,
    cls: &ColorClassification,
    exact_max: usize,
) -> Result<GluingStructure, DecompositionError> {
    let Some(palette) = cls.chosen_diffuse else {
        return Err(DecompositionError::NotDiffuse { found: cls.left_diffuse.len(), needed: cls.quota });
    };
    let s = cls.s;
    let n = t.n();
    let mut pos = vec![0; n];
    for (k, &v) in cls.order.iter().enumerate() {
        pos[v] = k;
    }
    let left: Vec<usize> = cls.intervals[0].iter().chain(&cls.intervals[1]).copied().collect();
    let in_a = |v: usize| pos[v] < cls.intervals[0].len();

    // owner[v]: the least chosen color whose U-set contains v
    let mut owner: Vec<Option<Color>> = vec![None; n];
    let mut exc: Vec<Option<Vec<bool>>> = vec![None; n];
    for i in palette.iter() {
        let top = &cls.top_left[i as usize - 1];
        let tables = SubPaths::new(t, &left, ColorSet::avoiding(t.q(), i), exact_max);
        for &v in top.iter().filter(|&&v| in_a(v)) {
            if owner[v].is_some() {
                continue;
            }
            owner[v] = Some(i);
            let k = left.iter().position(|&w| w == v).unwrap();
            exc[v] = Some(exceptional(t, &left, &pos, v, i, &tables.path_ending_at(k), top));
        }
    }
    let mut u: Vec<usize> = (0..n).filter(|&v| owner[v].is_some()).collect();
    u.sort_by_key(|&v| pos[v]);

    let mut out = GluingStructure { anchors: Vec::new(), blocks: Vec::new(), palette, full_window: Vec::new(), s };
    let Some(&first) = u.first() else {
        return Ok(out);
    };
    out.anchors.push(first);
    let mut at = 0;
    loop {
        let rest = &u[at + 1..];
        let (ilen, jlen, full) = if rest.len() >= 12 * s {
            (4 * s, 8 * s, true)
        } else if rest.len() >= 2 {
            let ilen = rest.len().div_ceil(3);
            (ilen, rest.len() - ilen, false)
        } else {
            break;
        };
        let anchor = u[at];
        let anchor_exc = exc[anchor].as_ref().unwrap();
        let window_i: Vec<usize> = rest[..ilen].iter().copied().filter(|&v| !anchor_exc[v]).collect();
        let window_j = &rest[ilen..ilen + jlen];
        // the next anchor is exceptional for as few block candidates as possible
        let degree = |w: usize| window_i.iter().filter(|&&v| exc[v].as_ref().unwrap()[w]).count();
        let Some(&next) = window_j.iter().min_by_key(|&&w| (degree(w), pos[w])) else { break };
        let block: Vec<usize> = window_i.iter().copied().filter(|&v| !exc[v].as_ref().unwrap()[next]).collect();
        let needed = if full { s } else { 1 };
        if block.len() < needed {
            break;
        }
        out.blocks.push(block);
        out.full_window.push(full);
        out.anchors.push(next);
        at = u.iter().position(|&v| v == next).unwrap();
    }
    audit_gluing(t, &cls.order, &out)?;
    Ok(out)
}

/// Re-checks the interleaving, sizes, arc directions, arc colors and
/// disjointness of a gluing structure against the tournament.
pub fn audit_gluing(t: &ColoredTournament, order: &[usize], g: &GluingStructure) -> Result<(), DecompositionError> {
    let fail = |u: usize, v: usize, reason: String| Err(DecompositionError::AuditFailed { u, v, reason });
    let mut pos = vec![usize::MAX; t.n()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    if g.anchors.len() != g.blocks.len() + 1 && !(g.anchors.is_empty() && g.blocks.is_empty()) {
        let v = g.anchors.first().copied().unwrap_or(0);
        return fail(v, v, format!("{} anchors for {} blocks", g.anchors.len(), g.blocks.len()));
    }
    let mut seen = vec![false; t.n()];
    for v in g.anchors.iter().chain(g.blocks.iter().flatten()) {
        if seen[*v] {
            return fail(*v, *v, "vertex used twice".into());
        }
        seen[*v] = true;
    }
    for (a, block) in g.blocks.iter().enumerate() {
        let (from, to) = (g.anchors[a], g.anchors[a + 1]);
        let needed = if g.full_window.get(a).copied().unwrap_or(true) { g.s } else { 1 };
        if block.len() < needed {
            return fail(from, to, format!("block {} has {} vertices, needs {needed}", a + 1, block.len()));
        }
        for &w in block {
            if !(pos[from] < pos[w] && pos[w] < pos[to]) {
                return fail(from, w, format!("block {} is not between its anchors", a + 1));
            }
            for (x, y) in [(from, w), (w, to)] {
                if !t.beats(x, y) {
                    return fail(x, y, "arc points the wrong way".into());
                }
                if !g.palette.contains(t.color(x, y)) {
                    return fail(x, y, format!("color {} outside {}", t.color(x, y), g.palette));
                }
            }
        }
    }
    Ok(())
}
