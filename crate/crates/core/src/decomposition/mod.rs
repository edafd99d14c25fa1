//! Long color-avoiding directed paths in colored tournaments.
//!
//! [`recursive_color_avoiding`] runs several constructions and keeps, per
//! color, the longest path found:
//!
//! * the merged-color baseline ([`baseline`]);
//! * a forward-arc DP along a near-transitive vertex order;
//! * a period-3 path from cyclic triangles ([`three_color_path`]), which
//!   avoids every color outside its pattern;
//! * midpoint gluing: a longest path ending at `v` in the left half, the arc
//!   `v -> w`, and a longest path starting at `w` in the right half, where
//!   `v` and `w` are top-ranked endpoints near the midpoint;
//! * recursion on the two halves, and inside the blocks of a
//!   [`GluingStructure`], whose paths are chained through the anchors.
//!
//! None of this is trusted: every candidate is checked before it is kept.
//! At small sizes the exact subset DP is used instead.

mod baseline;
mod classify;
mod gluing;
mod tables;
mod three_color;

pub use baseline::{acyclic_class_path, baseline_floor, merged_baseline};
pub use classify::{audit_classification, classify_colors, ColorClassification};
pub use gluing::{audit_gluing, build_gluing, GluingStructure};
pub use three_color::{audit_three_color_path, three_color_path, Support, ThreeColorPath};

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::color::{Color, ColorSet};
use crate::paths::{proof_parameters, ColorConstraint, PathCertificate, PathMode, ProofParameters, EXACT_DIRECTED_MAX};
use crate::tournament::{clean_degrees, heuristic_transitive_order, ColoredTournament, TournamentError};
use tables::SubPaths;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("the tournament has no cyclic triangles")]
    NoCyclicTriangles,
    #[error("no edge lies in {support} triangles of the chosen pattern")]
    SupportTooHigh { support: usize },
    #[error("{n} vertices is fewer than 16 s = {}", 16 * s)]
    DegenerateScale { n: usize, s: usize },
    #[error("only {found} left-diffuse colors, {needed} needed")]
    NotDiffuse { found: usize, needed: usize },
    #[error("audit failed at {} -> {}: {reason}", u + 1, v + 1)]
    AuditFailed { u: usize, v: usize, reason: String },
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Where the interval width `s`, the long-color threshold and the diffuse
/// quota come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    /// `s = max(1, N/24)`, `gamma = s / 2N`, quota `max(1, q/4)`.
    Desk,
    /// The asymptotic formulas; `s` clamps to 1 at any practical size.
    Asymptotic,
    Custom { gamma: f64, s: usize, p: f64 },
}

impl Scale {
    pub fn params(self, q: usize, n: usize) -> Option<ProofParameters> {
        let base = proof_parameters(q, n).ok()?;
        Some(match self {
            Scale::Asymptotic => base,
            Scale::Desk => {
                let s = (n / 24).max(1);
                base.with_overrides(s as f64 / (2.0 * n as f64), s, (q / 4).max(1) as f64)
            }
            Scale::Custom { gamma, s, p } => base.with_overrides(gamma, s, p),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposeConfig {
    pub scale: Scale,
    /// sub-instances up to this size are solved by the exact subset DP
    pub exact_max: usize,
    pub max_depth: usize,
    /// seed of the vertex-order heuristic
    pub seed: u64,
    pub trace: bool,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        Self { scale: Scale::Desk, exact_max: EXACT_DIRECTED_MAX, max_depth: 3, seed: 0, trace: false }
    }
}

/// One recursion node: which case the classification pointed to, its size,
/// the best color, and the best length each branch reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub depth: usize,
    pub case: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub color: Color,
    pub branches: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub color: Color,
    pub path: PathCertificate,
    /// length of the best merged-color baseline path
    pub baseline: usize,
    pub trace: Vec<TraceNode>,
}

/// Whether `path` is a directed path of `t` avoiding color `c`.
fn avoids(t: &ColoredTournament, path: &[usize], c: Color) -> bool {
    let mut seen = vec![false; t.n()];
    for &v in path {
        if v >= t.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    !path.is_empty() && path.windows(2).all(|w| t.beats(w[0], w[1]) && t.color(w[0], w[1]) != c)
}

/// Longest candidate per color; earlier offers win ties.
struct Best<'a> {
    t: &'a ColoredTournament,
    paths: Vec<Vec<usize>>,
    branches: BTreeMap<String, usize>,
}

impl<'a> Best<'a> {
    fn new(t: &'a ColoredTournament) -> Self {
        Self { t, paths: vec![vec![0]; t.q()], branches: BTreeMap::new() }
    }

    fn offer(&mut self, c: Color, path: Vec<usize>, branch: &str) {
        if !avoids(self.t, &path, c) {
            return;
        }
        let slot = self.branches.entry(branch.to_string()).or_default();
        *slot = (*slot).max(path.len());
        if path.len() > self.paths[c as usize - 1].len() {
            self.paths[c as usize - 1] = path;
        }
    }

    fn offer_all(&mut self, per_color: Vec<Vec<usize>>, branch: &str) {
        for (i, p) in per_color.into_iter().enumerate() {
            self.offer(i as Color + 1, p, branch);
        }
    }

    fn best_color(&self) -> Color {
        // longest path, ties to the smaller color
        let mut best = 0;
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() > self.paths[best].len() {
                best = i;
            }
        }
        best as Color + 1
    }
}

/// Longest contiguous stretch of `path` avoiding `c`.
fn longest_window(t: &ColoredTournament, path: &[usize], c: Color) -> Vec<usize> {
    let (mut best, mut start) = ((0, 1), 0);
    for j in 1..path.len() {
        if t.color(path[j - 1], path[j]) == c {
            start = j;
        }
        if j + 1 - start > best.1 - best.0 {
            best = (start, j + 1);
        }
    }
    path[best.0..best.1.min(path.len())].to_vec()
}

fn lift(verts: &[usize], local: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    local.into_iter().map(|p| p.into_iter().map(|k| verts[k]).collect()).collect()
}

struct Solver<'c> {
    cfg: &'c DecomposeConfig,
}

impl Solver<'_> {
    fn exact_max(&self) -> usize {
        self.cfg.exact_max.min(EXACT_DIRECTED_MAX)
    }

    /// Best path avoiding each color, with the trace of this subtree.
    fn solve(&self, t: &ColoredTournament, depth: usize) -> (Vec<Vec<usize>>, Vec<TraceNode>) {
        let q = t.q();
        let n = t.n();
        let all: Vec<usize> = (0..n).collect();
        let mut best = Best::new(t);
        let mut trace = Vec::new();
        if q == 1 || n <= 1 {
            return (best.paths, trace);
        }
        if n <= self.exact_max() {
            for c in 1..=q as Color {
                best.offer(c, SubPaths::new(t, &all, ColorSet::avoiding(q, c), n).best_path(), "exact");
            }
            self.node(&mut trace, depth, "exact", n, &best);
            return (best.paths, trace);
        }

        best.offer_all(merged_baseline(t), "baseline");
        let order = heuristic_transitive_order(t, self.cfg.seed);
        for c in 1..=q as Color {
            best.offer(c, SubPaths::new(t, &order, ColorSet::avoiding(q, c), 0).best_path(), "order");
        }
        if let Ok(found) = three_color_path(t, Support::Auto) {
            for c in 1..=q as Color {
                best.offer(c, longest_window(t, &found.certificate.vertices, c), "three_color");
            }
        }

        let mut case = "unclassified";
        if let Some(params) = self.cfg.scale.params(q, n) {
            // pass to the cleaned subtournament when the order is close enough
            let (sub, kept) = match Ratio::<i64>::approximate_float(params.delta)
                .filter(|d| *d > Ratio::from_integer(0) && *d < Ratio::new(1, 2))
                .and_then(|d| clean_degrees(t, &order, d).ok())
            {
                Some(cleaned) if cleaned.kept.len() >= 16 * params.s => (cleaned.tournament, cleaned.kept),
                _ => (t.induced(&order), order.clone()),
            };
            let sub_order: Vec<usize> = (0..sub.n()).collect();
            if let Ok(cls) = classify_colors(&sub, &sub_order, &params, self.exact_max()) {
                let short = q - cls.long.len();
                let quota = cls.quota;
                case = if cls.condensed.len() + 2 * quota >= short { "case1" } else { "case2" };
                best.offer_all(lift(&kept, self.midpoint_glue(&sub, &cls)), "case1");
                if depth < self.cfg.max_depth {
                    let (halves, sub_trace) = self.halves(&sub, &cls, depth);
                    trace.extend(sub_trace);
                    best.offer_all(lift(&kept, halves.0), "halves");
                    best.offer_all(lift(&kept, halves.1), "halves_glued");
                    let (blocks, sub_trace) = self.block_chains(&sub, &cls, depth);
                    trace.extend(sub_trace);
                    best.offer_all(lift(&kept, blocks), "case2");
                }
            }
        }
        self.node(&mut trace, depth, case, n, &best);
        (best.paths, trace)
    }

    fn node(&self, trace: &mut Vec<TraceNode>, depth: usize, case: &str, n: usize, best: &Best<'_>) {
        if self.cfg.trace {
            trace.push(TraceNode {
                depth,
                case: case.to_string(),
                n,
                color: best.best_color(),
                branches: best.branches.clone(),
            });
        }
    }

    /// For each color `i`, the first arc `v -> w` (scanning `X_i ∩ B` then
    /// `Y_i ∩ C` in order) not colored `i` joins the two half paths.
    fn midpoint_glue(&self, t: &ColoredTournament, cls: &ColorClassification) -> Vec<Vec<usize>> {
        let q = t.q();
        let [a, b, c, d] = &cls.intervals;
        let left: Vec<usize> = a.iter().chain(b).copied().collect();
        let right: Vec<usize> = c.iter().chain(d).copied().collect();
        let mut out = vec![Vec::new(); q];
        for col in 1..=q as Color {
            let i = col as usize - 1;
            let xs: Vec<usize> = b.iter().copied().filter(|v| cls.top_left[i].contains(v)).collect();
            let ys: Vec<usize> = c.iter().copied().filter(|w| cls.top_right[i].contains(w)).collect();
            let arc = xs
                .iter()
                .flat_map(|&v| ys.iter().map(move |&w| (v, w)))
                .find(|&(v, w)| t.beats(v, w) && t.color(v, w) != col);
            let Some((v, w)) = arc else { continue };
            let allowed = ColorSet::avoiding(q, col);
            let lt = SubPaths::new(t, &left, allowed, self.exact_max());
            let rt = SubPaths::new(t, &right, allowed, self.exact_max());
            let kv = left.iter().position(|&x| x == v).unwrap();
            let kw = right.iter().position(|&x| x == w).unwrap();
            let mut path = lt.path_ending_at(kv);
            path.extend(rt.path_starting_at(kw));
            debug_assert_eq!(path.len(), cls.ending[i][v] + cls.starting[i][w]);
            out[i] = path;
        }
        out
    }

    /// Recursive solutions of the two halves, alone and joined end to start.
    #[allow(clippy::type_complexity)]
    fn halves(
        &self,
        t: &ColoredTournament,
        cls: &ColorClassification,
        depth: usize,
    ) -> ((Vec<Vec<usize>>, Vec<Vec<usize>>), Vec<TraceNode>) {
        let [a, b, c, d] = &cls.intervals;
        let left: Vec<usize> = a.iter().chain(b).copied().collect();
        let right: Vec<usize> = c.iter().chain(d).copied().collect();
        let ((lp, lt), (rp, rt)) = rayon::join(
            || self.solve(&t.induced(&left), depth + 1),
            || self.solve(&t.induced(&right), depth + 1),
        );
        let lp = lift(&left, lp);
        let rp = lift(&right, rp);
        let mut alone = Vec::new();
        let mut glued = Vec::new();
        for (i, (p1, p2)) in lp.iter().zip(&rp).enumerate() {
            let col = i as Color + 1;
            alone.push(if p2.len() > p1.len() { p2.clone() } else { p1.clone() });
            let (x, y) = (*p1.last().unwrap(), p2[0]);
            glued.push(if t.beats(x, y) && t.color(x, y) != col {
                p1.iter().chain(p2).copied().collect()
            } else {
                Vec::new()
            });
        }
        let mut trace = lt;
        trace.extend(rt);
        ((alone, glued), trace)
    }

    /// Chains recursive block solutions through the anchors of a gluing
    /// structure, for every color outside its palette. The reversed
    /// tournament supplies the structure when too few colors are left-diffuse.
    fn block_chains(&self, t: &ColoredTournament, cls: &ColorClassification, depth: usize) -> (Vec<Vec<usize>>, Vec<TraceNode>) {
        let q = t.q();
        if cls.chosen_diffuse.is_some() {
            return self.chain(t, cls, depth);
        }
        let rev = t.reversed();
        let rev_order: Vec<usize> = (0..t.n()).rev().collect();
        let Some(params) = self.cfg.scale.params(q, t.n()) else {
            return (vec![Vec::new(); q], Vec::new());
        };
        match classify_colors(&rev, &rev_order, &params, self.exact_max()) {
            Ok(rcls) => {
                let (paths, trace) = self.chain(&rev, &rcls, depth);
                (paths.into_iter().map(|mut p| {
                    p.reverse();
                    p
                }).collect(), trace)
            }
            Err(_) => (vec![Vec::new(); q], Vec::new()),
        }
    }

    fn chain(&self, t: &ColoredTournament, cls: &ColorClassification, depth: usize) -> (Vec<Vec<usize>>, Vec<TraceNode>) {
        let q = t.q();
        let mut out = vec![Vec::new(); q];
        let mut trace = Vec::new();
        let Ok(g) = build_gluing(t, cls, self.exact_max()) else {
            return (out, trace);
        };
        if g.t() == 0 {
            return (out, trace);
        }
        let mut solved = Vec::new();
        for block in &g.blocks {
            let (paths, sub) = self.solve(&t.induced(block), depth + 1);
            trace.extend(sub);
            solved.push(lift(block, paths));
        }
        for col in (1..=q as Color).filter(|&c| !g.palette.contains(c)) {
            let mut path = vec![g.anchors[0]];
            for (a, paths) in solved.iter().enumerate() {
                path.extend(&paths[col as usize - 1]);
                path.push(g.anchors[a + 1]);
            }
            out[col as usize - 1] = path;
        }
        (out, trace)
    }
}

/// Longest color-avoiding directed path found by the combined constructions.
/// The result is never shorter than the merged-color baseline and its
/// certificate always validates.
pub fn recursive_color_avoiding(t: &ColoredTournament, cfg: &DecomposeConfig) -> Decomposition {
    let solver = Solver { cfg };
    let (paths, trace) = solver.solve(t, 0);
    let mut best = Best::new(t);
    best.offer_all(paths, "search");
    let base = merged_baseline(t);
    let baseline = base.iter().map(Vec::len).max().unwrap_or(1);
    best.offer_all(base, "baseline");
    let color = best.best_color();
    let vertices = best.paths[color as usize - 1].clone();
    Decomposition {
        color,
        path: PathCertificate { vertices, mode: PathMode::Directed, constraint: ColorConstraint::Avoid(color) },
        baseline,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{longest_avoiding_directed_exact, validate_path, PathInstance};
    use crate::tournament::OrderedColoring;
    use crate::Budget;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tournament(n: usize, q: usize, seed: u64) -> ColoredTournament {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ColoredTournament::from_fn(n, q, |_, _| (rng.gen_bool(0.5), rng.gen_range(1..=q) as Color)).unwrap()
    }

    #[test]
    fn monochromatic_transitive_is_whole_order() {
        for n in [5, 30] {
            let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(n, 2, 1).unwrap());
            let out = recursive_color_avoiding(&t, &DecomposeConfig::default());
            assert_eq!(out.color, 2);
            assert_eq!(out.path.len(), n);
        }
    }

    #[test]
    fn random_forty_beats_floor() {
        let t = random_tournament(40, 4, 7);
        let cfg = DecomposeConfig { trace: true, ..DecomposeConfig::default() };
        let out = recursive_color_avoiding(&t, &cfg);
        validate_path(PathInstance::Tournament(&t), &out.path).unwrap();
        assert!(out.baseline >= baseline_floor(40, 4));
        assert!(out.path.len() >= out.baseline);
        assert!(!out.trace.is_empty());
    }

    #[test]
    fn small_instances_match_exact() {
        for seed in 0..10 {
            let t = random_tournament(9, 3, seed);
            let out = recursive_color_avoiding(&t, &DecomposeConfig::default());
            let exact = longest_avoiding_directed_exact(&t, out.color, Budget::UNLIMITED).unwrap();
            assert_eq!(out.path.len(), exact.len());
        }
    }

    #[test]
    fn window_of_period_three_path() {
        let t = ColoredTournament::from_edges(3, 3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        assert_eq!(longest_window(&t, &[0, 1, 2], 1), vec![1, 2]);
        assert_eq!(longest_window(&t, &[0, 1, 2], 3), vec![0, 1, 2]);
        assert_eq!(longest_window(&t, &[0], 1), vec![0]);
    }
}
