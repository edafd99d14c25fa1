//! Long paths colored by at most three colors in tournaments with many
//! cyclic triangles.
//!
//! Cyclic triangles are bucketed by color pattern; the largest bucket is
//! pruned until every surviving edge lies in at least `support` surviving
//! triangles; then a path `v1 v2 v3 ...` is grown so that each consecutive
//! triple is a surviving triangle of the pattern. The edges `v(j+2) -> v(j)`
//! close those triangles, so the square of the path is present too.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::DecompositionError;
use crate::color::{Color, ColorSet};
use crate::paths::{validate_path, ColorConstraint, PathCertificate, PathInstance, PathMode};
use crate::tournament::{pattern_buckets, ColoredTournament, Triangle, TrianglePattern};

/// Edge-support threshold for the pruning step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Try every threshold that leaves triangles and keep the longest path.
    Auto,
    Fixed(usize),
}

/// A path whose colors repeat `pattern` with period 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeColorPath {
    #[serde(skip)]
    pub certificate: PathCertificate,
    /// colors of the first three path edges (or the cyclic triangle pattern)
    pub pattern: [Color; 3],
    pub support: usize,
}

/// Triangles of one pattern under pruning; edges are keyed with the smaller endpoint first.
struct Pruned {
    alive: HashSet<Triangle>,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn prune(triangles: &[Triangle], support: usize) -> Pruned {
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (k, tri) in triangles.iter().enumerate() {
        for (u, v) in tri.arcs() {
            *count.entry(edge_key(u, v)).or_default() += 1;
            by_edge.entry(edge_key(u, v)).or_default().push(k);
        }
    }
    let mut alive = vec![true; triangles.len()];
    let mut dead_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(usize, usize)> = {
        let mut q: Vec<_> = count.iter().filter(|(_, &c)| c < support).map(|(&e, _)| e).collect();
        q.sort_unstable();
        q
    };
    while let Some(e) = queue.pop() {
        if !dead_edges.insert(e) {
            continue;
        }
        for &k in &by_edge[&e] {
            if !alive[k] {
                continue;
            }
            alive[k] = false;
            for (u, v) in triangles[k].arcs() {
                let f = edge_key(u, v);
                let c = count.get_mut(&f).unwrap();
                *c -= 1;
                if *c < support && !dead_edges.contains(&f) {
                    queue.push(f);
                }
            }
        }
    }
    Pruned { alive: triangles.iter().zip(&alive).filter(|(_, &a)| a).map(|(t, _)| *t).collect() }
}

/// Orientation of `tri` whose colors read `pattern` along the cycle, if any.
fn rotate_to(t: &ColoredTournament, tri: &Triangle, pattern: [Color; 3]) -> Option<[usize; 3]> {
    let cyc = [tri.a, tri.b, tri.c];
    (0..3)
        .map(|k| [cyc[k], cyc[(k + 1) % 3], cyc[(k + 2) % 3]])
        .find(|&[x, y, z]| [t.color(x, y), t.color(y, z), t.color(z, x)] == pattern)
}

fn triangle_of(x: usize, y: usize, z: usize) -> Triangle {
    // x -> y -> z -> x; store with the smallest vertex first
    let m = x.min(y).min(z);
    if m == x {
        Triangle { a: x, b: y, c: z }
    } else if m == y {
        Triangle { a: y, b: z, c: x }
    } else {
        Triangle { a: z, b: x, c: y }
    }
}

fn grow(t: &ColoredTournament, pruned: &Pruned, start: [usize; 3], pattern: [Color; 3]) -> Vec<usize> {
    let n = t.n();
    let mut path = start.to_vec();
    let mut used = vec![false; n];
    for &v in &path {
        used[v] = true;
    }
    loop {
        let j = path.len() - 1;
        let (prev, last) = (path[j - 1], path[j]);
        // edge j (0-based) of the path gets pattern[j % 3]; the closing edge
        // back to `prev` gets pattern[(j + 1) % 3]
        let (want_fwd, want_back) = (pattern[j % 3], pattern[(j + 1) % 3]);
        let next = (0..n).find(|&w| {
            !used[w]
                && t.beats(last, w)
                && t.beats(w, prev)
                && t.color(last, w) == want_fwd
                && t.color(w, prev) == want_back
                && pruned.alive.contains(&triangle_of(prev, last, w))
        });
        match next {
            Some(w) => {
                used[w] = true;
                path.push(w);
            }
            None => return path,
        }
    }
}

fn best_for_support(t: &ColoredTournament, bucket: &[Triangle], pattern: [Color; 3], support: usize) -> Option<Vec<usize>> {
    let pruned = prune(bucket, support);
    let mut starts: Vec<&Triangle> = pruned.alive.iter().collect();
    starts.sort_unstable();
    let mut best: Option<Vec<usize>> = None;
    for tri in starts {
        let Some(start) = rotate_to(t, tri, pattern) else { continue };
        let path = grow(t, &pruned, start, pattern);
        if best.as_ref().is_none_or(|b| path.len() > b.len()) {
            best = Some(path);
        }
    }
    best
}

/// Builds a period-3 path from the most common cyclic-triangle pattern.
pub fn three_color_path(t: &ColoredTournament, support: Support) -> Result<ThreeColorPath, DecompositionError> {
    let buckets: BTreeMap<TrianglePattern, Vec<Triangle>> = pattern_buckets(t);
    // largest bucket; ties go to the least pattern
    let Some((pattern, bucket)) = buckets.iter().max_by_key(|(p, b)| (b.len(), std::cmp::Reverse(**p))) else {
        return Err(DecompositionError::NoCyclicTriangles);
    };
    let pattern = pattern.0;
    let (path, used_support) = match support {
        Support::Fixed(k) => {
            let path = best_for_support(t, bucket, pattern, k).ok_or(DecompositionError::SupportTooHigh { support: k })?;
            (path, k)
        }
        Support::Auto => {
            let mut best: Option<(Vec<usize>, usize)> = None;
            for k in 1.. {
                let Some(path) = best_for_support(t, bucket, pattern, k) else { break };
                // prefer longer paths, then larger support
                if best.as_ref().is_none_or(|(b, _)| path.len() >= b.len()) {
                    best = Some((path, k));
                }
            }
            best.expect("support 1 keeps every triangle")
        }
    };
    let colors: ColorSet = pattern.iter().copied().collect();
    Ok(ThreeColorPath {
        certificate: PathCertificate { vertices: path, mode: PathMode::Directed, constraint: ColorConstraint::Allowed(colors) },
        pattern,
        support: used_support,
    })
}

/// Literal check of the period-3 structure: a valid directed path in at most
/// three colors, edge `j` colored like edge `j + 3`, and every vertex beaten
/// by the vertex two steps later.
pub fn audit_three_color_path(t: &ColoredTournament, out: &ThreeColorPath) -> Result<(), String> {
    let cert = &out.certificate;
    validate_path(PathInstance::Tournament(t), cert).map_err(|e| e.to_string())?;
    let v = &cert.vertices;
    if v.len() < 3 {
        return Err(format!("path has {} vertices; at least one triangle expected", v.len()));
    }
    let colors: Vec<Color> = v.windows(2).map(|w| t.color(w[0], w[1])).collect();
    let distinct: ColorSet = colors.iter().copied().collect();
    if distinct.len() > 3 {
        return Err(format!("path uses {} colors", distinct.len()));
    }
    for j in 0..colors.len() {
        if colors[j] != out.pattern[j % 3] {
            return Err(format!("edge {} -> {} breaks the period-3 coloring", v[j] + 1, v[j + 1] + 1));
        }
    }
    for j in 0..v.len() - 2 {
        if !t.beats(v[j + 2], v[j]) {
            return Err(format!("distance-two edge between {} and {} is not backward", v[j] + 1, v[j + 2] + 1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::OrderedColoring;

    #[test]
    fn transitive_has_no_triangles() {
        let k = OrderedColoring::from_fn(8, 3, |u, v| ((u + v) % 3 + 1) as Color).unwrap();
        let t = ColoredTournament::transitive(&k);
        assert!(matches!(three_color_path(&t, Support::Auto), Err(DecompositionError::NoCyclicTriangles)));
    }

    #[test]
    fn single_cycle() {
        let t = ColoredTournament::from_edges(3, 3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        let out = three_color_path(&t, Support::Fixed(1)).unwrap();
        assert_eq!(out.certificate.vertices, vec![0, 1, 2]);
        assert_eq!(out.pattern, [1, 2, 3]);
        audit_three_color_path(&t, &out).unwrap();
        assert!(matches!(three_color_path(&t, Support::Fixed(2)), Err(DecompositionError::SupportTooHigh { support: 2 })));
    }

    #[test]
    fn rotational_tournament() {
        // i -> i+1, i+2 (mod 7): every consecutive triple with a backward chord
        let n = 7;
        let t = ColoredTournament::from_fn(n, 2, |u, v| {
            let d = (v + n - u) % n;
            (d <= 3, 1)
        })
        .unwrap();
        let out = three_color_path(&t, Support::Auto).unwrap();
        audit_three_color_path(&t, &out).unwrap();
        assert!(out.certificate.len() >= 3);
    }
}
