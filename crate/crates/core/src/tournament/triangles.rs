use std::collections::BTreeMap;

use rayon::prelude::*;

use super::ColoredTournament;
use crate::color::Color;

/// A cyclic triangle `a -> b -> c -> a` with `a` its smallest vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triangle {
    /// Edge colors read along the cycle: `(ab, bc, ca)`.
    pub fn colors(&self, t: &ColoredTournament) -> [Color; 3] {
        [t.color(self.a, self.b), t.color(self.b, self.c), t.color(self.c, self.a)]
    }

    pub fn pattern(&self, t: &ColoredTournament) -> TrianglePattern {
        TrianglePattern::canonical(self.colors(t))
    }

    /// The three edges in cycle order.
    pub fn arcs(&self) -> [(usize, usize); 3] {
        [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
    }
}

/// Color triple of a cyclic triangle up to rotation: the lexicographically
/// least rotation of the colors read along the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrianglePattern(pub [Color; 3]);

impl TrianglePattern {
    pub fn canonical(colors: [Color; 3]) -> Self {
        let rotations = [
            colors,
            [colors[1], colors[2], colors[0]],
            [colors[2], colors[0], colors[1]],
        ];
        TrianglePattern(*rotations.iter().min().unwrap())
    }
}

/// All cyclic triangles, each once, sorted by `(a, b, c)`.
pub fn cyclic_triangles(t: &ColoredTournament) -> Vec<Triangle> {
    let n = t.n();
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut local = Vec::new();
            for b in a + 1..n {
                for c in b + 1..n {
                    if t.beats(a, b) && t.beats(b, c) && t.beats(c, a) {
                        local.push(Triangle { a, b, c });
                    } else if t.beats(a, c) && t.beats(c, b) && t.beats(b, a) {
                        local.push(Triangle { a, b: c, c: b });
                    }
                }
            }
            local
        })
        .flatten()
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `C(n,3) - sum_v C(outdeg(v), 2)`: every transitive triple has exactly one
/// vertex beating the other two.
pub fn cyclic_triangle_count_from_scores(t: &ColoredTournament) -> u64 {
    let n = t.n() as u64;
    let total = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    let transitive: u64 = (0..t.n())
        .map(|v| {
            let d = t.out_degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    total - transitive
}

/// Cyclic triangles grouped by canonical color pattern.
pub fn pattern_buckets(t: &ColoredTournament) -> BTreeMap<TrianglePattern, Vec<Triangle>> {
    let mut buckets: BTreeMap<TrianglePattern, Vec<Triangle>> = BTreeMap::new();
    for tri in cyclic_triangles(t) {
        buckets.entry(tri.pattern(t)).or_default().push(tri);
    }
    buckets
}
