//! Edge-colored tournaments and ordered colorings.
//!
//! Vertices are 0-based internally; the JSON formats in [`crate::formats`]
//! shift them to 1-based.

mod clean;
mod order;
mod triangles;

pub use clean::{audit_clean_degrees, clean_degrees, CleanedInstance, ConsistentOrderedGraph};
pub use order::{
    backward_edge_count, exact_min_backward, heuristic_transitive_order, validate_permutation,
    EXACT_FAS_MAX,
};
pub use triangles::{
    cyclic_triangle_count_from_scores, cyclic_triangles, pattern_buckets, Triangle, TrianglePattern,
};

use thiserror::Error;

use crate::color::{Color, ColorSet, MAX_COLORS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TournamentError {
    #[error("palette size must be in [1, {MAX_COLORS}], got {0}")]
    BadPalette(usize),
    #[error("color {color} on pair ({u},{v}) is outside [1, {q}]")]
    ColorOutOfRange { u: usize, v: usize, color: Color, q: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair ({0},{1}) appears more than once")]
    DuplicatePair(usize, usize),
    #[error("pair ({0},{1}) is missing")]
    MissingPair(usize, usize),
    #[error("ordered coloring pair ({0},{1}) must have u < v")]
    UnorderedPair(usize, usize),
    #[error("not a permutation of the vertex set: {0}")]
    BadPermutation(String),
    #[error("delta must lie strictly between 0 and 1/2, got {0}")]
    DeltaOutOfRange(String),
    #[error("order has {backward} backward edges, more than delta^2 N^2 = {allowed}")]
    NotClose { backward: usize, allowed: String },
    #[error("instance has {n} vertices, limit for this routine is {limit}")]
    TooLarge { n: usize, limit: usize },
}

fn check_palette(q: usize) -> Result<(), TournamentError> {
    if q == 0 || q > MAX_COLORS {
        return Err(TournamentError::BadPalette(q));
    }
    Ok(())
}

/// A tournament on `0..n` with every edge colored from `[q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTournament {
    n: usize,
    q: usize,
    /// `arcs[u * n + v]` is true iff `u -> v`.
    arcs: Vec<bool>,
    /// symmetric; zero on the diagonal
    colors: Vec<Color>,
}

impl ColoredTournament {
    /// Builds a tournament from `(u, v, c)` triples meaning `u -> v` with color `c`.
    pub fn from_edges(n: usize, q: usize, edges: &[(usize, usize, Color)]) -> Result<Self, TournamentError> {
        check_palette(q)?;
        let mut arcs = vec![false; n * n];
        let mut colors = vec![0; n * n];
        for &(u, v, c) in edges {
            if u >= n {
                return Err(TournamentError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(TournamentError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(TournamentError::SelfLoop(u));
            }
            if c == 0 || c as usize > q {
                return Err(TournamentError::ColorOutOfRange { u, v, color: c, q });
            }
            if colors[u * n + v] != 0 {
                return Err(TournamentError::DuplicatePair(u.min(v), u.max(v)));
            }
            arcs[u * n + v] = true;
            colors[u * n + v] = c;
            colors[v * n + u] = c;
        }
        for u in 0..n {
            for v in u + 1..n {
                if colors[u * n + v] == 0 {
                    return Err(TournamentError::MissingPair(u, v));
                }
            }
        }
        Ok(Self { n, q, arcs, colors })
    }

    /// Builds a tournament from a rule giving, for each `u < v`, whether
    /// `u -> v` and the color of the pair.
    pub fn from_fn(n: usize, q: usize, mut rule: impl FnMut(usize, usize) -> (bool, Color)) -> Result<Self, TournamentError> {
        check_palette(q)?;
        let mut arcs = vec![false; n * n];
        let mut colors = vec![0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let (forward, c) = rule(u, v);
                if c == 0 || c as usize > q {
                    return Err(TournamentError::ColorOutOfRange { u, v, color: c, q });
                }
                if forward {
                    arcs[u * n + v] = true;
                } else {
                    arcs[v * n + u] = true;
                }
                colors[u * n + v] = c;
                colors[v * n + u] = c;
            }
        }
        Ok(Self { n, q, arcs, colors })
    }

    /// The transitive tournament `u -> v` for all `u < v`, colored by `k`.
    pub fn transitive(k: &OrderedColoring) -> Self {
        Self::from_fn(k.n(), k.q(), |u, v| (true, k.color(u, v))).expect("ordered coloring is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.arcs[u * self.n + v]
    }

    /// Color of the pair `{u, v}` regardless of orientation.
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs[v * self.n..(v + 1) * self.n].iter().filter(|&&a| a).count()
    }

    /// All arcs `(u, v, color)` with `u -> v`, sorted by `(min(u,v), max(u,v))`.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.beats(u, v) {
                    out.push((u, v, self.color(u, v)));
                } else {
                    out.push((v, u, self.color(u, v)));
                }
            }
        }
        out
    }

    /// Subtournament induced on `vertices`; vertex `k` of the result is `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let mut arcs = vec![false; m * m];
        let mut colors = vec![0; m * m];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if a != b {
                    arcs[a * m + b] = self.beats(u, v);
                    colors[a * m + b] = self.color(u, v);
                }
            }
        }
        Self { n: m, q: self.q, arcs, colors }
    }

    /// Same coloring with every arc reversed.
    pub fn reversed(&self) -> Self {
        let n = self.n;
        let mut arcs = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                arcs[u * n + v] = self.arcs[v * n + u];
            }
        }
        Self { n, q: self.q, arcs, colors: self.colors.clone() }
    }

    /// Replaces every color through `map` (indexed by `color - 1`) into a palette of size `q`.
    pub fn recolored(&self, q: usize, map: &[Color]) -> Result<Self, TournamentError> {
        check_palette(q)?;
        let colors = self
            .colors
            .iter()
            .map(|&c| if c == 0 { 0 } else { map[c as usize - 1] })
            .collect();
        Ok(Self { n: self.n, q, arcs: self.arcs.clone(), colors })
    }

    /// Out-neighborhoods restricted to arcs whose color lies in `allowed`, as bitmasks.
    /// Only valid for `n <= 64`.
    pub fn allowed_out_masks(&self, allowed: ColorSet) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .filter(|&v| u != v && self.beats(u, v) && allowed.contains(self.color(u, v)))
                    .fold(0u64, |m, v| m | (1u64 << v))
            })
            .collect()
    }

    /// True iff `u -> v` for every `u < v`.
    pub fn is_transitive_in_index_order(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.beats(u, v)))
    }
}

/// Read access to a coloring of the complete graph on `0..n`, taken in index
/// order. Lets path DPs run over lazily evaluated products.
pub trait OrderedColors {
    fn n(&self) -> usize;
    fn q(&self) -> usize;
    /// Color of the pair `{u, v}`, `u != v`.
    fn color(&self, u: usize, v: usize) -> Color;
}

impl OrderedColors for OrderedColoring {
    fn n(&self) -> usize {
        self.n
    }
    fn q(&self) -> usize {
        self.q
    }
    fn color(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }
}

/// A `q`-edge-coloring of the complete graph on `0..n`, read in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedColoring {
    n: usize,
    q: usize,
    colors: Vec<Color>,
}

impl OrderedColoring {
    pub fn from_fn(n: usize, q: usize, mut rule: impl FnMut(usize, usize) -> Color) -> Result<Self, TournamentError> {
        check_palette(q)?;
        let mut colors = vec![0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let c = rule(u, v);
                if c == 0 || c as usize > q {
                    return Err(TournamentError::ColorOutOfRange { u, v, color: c, q });
                }
                colors[u * n + v] = c;
                colors[v * n + u] = c;
            }
        }
        Ok(Self { n, q, colors })
    }

    /// Builds a coloring from `(u, v, c)` triples with `u < v`, each pair exactly once.
    pub fn from_pairs(n: usize, q: usize, pairs: &[(usize, usize, Color)]) -> Result<Self, TournamentError> {
        check_palette(q)?;
        let mut colors = vec![0; n * n];
        for &(u, v, c) in pairs {
            if u >= n || v >= n {
                return Err(TournamentError::VertexOutOfRange(u.max(v)));
            }
            if u >= v {
                return Err(TournamentError::UnorderedPair(u, v));
            }
            if c == 0 || c as usize > q {
                return Err(TournamentError::ColorOutOfRange { u, v, color: c, q });
            }
            if colors[u * n + v] != 0 {
                return Err(TournamentError::DuplicatePair(u, v));
            }
            colors[u * n + v] = c;
            colors[v * n + u] = c;
        }
        for u in 0..n {
            for v in u + 1..n {
                if colors[u * n + v] == 0 {
                    return Err(TournamentError::MissingPair(u, v));
                }
            }
        }
        Ok(Self { n, q, colors })
    }

    pub fn monochromatic(n: usize, q: usize, c: Color) -> Result<Self, TournamentError> {
        Self::from_fn(n, q, |_, _| c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Color of the pair `{u, v}`, `u != v`.
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    /// `(u, v, c)` for all `u < v`.
    pub fn pairs(&self) -> Vec<(usize, usize, Color)> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.push((u, v, self.color(u, v)));
            }
        }
        out
    }

    pub fn recolored(&self, q: usize, map: &[Color]) -> Result<Self, TournamentError> {
        Self::from_fn(self.n, q, |u, v| map[self.color(u, v) as usize - 1])
    }

    /// Colors actually used on some edge.
    pub fn used_colors(&self) -> ColorSet {
        self.pairs().into_iter().map(|(_, _, c)| c).collect()
    }
}
