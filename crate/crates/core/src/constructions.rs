//! Lower-bound constructions: lexicographic products of ordered colorings,
//! the canonical product coloring, the color-balancing product, and the
//! product of r-increasing vector families.

use thiserror::Error;

use crate::color::Color;
use crate::tournament::{OrderedColoring, OrderedColors, TournamentError};
use crate::vectors::{validate_increasing, Certificate, GridVector, VectorError, VectorFamily};

/// Largest vertex count a product is materialized at; use [`LexChain`]
/// directly beyond this.
pub const MATERIALIZE_MAX: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("palette sizes differ ({0} vs {1})")]
    PaletteMismatch(usize, usize),
    #[error("families differ in {what} ({a} vs {b})")]
    FamilyMismatch { what: &'static str, a: usize, b: usize },
    #[error("input family is not r-increasing: {0}")]
    InputNotIncreasing(Certificate),
    #[error("product family failed validation: {0}")]
    OutputNotIncreasing(Certificate),
    #[error("product would have {0} vertices, more than {MATERIALIZE_MAX}")]
    TooLarge(usize),
    #[error("clique size must be at least 1")]
    EmptyFactor,
    #[error(transparent)]
    Tournament(#[from] TournamentError),
    #[error(transparent)]
    Vector(#[from] VectorError),
}

/// The lexicographic product of a list of ordered colorings, evaluated lazily.
///
/// `factors[0]` is innermost: vertex `x` has digit `x mod n_0` in the first
/// factor, and so on. Two vertices take the color of the outermost factor in
/// which their digits differ.
#[derive(Debug, Clone)]
pub struct LexChain {
    factors: Vec<OrderedColoring>,
    n: usize,
    q: usize,
}

impl LexChain {
    pub fn new(factors: Vec<OrderedColoring>) -> Result<Self, ConstructionError> {
        let q = factors.first().map(|k| k.q()).ok_or(ConstructionError::EmptyFactor)?;
        let mut n = 1usize;
        for k in &factors {
            if k.q() != q {
                return Err(ConstructionError::PaletteMismatch(q, k.q()));
            }
            if k.n() == 0 {
                return Err(ConstructionError::EmptyFactor);
            }
            n = n.saturating_mul(k.n());
        }
        Ok(Self { factors, n, q })
    }

    pub fn factors(&self) -> &[OrderedColoring] {
        &self.factors
    }

    pub fn materialize(&self) -> Result<OrderedColoring, ConstructionError> {
        if self.n > MATERIALIZE_MAX {
            return Err(ConstructionError::TooLarge(self.n));
        }
        Ok(OrderedColoring::from_fn(self.n, self.q, |u, v| OrderedColors::color(self, u, v))?)
    }
}

impl OrderedColors for LexChain {
    fn n(&self) -> usize {
        self.n
    }

    fn q(&self) -> usize {
        self.q
    }

    fn color(&self, u: usize, v: usize) -> Color {
        let (mut a, mut b) = (u, v);
        let mut color = 0;
        for k in &self.factors {
            let (da, db) = (a % k.n(), b % k.n());
            if da != db {
                color = k.color(da, db);
            }
            a /= k.n();
            b /= k.n();
        }
        debug_assert!(color != 0, "color queried on a loop");
        color
    }
}

/// `K1 ⊗ K2`: every vertex of `outer` becomes an interval carrying a copy of
/// `inner`; edges between intervals keep the color of `outer`.
pub fn lex_product(inner: &OrderedColoring, outer: &OrderedColoring) -> Result<OrderedColoring, ConstructionError> {
    LexChain::new(vec![inner.clone(), outer.clone()])?.materialize()
}

/// Product of monochromatic `m`-cliques in colors `1..=q`, lazily evaluated.
/// Every color set `S` has longest monotone path exactly `m^|S|`.
pub fn canonical_chain(q: usize, m: usize) -> Result<LexChain, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::EmptyFactor);
    }
    let factors = (1..=q as Color)
        .map(|c| OrderedColoring::monochromatic(m, q, c))
        .collect::<Result<Vec<_>, _>>()?;
    LexChain::new(factors)
}

pub fn canonical_coloring(q: usize, m: usize) -> Result<OrderedColoring, ConstructionError> {
    canonical_chain(q, m)?.materialize()
}

/// `K` with every color `c` replaced by `((c + t - 2) mod q) + 1`.
pub fn shift_colors(k: &OrderedColoring, t: usize) -> Result<OrderedColoring, ConstructionError> {
    let q = k.q();
    let map: Vec<Color> = (1..=q).map(|c| ((c + t + q - 2) % q + 1) as Color).collect();
    Ok(k.recolored(q, &map)?)
}

/// Product of the `q` cyclic color shifts of `K`, lazily evaluated.
pub fn balance_chain(k: &OrderedColoring) -> Result<LexChain, ConstructionError> {
    let factors = (1..=k.q()).map(|t| shift_colors(k, t)).collect::<Result<Vec<_>, _>>()?;
    LexChain::new(factors)
}

/// Product of the `q` cyclic color shifts of `K`; every color has the same
/// longest avoiding monotone path, equal to the product over colors of
/// those of `K`.
pub fn balance_coloring(k: &OrderedColoring) -> Result<OrderedColoring, ConstructionError> {
    balance_chain(k)?.materialize()
}

/// Product of two r-increasing families: pairs `(a, b)` in lexicographic
/// order, coordinates `(x_i - 1) * n2 + y_i`.
pub fn product_boost_vectors(a: &VectorFamily, b: &VectorFamily) -> Result<VectorFamily, ConstructionError> {
    if a.q() != b.q() {
        return Err(ConstructionError::FamilyMismatch { what: "dimension", a: a.q(), b: b.q() });
    }
    if a.r() != b.r() {
        return Err(ConstructionError::FamilyMismatch { what: "threshold", a: a.r(), b: b.r() });
    }
    for fam in [a, b] {
        let cert = validate_increasing(fam);
        if !cert.is_ok() {
            return Err(ConstructionError::InputNotIncreasing(cert));
        }
    }
    let n2 = b.n();
    let n = a.n() * n2;
    let mut vectors = Vec::with_capacity(a.len() * b.len());
    for x in a.vectors() {
        for y in b.vectors() {
            let coords = x.coords().iter().zip(y.coords()).map(|(&xi, &yi)| (xi - 1) * n2 + yi).collect();
            vectors.push(GridVector::new(coords, n)?);
        }
    }
    let out = VectorFamily::new(a.q(), n, a.r(), vectors)?;
    let cert = validate_increasing(&out);
    if !cert.is_ok() {
        return Err(ConstructionError::OutputNotIncreasing(cert));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::ColorSet;
    use crate::paths::MonotoneDp;
    use crate::vectors::grid_points;

    fn longest<K: OrderedColors>(k: &K, s: ColorSet) -> usize {
        MonotoneDp::new(k, s).best_len()
    }

    #[test]
    fn single_edge_squared() {
        let edge = OrderedColoring::monochromatic(2, 1, 1).unwrap();
        let k = lex_product(&edge, &edge).unwrap();
        assert_eq!(k.n(), 4);
        assert_eq!(longest(&k, ColorSet::single(1)), 4);
    }

    #[test]
    fn two_monochromatic_factors() {
        let k1 = OrderedColoring::monochromatic(2, 2, 1).unwrap();
        let k2 = OrderedColoring::monochromatic(2, 2, 2).unwrap();
        let k = lex_product(&k1, &k2).unwrap();
        assert_eq!(longest(&k, ColorSet::single(1)), 2);
        assert_eq!(longest(&k, ColorSet::single(2)), 2);
        // vertices 0,1 share a block; 0 and 2 do not
        assert_eq!(k.color(0, 1), 1);
        assert_eq!(k.color(0, 2), 2);
        assert!(lex_product(&k1, &OrderedColoring::monochromatic(2, 3, 1).unwrap()).is_err());
    }

    #[test]
    fn canonical_examples() {
        let k = canonical_coloring(2, 2).unwrap();
        assert_eq!(k.n(), 4);
        assert_eq!(longest(&k, ColorSet::single(1)), 2);
        assert_eq!(longest(&k, ColorSet::single(2)), 2);
        let k = canonical_coloring(3, 2).unwrap();
        assert_eq!(k.n(), 8);
        for s in ColorSet::subsets_of_size(3, 2) {
            assert_eq!(longest(&k, s), 4);
        }
        let k = canonical_coloring(2, 3).unwrap();
        assert_eq!(longest(&k, ColorSet::single(1)), 3);
        assert_eq!(longest(&k, ColorSet::single(2)), 3);
    }

    #[test]
    fn balance_single_edge() {
        let edge = OrderedColoring::monochromatic(2, 2, 1).unwrap();
        let k = balance_coloring(&edge).unwrap();
        assert_eq!(k.n(), 4);
        assert_eq!(longest(&k, ColorSet::avoiding(2, 1)), 2);
        assert_eq!(longest(&k, ColorSet::avoiding(2, 2)), 2);
    }

    #[test]
    fn balance_monochromatic() {
        let k = OrderedColoring::monochromatic(3, 3, 2).unwrap();
        let out = balance_coloring(&k).unwrap();
        for c in 1..=3 {
            assert_eq!(longest(&out, ColorSet::avoiding(3, c)), 9);
        }
    }

    #[test]
    fn shift_rule() {
        let k = OrderedColoring::monochromatic(2, 3, 1).unwrap();
        assert_eq!(shift_colors(&k, 1).unwrap().color(0, 1), 1);
        assert_eq!(shift_colors(&k, 2).unwrap().color(0, 1), 2);
        assert_eq!(shift_colors(&k, 3).unwrap().color(0, 1), 3);
    }

    #[test]
    fn boost_examples() {
        let lex = VectorFamily::from_rows(2, 2, 1, grid_points(2, 2)).unwrap();
        let out = product_boost_vectors(&lex, &lex).unwrap();
        assert_eq!((out.len(), out.n()), (16, 4));
        let small = VectorFamily::from_rows(3, 2, 2, vec![vec![1, 1, 1], vec![1, 2, 2]]).unwrap();
        let out = product_boost_vectors(&small, &small).unwrap();
        assert_eq!((out.len(), out.n()), (4, 4));
        assert!(validate_increasing(&out).is_ok());
        let bad = VectorFamily::from_rows(3, 2, 2, vec![vec![1, 1, 1], vec![2, 1, 1]]).unwrap();
        assert!(matches!(product_boost_vectors(&bad, &small), Err(ConstructionError::InputNotIncreasing(_))));
    }

    #[test]
    fn chain_too_large_to_materialize() {
        let chain = canonical_chain(3, 20).unwrap();
        assert_eq!(chain.n(), 8000);
        assert!(matches!(chain.materialize(), Err(ConstructionError::TooLarge(8000))));
        // the lazy view still answers DP queries
        assert_eq!(longest(&canonical_chain(2, 12).unwrap(), ColorSet::single(2)), 12);
    }
}
