use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{DirectedDp, MonotoneDp, PathError};
use crate::color::{Color, ColorSet};
use crate::tournament::{ColoredTournament, OrderedColors};

/// A threshold-derived quantity: exact when the threshold is rational,
/// floating otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Approx(f64),
}

impl Quantity {
    pub fn ratio(num: i64, den: i64) -> Self {
        Quantity::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Quantity::Approx(x) => *x,
        }
    }

    fn scale(&self, n: usize) -> Quantity {
        match self {
            Quantity::Exact(r) => Quantity::Exact(r * BigRational::from_integer(BigInt::from(n))),
            Quantity::Approx(x) => Quantity::Approx(x * n as f64),
        }
    }

    fn min_with(&self, value: usize) -> Quantity {
        match self {
            Quantity::Exact(r) => {
                let v = BigRational::from_integer(BigInt::from(value));
                Quantity::Exact(if v < *r { v } else { r.clone() })
            }
            Quantity::Approx(x) => Quantity::Approx(x.min(value as f64)),
        }
    }

    fn mul(&self, other: &Quantity) -> Quantity {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => Quantity::Exact(a * b),
            _ => Quantity::Approx(self.to_f64() * other.to_f64()),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{r}"),
            Quantity::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Per-color longest avoiding path lengths, their truncation at
/// `gamma * N`, and the product of truncations.
#[derive(Debug, Clone, PartialEq)]
pub struct AvoidanceProfile {
    pub n: usize,
    pub ell: Vec<usize>,
    pub gamma: Quantity,
    pub m: Vec<Quantity>,
    pub pi: Quantity,
}

impl AvoidanceProfile {
    /// Color whose avoiding path is longest, ties to the smaller color.
    pub fn best_color(&self) -> Color {
        let mut best = 0;
        for (i, &l) in self.ell.iter().enumerate() {
            if l > self.ell[best] {
                best = i;
            }
        }
        (best + 1) as Color
    }
}

pub fn avoidance_profile_from_ell(n: usize, ell: Vec<usize>, gamma: Quantity) -> AvoidanceProfile {
    let cap = gamma.scale(n);
    let m: Vec<Quantity> = ell.iter().map(|&l| cap.min_with(l)).collect();
    let pi = m.iter().fold(Quantity::Exact(BigRational::one()), |acc, x| acc.mul(x));
    AvoidanceProfile { n, ell, gamma, m, pi }
}

/// Profile of an ordered coloring using the monotone DP.
pub fn avoidance_profile_monotone<K: OrderedColors + ?Sized>(k: &K, gamma: Quantity) -> AvoidanceProfile {
    let ell = (1..=k.q() as Color)
        .map(|c| MonotoneDp::new(k, ColorSet::avoiding(k.q(), c)).best_len().max(1))
        .collect();
    avoidance_profile_from_ell(k.n(), ell, gamma)
}

/// Profile of a tournament using the exact directed DP.
pub fn avoidance_profile_directed(t: &ColoredTournament, gamma: Quantity) -> Result<AvoidanceProfile, PathError> {
    let mut ell = Vec::with_capacity(t.q());
    for c in 1..=t.q() as Color {
        ell.push(DirectedDp::new(t, ColorSet::avoiding(t.q(), c))?.best_len().max(1));
    }
    Ok(avoidance_profile_from_ell(t.n(), ell, gamma))
}

/// Parameters of the recursive construction. `gamma`, `p` and `delta` are
/// floating; `s` is `floor(2 gamma N)` clamped to at least 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofParameters {
    pub q: usize,
    pub n: usize,
    pub gamma: f64,
    pub p: f64,
    pub s: usize,
    /// `2 gamma N` before rounding
    pub raw_s: f64,
    pub delta: f64,
}

impl ProofParameters {
    /// Size of the chosen left-diffuse color set: `floor(p)` kept in `[1, q]`.
    pub fn diffuse_quota(&self) -> usize {
        (self.p.floor() as usize).clamp(1, self.q)
    }

    /// Replaces `gamma`, `s` and `p` for small-scale experiments.
    pub fn with_overrides(mut self, gamma: f64, s: usize, p: f64) -> Self {
        self.gamma = gamma;
        self.s = s.max(1);
        self.raw_s = s as f64;
        self.p = p;
        self.delta = gamma / 8.0;
        self
    }
}

pub fn proof_parameters(q: usize, n: usize) -> Result<ProofParameters, PathError> {
    if q < 2 || n < 1 {
        return Err(PathError::BadParameters { q, n });
    }
    let scale = 2f64.powf((q as f64).log2().sqrt());
    let gamma = 1.0 / (2.0 * q as f64 * scale);
    let raw_s = 2.0 * gamma * n as f64;
    // tolerate representation error when 2 gamma N is an exact integer
    let s = ((raw_s + 1e-9).floor() as usize).max(1);
    Ok(ProofParameters { q, n, gamma, p: 24.0 * q as f64 / scale, s, raw_s, delta: gamma / 8.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_profile() {
        let t = ColoredTournament::from_edges(3, 2, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let p = avoidance_profile_directed(&t, Quantity::ratio(1, 2)).unwrap();
        assert_eq!(p.ell, vec![1, 3]);
        assert_eq!(p.m, vec![Quantity::ratio(1, 1), Quantity::ratio(3, 2)]);
        assert_eq!(p.pi, Quantity::ratio(3, 2));
        assert_eq!(p.best_color(), 2);
    }

    #[test]
    fn inactive_truncation() {
        let k = crate::tournament::OrderedColoring::from_fn(6, 3, |u, v| ((u + 2 * v) % 3 + 1) as Color).unwrap();
        let p = avoidance_profile_monotone(&k, Quantity::ratio(1, 1));
        let product: usize = p.ell.iter().product();
        assert_eq!(p.pi, Quantity::ratio(product as i64, 1));
        for (m, &l) in p.m.iter().zip(&p.ell) {
            assert_eq!(*m, Quantity::ratio(l as i64, 1));
        }
    }

    #[test]
    fn parameter_examples() {
        let p = proof_parameters(16, 1280).unwrap();
        assert_eq!(p.gamma, 1.0 / 128.0);
        assert_eq!(p.s, 20);
        assert_eq!(p.p, 96.0);
        assert_eq!(p.delta, 1.0 / 1024.0);
        // 4 delta N = s / 4 before rounding
        assert!((4.0 * p.delta * 1280.0 - p.raw_s / 4.0).abs() < 1e-12);

        let small = proof_parameters(16, 64).unwrap();
        assert_eq!(small.s, 1);
        assert!((small.raw_s - 1.0).abs() < 1e-12);

        let four = proof_parameters(4, 100).unwrap();
        let scale = 2f64.powf(2f64.sqrt());
        assert!((four.gamma - 1.0 / (8.0 * scale)).abs() < 1e-15);
        assert!(proof_parameters(1, 10).is_err());
    }
}
