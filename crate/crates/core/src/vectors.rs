//! Grid vectors in `[n]^q`, the threshold relation `x <_r y`, and validators
//! for r-increasing sequences and r-comparable sets.
//!
//! All indices reported in certificates (family positions and coordinate
//! numbers) are 1-based.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VectorError {
    #[error("vector has {got} coordinates, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {value} at position {position} is outside [1, {n}]")]
    CoordinateOutOfRange { position: usize, value: u32, n: u32 },
    #[error("vectors live in different ambients ([{n1}]^{q1} vs [{n2}]^{q2})")]
    AmbientMismatch { q1: usize, n1: u32, q2: usize, n2: u32 },
    #[error("threshold r = {r} is outside [1, {q}]")]
    ThresholdOutOfRange { r: usize, q: usize },
    #[error("ambient must have q >= 1 and n >= 1 (got q = {q}, n = {n})")]
    EmptyAmbient { q: usize, n: u32 },
    #[error("family is empty")]
    EmptyFamily,
    #[error("family is not r-comparable: {0}")]
    NotComparable(Certificate),
}

/// A point of `[n]^q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVector {
    coords: Vec<u32>,
    n: u32,
}

impl GridVector {
    pub fn new(coords: Vec<u32>, n: u32) -> Result<Self, VectorError> {
        if coords.is_empty() || n == 0 {
            return Err(VectorError::EmptyAmbient { q: coords.len(), n });
        }
        if let Some((position, &value)) = coords.iter().enumerate().find(|(_, &c)| c == 0 || c > n) {
            return Err(VectorError::CoordinateOutOfRange { position: position + 1, value, n });
        }
        Ok(Self { coords, n })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn q(&self) -> usize {
        self.coords.len()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn check_ambient(&self, other: &Self) -> Result<(), VectorError> {
        if self.q() != other.q() || self.n != other.n {
            return Err(VectorError::AmbientMismatch {
                q1: self.q(),
                n1: self.n,
                q2: other.q(),
                n2: other.n,
            });
        }
        Ok(())
    }

    /// Number of coordinates in which `other` is strictly larger than `self`.
    pub fn strict_gains(&self, other: &Self) -> usize {
        self.coords.iter().zip(&other.coords).filter(|(a, b)| a < b).count()
    }
}

impl fmt::Display for GridVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_threshold(r: usize, q: usize) -> Result<(), VectorError> {
    if r == 0 || r > q {
        return Err(VectorError::ThresholdOutOfRange { r, q });
    }
    Ok(())
}

/// `x <_r y`: `y` is strictly larger than `x` in at least `r` coordinates.
pub fn less_r(x: &GridVector, y: &GridVector, r: usize) -> Result<bool, VectorError> {
    x.check_ambient(y)?;
    check_threshold(r, x.q())?;
    Ok(x.strict_gains(y) >= r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Forward,
    Backward,
    /// Both directions hold; only possible when `r <= q/2`.
    Both,
    Incomparable,
}

impl Comparison {
    pub fn is_comparable(self) -> bool {
        self != Comparison::Incomparable
    }
}

pub fn compare_r(x: &GridVector, y: &GridVector, r: usize) -> Result<Comparison, VectorError> {
    let fwd = less_r(x, y, r)?;
    let bwd = y.strict_gains(x) >= r;
    Ok(match (fwd, bwd) {
        (true, false) => Comparison::Forward,
        (false, true) => Comparison::Backward,
        (true, true) => Comparison::Both,
        (false, false) => Comparison::Incomparable,
    })
}

/// An ordered list of vectors sharing one ambient `[n]^q`, with threshold `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFamily {
    q: usize,
    n: u32,
    r: usize,
    vectors: Vec<GridVector>,
}

impl VectorFamily {
    pub fn new(q: usize, n: u32, r: usize, vectors: Vec<GridVector>) -> Result<Self, VectorError> {
        if q == 0 || n == 0 {
            return Err(VectorError::EmptyAmbient { q, n });
        }
        check_threshold(r, q)?;
        for v in &vectors {
            if v.q() != q {
                return Err(VectorError::DimensionMismatch { expected: q, got: v.q() });
            }
            if v.n() != n {
                return Err(VectorError::AmbientMismatch { q1: q, n1: n, q2: v.q(), n2: v.n() });
            }
        }
        Ok(Self { q, n, r, vectors })
    }

    /// Builds a family from raw coordinate rows, validating every entry.
    pub fn from_rows(q: usize, n: u32, r: usize, rows: Vec<Vec<u32>>) -> Result<Self, VectorError> {
        let vectors = rows
            .into_iter()
            .map(|row| {
                if row.len() != q {
                    return Err(VectorError::DimensionMismatch { expected: q, got: row.len() });
                }
                GridVector::new(row, n)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(q, n, r, vectors)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vectors(&self) -> &[GridVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.vectors.iter().map(|v| v.coords.clone()).collect()
    }

    /// Same vectors with a different threshold.
    pub fn with_threshold(&self, r: usize) -> Result<Self, VectorError> {
        Self::new(self.q, self.n, r, self.vectors.clone())
    }

    /// Reorders the family by a permutation of 0-based positions.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            q: self.q,
            n: self.n,
            r: self.r,
            vectors: order.iter().map(|&i| self.vectors[i].clone()).collect(),
        }
    }

    /// Drops the last `t` coordinates of every vector; the threshold drops by `t`.
    pub fn delete_last_coords(&self, t: usize) -> Result<Self, VectorError> {
        if t >= self.r {
            return Err(VectorError::ThresholdOutOfRange { r: self.r.saturating_sub(t), q: self.q - t.min(self.q) });
        }
        let q = self.q - t;
        let vectors = self
            .vectors
            .iter()
            .map(|v| GridVector { coords: v.coords[..q].to_vec(), n: self.n })
            .collect();
        Self::new(q, self.n, self.r - t, vectors)
    }

    fn less(&self, a: usize, b: usize) -> bool {
        self.vectors[a].strict_gains(&self.vectors[b]) >= self.r
    }
}

/// Outcome of validating a family. Indices and coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Increasing,
    Comparable,
    FailPair(usize, usize),
    CyclicTriple(CyclicTriple),
}

impl Certificate {
    pub fn is_ok(&self) -> bool {
        matches!(self, Certificate::Increasing | Certificate::Comparable)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Increasing => write!(f, "increasing"),
            Certificate::Comparable => write!(f, "comparable"),
            Certificate::FailPair(a, b) => write!(f, "pair ({a},{b}) fails"),
            Certificate::CyclicTriple(t) => write!(f, "cyclic triple ({},{},{})", t.x, t.y, t.z),
        }
    }
}

/// Three members with `x <_r y <_r z <_r x`, together with the coordinate sets
/// on which each step is strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicTriple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// `{i : x_i < y_i}`
    pub a: BTreeSet<usize>,
    /// `{i : y_i < z_i}`
    pub b: BTreeSet<usize>,
    /// `{i : z_i < x_i}`
    pub c: BTreeSet<usize>,
}

fn strict_set(x: &GridVector, y: &GridVector) -> BTreeSet<usize> {
    x.coords
        .iter()
        .zip(&y.coords)
        .enumerate()
        .filter(|(_, (a, b))| a < b)
        .map(|(i, _)| i + 1)
        .collect()
}

impl CyclicTriple {
    fn from_positions(fam: &VectorFamily, x: usize, y: usize, z: usize) -> Self {
        let v = &fam.vectors;
        Self {
            x: x + 1,
            y: y + 1,
            z: z + 1,
            a: strict_set(&v[x], &v[y]),
            b: strict_set(&v[y], &v[z]),
            c: strict_set(&v[z], &v[x]),
        }
    }

    /// Re-checks the triple against the family from scratch.
    pub fn verify(&self, fam: &VectorFamily) -> bool {
        let n = fam.len();
        let ok_index = |i: usize| i >= 1 && i <= n;
        if !(ok_index(self.x) && ok_index(self.y) && ok_index(self.z)) {
            return false;
        }
        let (x, y, z) = (self.x - 1, self.y - 1, self.z - 1);
        if x == y || y == z || x == z {
            return false;
        }
        let v = &fam.vectors;
        self.a == strict_set(&v[x], &v[y])
            && self.b == strict_set(&v[y], &v[z])
            && self.c == strict_set(&v[z], &v[x])
            && self.a.len() >= fam.r
            && self.b.len() >= fam.r
            && self.c.len() >= fam.r
    }
}

/// Checks `x_a <_r x_b` for every `a < b`, reporting the lexicographically
/// first failing pair.
pub fn validate_increasing(fam: &VectorFamily) -> Certificate {
    let n = fam.len();
    for a in 0..n {
        for b in a + 1..n {
            if !fam.less(a, b) {
                return Certificate::FailPair(a + 1, b + 1);
            }
        }
    }
    Certificate::Increasing
}

/// Checks that every unordered pair is comparable in some direction.
/// Duplicate vectors always fail.
pub fn validate_comparable(fam: &VectorFamily) -> Certificate {
    let n = fam.len();
    for a in 0..n {
        for b in a + 1..n {
            if !fam.less(a, b) && !fam.less(b, a) {
                return Certificate::FailPair(a + 1, b + 1);
            }
        }
    }
    Certificate::Comparable
}

fn require_comparable(fam: &VectorFamily) -> Result<(), VectorError> {
    match validate_comparable(fam) {
        Certificate::Comparable => Ok(()),
        other => Err(VectorError::NotComparable(other)),
    }
}

/// Finds the lexicographically first `(x, y, z)` (with `x` the smallest
/// position) such that `x <_r y <_r z <_r x`.
pub fn find_cyclic_triple(fam: &VectorFamily) -> Result<Option<CyclicTriple>, VectorError> {
    require_comparable(fam)?;
    let n = fam.len();
    for x in 0..n {
        for y in x + 1..n {
            if !fam.less(x, y) {
                continue;
            }
            for z in x + 1..n {
                if z != y && fam.less(y, z) && fam.less(z, x) {
                    return Ok(Some(CyclicTriple::from_positions(fam, x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransitiveOrder {
    /// 0-based positions; the permuted family is r-increasing.
    Order(Vec<usize>),
    Cyclic(CyclicTriple),
}

/// Orders a comparable family into an r-increasing sequence when possible.
///
/// Only one-way comparabilities constrain the order; pairs comparable in both
/// directions can sit either way round. Sources are selected repeatedly,
/// lowest position first.
pub fn transitive_order(fam: &VectorFamily) -> Result<TransitiveOrder, VectorError> {
    require_comparable(fam)?;
    let n = fam.len();
    // in_deg[b] counts a with a strictly-one-way before b
    let mut strict = vec![false; n * n];
    let mut in_deg = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && fam.less(a, b) && !fam.less(b, a) {
                strict[a * n + b] = true;
                in_deg[b] += 1;
            }
        }
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let Some(src) = (0..n).find(|&v| !placed[v] && in_deg[v] == 0) else {
            let triple = find_cyclic_triple(fam)?
                .expect("a cycle among one-way comparabilities implies a cyclic triple");
            return Ok(TransitiveOrder::Cyclic(triple));
        };
        placed[src] = true;
        order.push(src);
        for b in 0..n {
            if strict[src * n + b] {
                in_deg[b] -= 1;
            }
        }
    }
    Ok(TransitiveOrder::Order(order))
}

/// All points of `[n]^q` in lexicographic order.
pub fn grid_points(q: usize, n: u32) -> Vec<Vec<u32>> {
    let total = (n as usize).pow(q as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![1u32; q];
    for _ in 0..total {
        out.push(cur.clone());
        for k in (0..q).rev() {
            if cur[k] < n {
                cur[k] += 1;
                break;
            }
            cur[k] = 1;
        }
    }
    out
}
