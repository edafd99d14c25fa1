//! (q,r)-pods: the union of the (r-1)-dimensional faces of a side-n cube
//! that meet one corner, the apex. Two pods with apices in `[n]^q` are
//! disjoint exactly when their apices are r-comparable.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::vectors::{compare_r, GridVector, VectorError, VectorFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PodError {
    #[error("pods have different parameters: ({0}) vs ({1})")]
    ParameterMismatch(String, String),
    #[error("threshold r = {r} is outside [1, {q}]")]
    ThresholdOutOfRange { r: usize, q: usize },
    #[error("packing is invalid: pods {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error(transparent)]
    Vector(#[from] VectorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pod {
    r: usize,
    apex: GridVector,
}

impl Pod {
    /// A (q,r)-pod of order `apex.n()`; `q` is the apex dimension.
    pub fn new(r: usize, apex: GridVector) -> Result<Self, PodError> {
        if r == 0 || r > apex.q() {
            return Err(PodError::ThresholdOutOfRange { r, q: apex.q() });
        }
        Ok(Self { r, apex })
    }

    pub fn q(&self) -> usize {
        self.apex.q()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.apex.n()
    }

    pub fn apex(&self) -> &GridVector {
        &self.apex
    }

    fn params(&self) -> String {
        format!("q={}, r={}, n={}", self.q(), self.r, self.n())
    }

    fn check_same(&self, other: &Pod) -> Result<(), PodError> {
        if (self.q(), self.r, self.n()) != (other.q(), other.r, other.n()) {
            return Err(PodError::ParameterMismatch(self.params(), other.params()));
        }
        Ok(())
    }

    /// All unit cells of the pod: the apex plus offsets in `[0, n-1]^q`
    /// supported on at most `r - 1` coordinates.
    pub fn voxels(&self) -> BTreeSet<Vec<u32>> {
        fn go(apex: &[u32], n: u32, budget: usize, cur: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
            let i = cur.len();
            if i == apex.len() {
                out.insert(cur.clone());
                return;
            }
            cur.push(apex[i]);
            go(apex, n, budget, cur, out);
            cur.pop();
            if budget > 0 {
                for d in 1..n {
                    cur.push(apex[i] + d);
                    go(apex, n, budget - 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self.apex.coords(), self.n(), self.r - 1, &mut Vec::with_capacity(self.q()), &mut out);
        out
    }
}

/// `sum_{k < r} C(q, k) (n - 1)^k`, the number of voxels of a (q,r)-pod of order `n`.
pub fn pod_size(q: usize, r: usize, n: u32) -> u64 {
    let mut binom = 1u64;
    let mut total = 0u64;
    for k in 0..r.min(q + 1) {
        total += binom * (n as u64 - 1).pow(k as u32);
        binom = binom * (q - k) as u64 / (k + 1) as u64;
    }
    total
}

/// Brute-force disjointness by intersecting voxel sets.
pub fn pods_disjoint_voxel(a: &Pod, b: &Pod) -> Result<bool, PodError> {
    a.check_same(b)?;
    let va = a.voxels();
    Ok(b.voxels().iter().all(|v| !va.contains(v)))
}

/// Disjointness through r-comparability of the apices.
pub fn pods_disjoint_fast(a: &Pod, b: &Pod) -> Result<bool, PodError> {
    a.check_same(b)?;
    Ok(compare_r(&a.apex, &b.apex, a.r)?.is_comparable())
}

/// Pods sharing `(q, r, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    q: usize,
    r: usize,
    n: u32,
    pods: Vec<Pod>,
}

impl Packing {
    pub fn new(q: usize, r: usize, n: u32, apices: Vec<Vec<u32>>) -> Result<Self, PodError> {
        if r == 0 || r > q {
            return Err(PodError::ThresholdOutOfRange { r, q });
        }
        let pods = apices
            .into_iter()
            .map(|a| {
                if a.len() != q {
                    return Err(PodError::Vector(VectorError::DimensionMismatch { expected: q, got: a.len() }));
                }
                Pod::new(r, GridVector::new(a, n)?)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { q, r, n, pods })
    }

    /// Pods whose apices are the members of `fam`, with threshold `fam.r()`.
    pub fn from_family(fam: &VectorFamily) -> Self {
        let pods = fam.vectors().iter().map(|v| Pod { r: fam.r(), apex: v.clone() }).collect();
        Self { q: fam.q(), r: fam.r(), n: fam.n(), pods }
    }

    pub fn pods(&self) -> &[Pod] {
        &self.pods
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn apex_family(&self) -> Result<VectorFamily, PodError> {
        Ok(VectorFamily::new(self.q, self.n, self.r, self.pods.iter().map(|p| p.apex.clone()).collect())?)
    }

    /// First overlapping pair (0-based, lexicographic), if any.
    pub fn first_overlap(&self) -> Option<(usize, usize)> {
        (0..self.pods.len()).find_map(|i| {
            (i + 1..self.pods.len())
                .find(|&j| !pods_disjoint_fast(&self.pods[i], &self.pods[j]).unwrap_or(false))
                .map(|j| (i, j))
        })
    }

    pub fn is_valid(&self) -> bool {
        self.first_overlap().is_none()
    }

    /// First overlapping pair found by voxel intersection; parallel over pairs.
    pub fn first_overlap_voxel(&self) -> Option<(usize, usize)> {
        let sets: Vec<BTreeSet<Vec<u32>>> = self.pods.par_iter().map(Pod::voxels).collect();
        let m = sets.len();
        (0..m)
            .into_par_iter()
            .flat_map_iter(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| sets[i].intersection(&sets[j]).next().is_some())
            .min()
    }
}

/// `|pods| * |voxels per pod| / (2n - 1)^q`: covered fraction of the box
/// `[1, 2n-1]^q` that contains every pod with apex in `[n]^q`.
pub fn packing_density(p: &Packing) -> Result<BigRational, PodError> {
    if let Some((i, j)) = p.first_overlap() {
        return Err(PodError::Overlap(i + 1, j + 1));
    }
    if p.pods.is_empty() {
        return Ok(BigRational::zero());
    }
    let covered = BigInt::from(p.pods.len()) * BigInt::from(pod_size(p.q, p.r, p.n));
    let side = BigInt::from(2 * p.n as u64 - 1);
    Ok(BigRational::new(covered, num_traits::pow(side, p.q)))
}
