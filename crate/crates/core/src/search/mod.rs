//! Exact desk-scale values of the four extremal functions, with witnesses:
//!
//! * `F(q,r,n)`: longest r-increasing sequence in `[n]^q`;
//! * `G(q,r,n)`: largest r-comparable set in `[n]^q`;
//! * `f(q,r,N)`: least, over q-colorings of the ordered N-clique, longest
//!   monotone path using at most r colors;
//! * `g(q,r,N)`: the same minimum over all colored N-vertex tournaments.
//!
//! Searches are budgeted. An exhausted budget yields a one-sided bound
//! carrying the best witness found, never an exact claim.

mod bitset;
mod cache;
mod colorings;
mod sequences;

pub use bitset::BitSet;
pub use cache::{Cache, CacheError, CACHE_ENV, DEFAULT_CACHE_PATH};
pub use colorings::{exact_ordered, exact_tournament, EXACT_TOURNAMENT_MAX};
pub use sequences::{exact_comparable, exact_increasing, MAX_GRID_POINTS};

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::color::{Color, ColorSet};
use crate::paths::{DirectedDp, MonotoneDp, EXACT_DIRECTED_MAX};
use crate::tournament::{ColoredTournament, OrderedColoring, OrderedColors};
use crate::vectors::{validate_comparable, validate_increasing, VectorFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "F")]
    IncreasingSequence,
    #[serde(rename = "G")]
    ComparableSet,
    #[serde(rename = "f")]
    OrderedColoring,
    #[serde(rename = "g")]
    Tournament,
}

impl Kind {
    pub fn symbol(self) -> &'static str {
        match self {
            Kind::IncreasingSequence => "F",
            Kind::ComparableSet => "G",
            Kind::OrderedColoring => "f",
            Kind::Tournament => "g",
        }
    }

    /// F and G are maximized; f and g are minimized.
    pub fn maximizes(self) -> bool {
        matches!(self, Kind::IncreasingSequence | Kind::ComparableSet)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "F" => Ok(Kind::IncreasingSequence),
            "G" => Ok(Kind::ComparableSet),
            "f" => Ok(Kind::OrderedColoring),
            "g" => Ok(Kind::Tournament),
            other => Err(format!("unknown kind {other:?}; expected F, G, f or g")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Exact,
    LowerBound,
    UpperBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A witness achieving a record's value. Vertices and coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Witness {
    /// vectors in sequence order
    Family { vectors: Vec<Vec<u32>> },
    /// `[u, v, color]` with `u < v`
    Coloring { colors: Vec<[usize; 3]> },
    /// `[u, v, color]` meaning `u -> v`
    Tournament { edges: Vec<[usize; 3]> },
}

impl Witness {
    pub fn from_coloring(k: &OrderedColoring) -> Self {
        Witness::Coloring { colors: k.pairs().into_iter().map(|(u, v, c)| [u + 1, v + 1, c as usize]).collect() }
    }

    pub fn from_tournament(t: &ColoredTournament) -> Self {
        Witness::Tournament { edges: t.edges().into_iter().map(|(u, v, c)| [u + 1, v + 1, c as usize]).collect() }
    }

    pub fn to_coloring(&self, n: usize, q: usize) -> Result<OrderedColoring, String> {
        match self {
            Witness::Coloring { colors } => OrderedColoring::from_pairs(n, q, &zero_based(colors)?).map_err(|e| e.to_string()),
            _ => Err("witness is not an ordered coloring".into()),
        }
    }

    pub fn to_tournament(&self, n: usize, q: usize) -> Result<ColoredTournament, String> {
        match self {
            Witness::Tournament { edges } => ColoredTournament::from_edges(n, q, &zero_based(edges)?).map_err(|e| e.to_string()),
            _ => Err("witness is not a tournament".into()),
        }
    }
}

fn zero_based(triples: &[[usize; 3]]) -> Result<Vec<(usize, usize, Color)>, String> {
    triples
        .iter()
        .map(|&[u, v, c]| {
            if u == 0 || v == 0 {
                return Err(format!("vertex 0 in [{u},{v},{c}]; vertices are 1-based"));
            }
            let c = Color::try_from(c).map_err(|_| format!("color {c} too large"))?;
            Ok((u - 1, v - 1, c))
        })
        .collect()
}

/// A cached value or bound of one extremal function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub kind: Kind,
    pub q: usize,
    pub r: usize,
    /// `n` for F and G, `N` for f and g
    pub size: usize,
    pub value: usize,
    pub status: Status,
    pub witness: Witness,
    pub nodes_explored: u64,
    pub wall_ms: u64,
}

impl ExtremalRecord {
    pub fn key(&self) -> (Kind, usize, usize, usize) {
        (self.kind, self.q, self.r, self.size)
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Re-derives the value from the witness.
    pub fn validate(&self) -> Result<(), String> {
        let bound_ok = match self.kind {
            Kind::IncreasingSequence | Kind::ComparableSet => self.status != Status::UpperBound,
            Kind::OrderedColoring | Kind::Tournament => self.status != Status::LowerBound,
        };
        if !bound_ok {
            return Err(format!("{} record cannot carry status {}", self.kind, self.status));
        }
        if self.r == 0 || self.r > self.q {
            return Err(format!("threshold r={} outside [1, q={}]", self.r, self.q));
        }
        match self.kind {
            Kind::IncreasingSequence | Kind::ComparableSet => {
                let Witness::Family { vectors } = &self.witness else {
                    return Err("F/G record needs a family witness".into());
                };
                let n = u32::try_from(self.size).map_err(|_| "grid side too large".to_string())?;
                let fam = VectorFamily::from_rows(self.q, n, self.r, vectors.clone()).map_err(|e| e.to_string())?;
                let cert = if self.kind == Kind::IncreasingSequence {
                    validate_increasing(&fam)
                } else {
                    validate_comparable(&fam)
                };
                if !cert.is_ok() {
                    return Err(format!("witness fails validation: {cert}"));
                }
                if fam.len() != self.value {
                    return Err(format!("witness has {} vectors, record claims {}", fam.len(), self.value));
                }
            }
            Kind::OrderedColoring => {
                let k = self.witness.to_coloring(self.size, self.q)?;
                let got = f_value(&k, self.r);
                if got != self.value {
                    return Err(format!("witness coloring has value {got}, record claims {}", self.value));
                }
            }
            Kind::Tournament => {
                if self.size > EXACT_DIRECTED_MAX {
                    return Err("tournament witness too large to re-check".into());
                }
                let t = self.witness.to_tournament(self.size, self.q)?;
                let got = g_value(&t, self.r);
                if got != self.value {
                    return Err(format!("witness tournament has value {got}, record claims {}", self.value));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("need 1 <= r <= q and positive size (q={q}, r={r}, size={size})")]
    BadParameters { q: usize, r: usize, size: usize },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
}

fn check_params(q: usize, r: usize, size: usize) -> Result<(), SearchError> {
    if q == 0 || r == 0 || r > q || size == 0 || q > crate::color::MAX_COLORS {
        return Err(SearchError::BadParameters { q, r, size });
    }
    Ok(())
}

/// Longest monotone path using at most `r` colors.
pub fn f_value<K: OrderedColors + ?Sized>(k: &K, r: usize) -> usize {
    if r >= k.q() {
        return k.n();
    }
    ColorSet::subsets_of_size(k.q(), r)
        .into_iter()
        .map(|s| MonotoneDp::new(k, s).best_len())
        .max()
        .unwrap_or(0)
}

/// Longest directed path using at most `r` colors (exact, at most 22 vertices).
pub fn g_value(t: &ColoredTournament, r: usize) -> usize {
    let r = r.min(t.q());
    ColorSet::subsets_of_size(t.q(), r)
        .into_iter()
        .map(|s| DirectedDp::new(t, s).expect("size checked by caller").best_len())
        .max()
        .unwrap_or(0)
}

/// Dispatches to the oracle for `kind`.
pub fn run_search(kind: Kind, q: usize, r: usize, size: usize, budget: Budget) -> Result<ExtremalRecord, SearchError> {
    match kind {
        Kind::IncreasingSequence => exact_increasing(q, r, size, budget),
        Kind::ComparableSet => exact_comparable(q, r, size, budget),
        Kind::OrderedColoring => exact_ordered(q, r, size, budget),
        Kind::Tournament => exact_tournament(q, r, size, budget),
    }
}

/// Best solution shared by parallel branches.
///
/// Ties between equal values go to the lowest branch index, so the
/// reported witness does not depend on thread timing.
pub(crate) struct Incumbent<W> {
    key: AtomicU64,
    maximize: bool,
    witness: Mutex<Option<W>>,
}

impl<W> Incumbent<W> {
    pub fn new(maximize: bool, value: usize, branch: u32, witness: Option<W>) -> Self {
        let inc = Self { key: AtomicU64::new(0), maximize, witness: Mutex::new(witness) };
        inc.key.store(inc.encode(value, branch), Ordering::Relaxed);
        inc
    }

    fn encode(&self, value: usize, branch: u32) -> u64 {
        if self.maximize {
            (value as u64) << 32 | (u32::MAX - branch) as u64
        } else {
            (value as u64) << 32 | branch as u64
        }
    }

    /// Whether a solution of `value` found in `branch` would replace the incumbent.
    #[inline]
    pub fn improves(&self, value: usize, branch: u32) -> bool {
        let key = self.encode(value, branch);
        let current = self.key.load(Ordering::Relaxed);
        if self.maximize {
            key > current
        } else {
            key < current
        }
    }

    pub fn offer(&self, value: usize, branch: u32, witness: impl FnOnce() -> W) {
        if !self.improves(value, branch) {
            return;
        }
        let mut slot = self.witness.lock().unwrap();
        // re-check under the lock
        if self.improves(value, branch) {
            self.key.store(self.encode(value, branch), Ordering::Relaxed);
            *slot = Some(witness());
        }
    }

    pub fn value(&self) -> usize {
        (self.key.load(Ordering::Relaxed) >> 32) as usize
    }

    pub fn into_witness(self) -> Option<W> {
        self.witness.into_inner().unwrap()
    }
}
