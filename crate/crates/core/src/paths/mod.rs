//! Longest color-constrained paths: DP for monotone paths in ordered
//! colorings, subset DP for directed paths in tournaments, and the per-color
//! avoidance profile.

mod directed;
mod monotone;
mod profile;
mod validate;

pub use directed::{longest_avoiding_directed_exact, longest_restricted_directed, DirectedDp, EXACT_DIRECTED_MAX};
pub use monotone::{ell_avoid_monotone, longest_restricted_monotone, MonotoneDp};
pub use profile::{
    avoidance_profile_directed, avoidance_profile_from_ell, avoidance_profile_monotone, proof_parameters,
    AvoidanceProfile, ProofParameters, Quantity,
};
pub use validate::{validate_path, PathInstance, PathViolation};

use std::fmt;

use thiserror::Error;

use crate::color::{Color, ColorSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathMode {
    Monotone,
    Directed,
}

/// Which edge colors a path may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorConstraint {
    Avoid(Color),
    Allowed(ColorSet),
}

impl ColorConstraint {
    pub fn allowed(self, q: usize) -> ColorSet {
        match self {
            ColorConstraint::Avoid(c) => ColorSet::avoiding(q, c),
            ColorConstraint::Allowed(s) => s,
        }
    }
}

impl fmt::Display for ColorConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorConstraint::Avoid(c) => write!(f, "avoid {c}"),
            ColorConstraint::Allowed(s) => write!(f, "allow {s}"),
        }
    }
}

/// A path with the constraint it claims to satisfy. Its length is its
/// number of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathCertificate {
    pub vertices: Vec<usize>,
    pub mode: PathMode,
    pub constraint: ColorConstraint,
}

impl PathCertificate {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("color {color} is outside the palette [1, {q}]")]
    ColorOutOfRange { color: Color, q: usize },
    #[error("allowed color set {0} is empty or outside the palette")]
    BadAllowedSet(ColorSet),
    #[error("exact search on {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("budget exceeded; best path found has {} vertices", best.len())]
    BudgetExceeded { best: PathCertificate },
    #[error("q must be at least 2 and N at least 1 (got q={q}, N={n})")]
    BadParameters { q: usize, n: usize },
}

fn check_allowed(allowed: ColorSet, q: usize) -> Result<(), PathError> {
    if allowed.is_empty() || !allowed.is_subset(ColorSet::full(q)) {
        return Err(PathError::BadAllowedSet(allowed));
    }
    Ok(())
}

fn check_color(c: Color, q: usize) -> Result<(), PathError> {
    if c == 0 || c as usize > q {
        return Err(PathError::ColorOutOfRange { color: c, q });
    }
    Ok(())
}
