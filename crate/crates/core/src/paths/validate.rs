use std::fmt;

use super::{PathCertificate, PathMode};
use crate::color::Color;
use crate::tournament::{ColoredTournament, OrderedColors};

/// The structure a path certificate is checked against.
#[derive(Clone, Copy)]
pub enum PathInstance<'a> {
    Ordered(&'a dyn OrderedColors),
    Tournament(&'a ColoredTournament),
}

impl PathInstance<'_> {
    fn n(&self) -> usize {
        match self {
            PathInstance::Ordered(k) => k.n(),
            PathInstance::Tournament(t) => t.n(),
        }
    }

    fn q(&self) -> usize {
        match self {
            PathInstance::Ordered(k) => k.q(),
            PathInstance::Tournament(t) => t.q(),
        }
    }

    fn color(&self, u: usize, v: usize) -> Color {
        match self {
            PathInstance::Ordered(k) => k.color(u, v),
            PathInstance::Tournament(t) => t.color(u, v),
        }
    }
}

/// First problem found in a path certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    ModeMismatch(PathMode),
    BadConstraint(String),
    VertexOutOfRange(usize),
    DuplicateVertex(usize),
    NotIncreasing(usize, usize),
    WrongDirection(usize, usize),
    ForbiddenColor { u: usize, v: usize, color: Color },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // vertices are reported 1-based
        match self {
            PathViolation::Empty => write!(f, "empty path"),
            PathViolation::ModeMismatch(m) => write!(f, "{m:?} certificate does not match the instance type"),
            PathViolation::BadConstraint(why) => write!(f, "bad color constraint: {why}"),
            PathViolation::VertexOutOfRange(v) => write!(f, "vertex {} out of range", v + 1),
            PathViolation::DuplicateVertex(v) => write!(f, "duplicate vertex {}", v + 1),
            PathViolation::NotIncreasing(u, v) => write!(f, "vertices {} -> {} not increasing", u + 1, v + 1),
            PathViolation::WrongDirection(u, v) => write!(f, "edge {} -> {} points the other way", u + 1, v + 1),
            PathViolation::ForbiddenColor { u, v, color } => {
                write!(f, "edge {} -> {} has disallowed color {color}", u + 1, v + 1)
            }
        }
    }
}

impl std::error::Error for PathViolation {}

/// Checks distinctness, ordering or direction, and the color constraint.
pub fn validate_path(instance: PathInstance<'_>, cert: &PathCertificate) -> Result<(), PathViolation> {
    match (instance, cert.mode) {
        (PathInstance::Ordered(_), PathMode::Monotone) | (PathInstance::Tournament(_), PathMode::Directed) => {}
        // a monotone path in a tournament must also follow its arcs
        (PathInstance::Tournament(_), PathMode::Monotone) => {}
        (PathInstance::Ordered(_), PathMode::Directed) => return Err(PathViolation::ModeMismatch(cert.mode)),
    }
    if cert.vertices.is_empty() {
        return Err(PathViolation::Empty);
    }
    let q = instance.q();
    let allowed = match cert.constraint {
        super::ColorConstraint::Avoid(c) if c == 0 || c as usize > q => {
            return Err(PathViolation::BadConstraint(format!("avoided color {c} outside [1, {q}]")))
        }
        super::ColorConstraint::Allowed(s) if !s.is_subset(crate::color::ColorSet::full(q)) => {
            return Err(PathViolation::BadConstraint(format!("allowed set {s} outside [1, {q}]")))
        }
        c => c.allowed(q),
    };
    let n = instance.n();
    let mut seen = vec![false; n];
    for &v in &cert.vertices {
        if v >= n {
            return Err(PathViolation::VertexOutOfRange(v));
        }
        if seen[v] {
            return Err(PathViolation::DuplicateVertex(v));
        }
        seen[v] = true;
    }
    for pair in cert.vertices.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if cert.mode == PathMode::Monotone && u > v {
            return Err(PathViolation::NotIncreasing(u, v));
        }
        if let PathInstance::Tournament(t) = instance {
            if !t.beats(u, v) {
                return Err(PathViolation::WrongDirection(u, v));
            }
        }
        let color = instance.color(u, v);
        if !allowed.contains(color) {
            return Err(PathViolation::ForbiddenColor { u, v, color });
        }
    }
    Ok(())
}
