use super::{check_allowed, check_color, ColorConstraint, PathCertificate, PathError, PathMode};
use crate::color::{Color, ColorSet};
use crate::tournament::OrderedColors;

/// Longest monotone path tables for one allowed color set.
#[derive(Debug, Clone)]
pub struct MonotoneDp {
    allowed: ColorSet,
    /// longest allowed monotone path ending at v
    ending: Vec<usize>,
    /// longest allowed monotone path starting at v
    starting: Vec<usize>,
}

impl MonotoneDp {
    pub fn new<K: OrderedColors + ?Sized>(k: &K, allowed: ColorSet) -> Self {
        let n = k.n();
        let mut ending = vec![1usize; n];
        for w in 0..n {
            for u in 0..w {
                if ending[u] + 1 > ending[w] && allowed.contains(k.color(u, w)) {
                    ending[w] = ending[u] + 1;
                }
            }
        }
        let mut starting = vec![1usize; n];
        for u in (0..n).rev() {
            for w in u + 1..n {
                if starting[w] + 1 > starting[u] && allowed.contains(k.color(u, w)) {
                    starting[u] = starting[w] + 1;
                }
            }
        }
        Self { allowed, ending, starting }
    }

    pub fn best_len(&self) -> usize {
        self.starting.iter().copied().max().unwrap_or(0)
    }

    pub fn ending_lengths(&self) -> &[usize] {
        &self.ending
    }

    pub fn starting_lengths(&self) -> &[usize] {
        &self.starting
    }

    /// Lexicographically least longest path starting at `v`.
    pub fn path_starting_at<K: OrderedColors + ?Sized>(&self, k: &K, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while self.starting[cur] > 1 {
            let need = self.starting[cur] - 1;
            cur = (cur + 1..k.n())
                .find(|&w| self.starting[w] == need && self.allowed.contains(k.color(cur, w)))
                .expect("table guarantees a successor");
            path.push(cur);
        }
        path
    }

    /// A longest path ending at `v`, built backwards choosing the smallest predecessor.
    pub fn path_ending_at<K: OrderedColors + ?Sized>(&self, k: &K, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while self.ending[cur] > 1 {
            let need = self.ending[cur] - 1;
            cur = (0..cur)
                .find(|&u| self.ending[u] == need && self.allowed.contains(k.color(u, cur)))
                .expect("table guarantees a predecessor");
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Lexicographically least path among those of maximum length.
    pub fn best_path<K: OrderedColors + ?Sized>(&self, k: &K) -> Vec<usize> {
        let best = self.best_len();
        match self.starting.iter().position(|&s| s == best) {
            Some(v) => self.path_starting_at(k, v),
            None => Vec::new(),
        }
    }
}

/// Longest monotone path using only colors in `allowed`.
pub fn longest_restricted_monotone<K: OrderedColors + ?Sized>(
    k: &K,
    allowed: ColorSet,
) -> Result<PathCertificate, PathError> {
    check_allowed(allowed, k.q())?;
    let dp = MonotoneDp::new(k, allowed);
    Ok(PathCertificate {
        vertices: dp.best_path(k),
        mode: PathMode::Monotone,
        constraint: ColorConstraint::Allowed(allowed),
    })
}

/// Longest monotone path avoiding color `avoid`.
pub fn ell_avoid_monotone<K: OrderedColors + ?Sized>(k: &K, avoid: Color) -> Result<PathCertificate, PathError> {
    check_color(avoid, k.q())?;
    let allowed = ColorSet::avoiding(k.q(), avoid);
    let dp = MonotoneDp::new(k, allowed);
    Ok(PathCertificate {
        vertices: dp.best_path(k),
        mode: PathMode::Monotone,
        constraint: ColorConstraint::Avoid(avoid),
    })
}
