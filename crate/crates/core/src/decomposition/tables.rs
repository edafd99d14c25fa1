//! Per-vertex longest-path tables on a vertex subset, exact or estimated.

use crate::color::ColorSet;
use crate::paths::{DirectedDp, EXACT_DIRECTED_MAX};
use crate::tournament::ColoredTournament;

enum Source {
    Exact(DirectedDp),
    /// DP along the given order using forward arcs only: every entry is the
    /// length of a real path, so the values are lower bounds.
    Ordered { pred: Vec<Option<usize>>, succ: Vec<Option<usize>> },
}

/// Longest paths ending and starting at each vertex of `T[verts]` whose
/// edges have colors in an allowed set. Indices are positions in `verts`;
/// returned paths use the vertex ids of the parent tournament.
pub(crate) struct SubPaths {
    verts: Vec<usize>,
    end: Vec<usize>,
    start: Vec<usize>,
    source: Source,
}

impl SubPaths {
    /// Exact when `verts.len() <= exact_max` (capped at the subset DP limit).
    pub fn new(t: &ColoredTournament, verts: &[usize], allowed: ColorSet, exact_max: usize) -> Self {
        let m = verts.len();
        if m <= exact_max.min(EXACT_DIRECTED_MAX) {
            let sub = t.induced(verts);
            let dp = DirectedDp::new(&sub, allowed).expect("size checked");
            return Self {
                verts: verts.to_vec(),
                end: dp.ending_lengths().to_vec(),
                start: dp.starting_lengths().to_vec(),
                source: Source::Exact(dp),
            };
        }
        let ok = |a: usize, b: usize| t.beats(verts[a], verts[b]) && allowed.contains(t.color(verts[a], verts[b]));
        let mut end = vec![1; m];
        let mut pred = vec![None; m];
        for b in 0..m {
            for a in 0..b {
                if ok(a, b) && end[a] + 1 > end[b] {
                    end[b] = end[a] + 1;
                    pred[b] = Some(a);
                }
            }
        }
        let mut start = vec![1; m];
        let mut succ = vec![None; m];
        for a in (0..m).rev() {
            for b in a + 1..m {
                if ok(a, b) && start[b] + 1 > start[a] {
                    start[a] = start[b] + 1;
                    succ[a] = Some(b);
                }
            }
        }
        Self { verts: verts.to_vec(), end, start, source: Source::Ordered { pred, succ } }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.source, Source::Exact(_))
    }

    pub fn end_len(&self, k: usize) -> usize {
        self.end[k]
    }

    pub fn start_len(&self, k: usize) -> usize {
        self.start[k]
    }

    pub fn best_len(&self) -> usize {
        self.end.iter().copied().max().unwrap_or(0)
    }

    fn lift(&self, local: Vec<usize>) -> Vec<usize> {
        local.into_iter().map(|k| self.verts[k]).collect()
    }

    pub fn path_ending_at(&self, k: usize) -> Vec<usize> {
        match &self.source {
            Source::Exact(dp) => self.lift(dp.path_ending_at(k)),
            Source::Ordered { pred, .. } => {
                let mut local = vec![k];
                while let Some(p) = pred[*local.last().unwrap()] {
                    local.push(p);
                }
                local.reverse();
                self.lift(local)
            }
        }
    }

    pub fn path_starting_at(&self, k: usize) -> Vec<usize> {
        match &self.source {
            Source::Exact(dp) => self.lift(dp.path_starting_at(k)),
            Source::Ordered { succ, .. } => {
                let mut local = vec![k];
                while let Some(s) = succ[*local.last().unwrap()] {
                    local.push(s);
                }
                self.lift(local)
            }
        }
    }

    pub fn best_path(&self) -> Vec<usize> {
        match &self.source {
            Source::Exact(dp) => self.lift(dp.best_path()),
            Source::Ordered { .. } => {
                let best = self.best_len();
                let k = self.end.iter().position(|&e| e == best).unwrap_or(0);
                self.path_ending_at(k)
            }
        }
    }
}
