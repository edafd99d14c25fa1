use super::{check_allowed, check_color, ColorConstraint, PathCertificate, PathError, PathMode};
use crate::budget::{Budget, Meter};
use crate::color::{Color, ColorSet};
use crate::tournament::ColoredTournament;

/// Largest tournament handled by the subset DP.
pub const EXACT_DIRECTED_MAX: usize = 22;

/// Subset DP over `(vertex set, endpoint)` for directed paths whose edges use
/// only allowed colors.
///
/// `first[mask]` has bit `v` set iff some path visiting exactly `mask`
/// starts at `v`; `last[mask]` likewise for the final vertex.
#[derive(Debug, Clone)]
pub struct DirectedDp {
    n: usize,
    out: Vec<u32>,
    inn: Vec<u32>,
    first: Vec<u32>,
    last: Vec<u32>,
    starting: Vec<usize>,
    ending: Vec<usize>,
}

impl DirectedDp {
    pub fn new(t: &ColoredTournament, allowed: ColorSet) -> Result<Self, PathError> {
        let n = t.n();
        if n > EXACT_DIRECTED_MAX {
            return Err(PathError::TooLarge { n, limit: EXACT_DIRECTED_MAX });
        }
        let masks = t.allowed_out_masks(allowed);
        let out: Vec<u32> = masks.iter().map(|&m| m as u32).collect();
        let mut inn = vec![0u32; n];
        for (u, &m) in out.iter().enumerate() {
            for v in 0..n {
                if m & (1 << v) != 0 {
                    inn[v] |= 1 << u;
                }
            }
        }
        let size = 1usize << n;
        let mut first = vec![0u32; size];
        let mut last = vec![0u32; size];
        let mut starting = vec![if n > 0 { 1 } else { 0 }; n];
        let mut ending = starting.clone();
        for mask in 1..size {
            let m = mask as u32;
            if m.is_power_of_two() {
                first[mask] = m;
                last[mask] = m;
                continue;
            }
            let (mut f, mut l) = (0u32, 0u32);
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let without = mask ^ (1 << v);
                if out[v] & first[without] != 0 {
                    f |= 1 << v;
                }
                if inn[v] & last[without] != 0 {
                    l |= 1 << v;
                }
            }
            first[mask] = f;
            last[mask] = l;
            let size_here = m.count_ones() as usize;
            let mut bits = f;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                starting[v] = starting[v].max(size_here);
            }
            bits = l;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                ending[v] = ending[v].max(size_here);
            }
        }
        Ok(Self { n, out, inn, first, last, starting, ending })
    }

    pub fn best_len(&self) -> usize {
        self.starting.iter().copied().max().unwrap_or(0)
    }

    /// Longest allowed path starting at each vertex.
    pub fn starting_lengths(&self) -> &[usize] {
        &self.starting
    }

    /// Longest allowed path ending at each vertex.
    pub fn ending_lengths(&self) -> &[usize] {
        &self.ending
    }

    /// Lexicographically least vertex sequence among the longest paths,
    /// optionally forced to start at `start`.
    fn lex_least(&self, start: Option<usize>) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        let target = match start {
            Some(v) => self.starting[v],
            None => self.best_len(),
        };
        let mut candidates: Vec<u32> = (1..1usize << self.n)
            .filter(|&m| {
                (m as u32).count_ones() as usize == target
                    && match start {
                        Some(v) => self.first[m] & (1 << v) != 0,
                        None => self.first[m] != 0,
                    }
            })
            .map(|m| m as u32)
            .collect();
        let mut path = Vec::with_capacity(target);
        let mut cur: Option<usize> = None;
        while !candidates.is_empty() && candidates[0] != 0 {
            let reach = |rem: u32| -> u32 {
                let options = self.first[rem as usize];
                match cur {
                    Some(c) => options & self.out[c],
                    None => match start {
                        Some(v) => options & (1 << v),
                        None => options,
                    },
                }
            };
            let next = candidates
                .iter()
                .map(|&rem| reach(rem))
                .filter(|&o| o != 0)
                .map(|o| o.trailing_zeros())
                .min()
                .expect("some candidate continues") as usize;
            candidates = candidates
                .iter()
                .filter(|&&rem| reach(rem) & (1 << next) != 0)
                .map(|&rem| rem ^ (1 << next))
                .collect();
            path.push(next);
            cur = Some(next);
        }
        path
    }

    pub fn best_path(&self) -> Vec<usize> {
        self.lex_least(None)
    }

    pub fn path_starting_at(&self, v: usize) -> Vec<usize> {
        self.lex_least(Some(v))
    }

    /// A longest path ending at `v`: smallest vertex set of maximum size,
    /// unwound backwards through the smallest available predecessor.
    pub fn path_ending_at(&self, v: usize) -> Vec<usize> {
        let target = self.ending[v];
        let mut mask = (1..1usize << self.n)
            .find(|&m| (m as u32).count_ones() as usize == target && self.last[m] & (1 << v) != 0)
            .expect("ending table is consistent");
        let mut path = vec![v];
        let mut cur = v;
        mask ^= 1 << v;
        while mask != 0 {
            let options = self.last[mask] & self.inn[cur];
            let prev = options.trailing_zeros() as usize;
            path.push(prev);
            mask ^= 1 << prev;
            cur = prev;
        }
        path.reverse();
        path
    }
}

/// Depth-first search with a node budget, for instances beyond the subset DP.
fn dfs_longest(t: &ColoredTournament, allowed: ColorSet, meter: &mut Meter) -> (Vec<usize>, bool) {
    fn go(
        t: &ColoredTournament,
        allowed: ColorSet,
        path: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Vec<usize>,
        meter: &mut Meter,
    ) {
        if !meter.tick() {
            return;
        }
        if path.len() > best.len() {
            *best = path.clone();
        }
        if best.len() == t.n() {
            return;
        }
        let cur = *path.last().unwrap();
        for w in 0..t.n() {
            if !used[w] && t.beats(cur, w) && allowed.contains(t.color(cur, w)) {
                used[w] = true;
                path.push(w);
                go(t, allowed, path, used, best, meter);
                path.pop();
                used[w] = false;
                if meter.exhausted() {
                    return;
                }
            }
        }
    }
    let mut best: Vec<usize> = if t.n() > 0 { vec![0] } else { Vec::new() };
    let mut used = vec![false; t.n()];
    for v in 0..t.n() {
        used[v] = true;
        let mut path = vec![v];
        go(t, allowed, &mut path, &mut used, &mut best, meter);
        used[v] = false;
        if meter.exhausted() {
            return (best, false);
        }
    }
    (best, true)
}

/// Longest directed path whose edges all have colors in `allowed`.
/// Exact by subset DP up to [`EXACT_DIRECTED_MAX`] vertices, by budgeted
/// search beyond.
pub fn longest_restricted_directed(
    t: &ColoredTournament,
    allowed: ColorSet,
    budget: Budget,
) -> Result<PathCertificate, PathError> {
    check_allowed(allowed, t.q())?;
    let constraint = ColorConstraint::Allowed(allowed);
    directed_with(t, allowed, constraint, budget)
}

/// Longest directed path avoiding color `avoid`.
pub fn longest_avoiding_directed_exact(
    t: &ColoredTournament,
    avoid: Color,
    budget: Budget,
) -> Result<PathCertificate, PathError> {
    check_color(avoid, t.q())?;
    directed_with(t, ColorSet::avoiding(t.q(), avoid), ColorConstraint::Avoid(avoid), budget)
}

fn directed_with(
    t: &ColoredTournament,
    allowed: ColorSet,
    constraint: ColorConstraint,
    budget: Budget,
) -> Result<PathCertificate, PathError> {
    let wrap = |vertices| PathCertificate { vertices, mode: PathMode::Directed, constraint };
    if t.n() <= EXACT_DIRECTED_MAX {
        return Ok(wrap(DirectedDp::new(t, allowed)?.best_path()));
    }
    let mut meter = budget.start();
    let (best, complete) = dfs_longest(t, allowed, &mut meter);
    if complete {
        Ok(wrap(best))
    } else {
        Err(PathError::BudgetExceeded { best: wrap(best) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{validate_path, PathInstance};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle_mono() -> ColoredTournament {
        ColoredTournament::from_edges(3, 2, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
    }

    /// Every directed allowed path, enumerated naively; returns the
    /// lexicographically least among the longest.
    fn naive(t: &ColoredTournament, allowed: ColorSet) -> Vec<usize> {
        fn go(t: &ColoredTournament, allowed: ColorSet, path: &mut Vec<usize>, best: &mut Vec<usize>) {
            if path.len() > best.len() || (path.len() == best.len() && *path < *best) {
                *best = path.clone();
            }
            let cur = *path.last().unwrap();
            for w in 0..t.n() {
                if !path.contains(&w) && t.beats(cur, w) && allowed.contains(t.color(cur, w)) {
                    path.push(w);
                    go(t, allowed, path, best);
                    path.pop();
                }
            }
        }
        let mut best = Vec::new();
        for v in 0..t.n() {
            go(t, allowed, &mut vec![v], &mut best);
        }
        best
    }

    #[test]
    fn cycle_examples() {
        let t = cycle_mono();
        let all = longest_avoiding_directed_exact(&t, 2, Budget::UNLIMITED).unwrap();
        assert_eq!(all.vertices, vec![0, 1, 2]);
        let none = longest_avoiding_directed_exact(&t, 1, Budget::UNLIMITED).unwrap();
        assert_eq!(none.vertices, vec![0]);
    }

    #[test]
    fn matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let q = rng.gen_range(1..=3);
            let t = ColoredTournament::from_fn(n, q, |_, _| (rng.gen_bool(0.5), rng.gen_range(1..=q) as Color))
                .unwrap();
            let avoid = rng.gen_range(1..=q) as Color;
            let allowed = ColorSet::avoiding(q, avoid);
            let dp = DirectedDp::new(&t, allowed).unwrap();
            let expected = naive(&t, allowed);
            assert_eq!(dp.best_path(), expected);
            for v in 0..n {
                let s = dp.path_starting_at(v);
                assert_eq!(s.len(), dp.starting_lengths()[v]);
                assert_eq!(s[0], v);
                let e = dp.path_ending_at(v);
                assert_eq!(e.len(), dp.ending_lengths()[v]);
                assert_eq!(*e.last().unwrap(), v);
                for path in [s, e] {
                    let cert = PathCertificate {
                        vertices: path,
                        mode: PathMode::Directed,
                        constraint: ColorConstraint::Avoid(avoid),
                    };
                    validate_path(PathInstance::Tournament(&t), &cert).unwrap();
                }
            }
        }
    }

    #[test]
    fn large_instances_use_budgeted_search() {
        let k = crate::tournament::OrderedColoring::monochromatic(30, 2, 1).unwrap();
        let t = ColoredTournament::transitive(&k);
        let p = longest_avoiding_directed_exact(&t, 2, Budget::nodes(10_000)).unwrap();
        assert_eq!(p.len(), 30);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = ColoredTournament::from_fn(40, 2, |_, _| (rng.gen_bool(0.5), 1)).unwrap();
        match longest_avoiding_directed_exact(&t, 2, Budget::nodes(50)) {
            Err(PathError::BudgetExceeded { best }) => assert!(!best.is_empty()),
            other => panic!("expected budget overrun, got {other:?}"),
        }
    }

    #[test]
    fn refuses_oversized_dp() {
        let k = crate::tournament::OrderedColoring::monochromatic(23, 1, 1).unwrap();
        let t = ColoredTournament::transitive(&k);
        assert!(matches!(DirectedDp::new(&t, ColorSet::full(1)), Err(PathError::TooLarge { .. })));
    }
}
