use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ColoredTournament, TournamentError};

/// Largest instance for which [`exact_min_backward`] runs its subset DP.
pub const EXACT_FAS_MAX: usize = 12;

pub fn validate_permutation(n: usize, order: &[usize]) -> Result<(), TournamentError> {
    if order.len() != n {
        return Err(TournamentError::BadPermutation(format!("length {} != {n}", order.len())));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(TournamentError::BadPermutation(format!("vertex {v} out of range")));
        }
        if seen[v] {
            return Err(TournamentError::BadPermutation(format!("vertex {v} repeated")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Pairs placed `a` before `b` by `order` although `b -> a`.
pub fn backward_edge_count(t: &ColoredTournament, order: &[usize]) -> Result<usize, TournamentError> {
    validate_permutation(t.n(), order)?;
    let mut count = 0;
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if t.beats(b, a) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Orders by decreasing out-degree (ties shuffled by `seed`), then improves
/// the order by adjacent swaps and single-vertex moves until no move reduces
/// the backward count.
pub fn heuristic_transitive_order(t: &ColoredTournament, seed: u64) -> Vec<usize> {
    let n = t.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let degree: Vec<usize> = (0..n).map(|v| t.out_degree(v)).collect();
    // stable sort keeps the shuffled order among equal degrees
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]));

    loop {
        let mut improved = false;
        for i in 0..n.saturating_sub(1) {
            if t.beats(order[i + 1], order[i]) {
                order.swap(i, i + 1);
                improved = true;
            }
        }
        for i in 0..n {
            if let Some(j) = best_move(t, &order, i) {
                let v = order.remove(i);
                order.insert(j, v);
                improved = true;
            }
        }
        if !improved {
            return order;
        }
    }
}

/// Target slot for moving `order[i]` that strictly lowers the backward count.
fn best_move(t: &ColoredTournament, order: &[usize], i: usize) -> Option<usize> {
    let v = order[i];
    let mut best_gain = 0i64;
    let mut best = None;
    // moving left past u: arc v -> u was backward (u before v) and becomes forward
    let mut gain = 0i64;
    for j in (0..i).rev() {
        let u = order[j];
        gain += if t.beats(v, u) { 1 } else { -1 };
        if gain > best_gain {
            best_gain = gain;
            best = Some(j);
        }
    }
    gain = 0;
    for (j, &u) in order.iter().enumerate().skip(i + 1) {
        gain += if t.beats(u, v) { 1 } else { -1 };
        if gain > best_gain {
            best_gain = gain;
            best = Some(j);
        }
    }
    best
}

/// Minimum backward count over all orders, with an optimal order, by DP over
/// prefix sets. Limited to [`EXACT_FAS_MAX`] vertices.
pub fn exact_min_backward(t: &ColoredTournament) -> Result<(usize, Vec<usize>), TournamentError> {
    let n = t.n();
    if n > EXACT_FAS_MAX {
        return Err(TournamentError::TooLarge { n, limit: EXACT_FAS_MAX });
    }
    let full = (1usize << n) - 1;
    let beats_mask: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && t.beats(v, u)).fold(0, |m, u| m | (1 << u)))
        .collect();
    let mut cost = vec![usize::MAX; full + 1];
    let mut last = vec![usize::MAX; full + 1];
    cost[0] = 0;
    for set in 0..=full {
        if cost[set] == usize::MAX {
            continue;
        }
        for v in 0..n {
            if set & (1 << v) != 0 {
                continue;
            }
            // v goes after everything in `set`; arcs v -> set are backward
            let c = cost[set] + (beats_mask[v] & set).count_ones() as usize;
            let next = set | (1 << v);
            if c < cost[next] {
                cost[next] = c;
                last[next] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = last[set];
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    Ok((cost[full], order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::OrderedColoring;

    fn cycle3() -> ColoredTournament {
        ColoredTournament::from_edges(3, 1, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
    }

    fn all_orders(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn transitive_counts() {
        let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(6, 1, 1).unwrap());
        let id: Vec<usize> = (0..6).collect();
        let rev: Vec<usize> = (0..6).rev().collect();
        assert_eq!(backward_edge_count(&t, &id).unwrap(), 0);
        assert_eq!(backward_edge_count(&t, &rev).unwrap(), 15);
        assert_eq!(heuristic_transitive_order(&t, 7), id);
    }

    #[test]
    fn three_cycle_needs_one_reversal() {
        let t = cycle3();
        let min = all_orders(3).iter().map(|o| backward_edge_count(&t, o).unwrap()).min().unwrap();
        assert_eq!(min, 1);
        let h = heuristic_transitive_order(&t, 0);
        assert_eq!(backward_edge_count(&t, &h).unwrap(), 1);
        assert_eq!(exact_min_backward(&t).unwrap().0, 1);
    }

    #[test]
    fn bad_permutations() {
        let t = cycle3();
        assert!(backward_edge_count(&t, &[0, 1]).is_err());
        assert!(backward_edge_count(&t, &[0, 1, 1]).is_err());
        assert!(backward_edge_count(&t, &[0, 1, 3]).is_err());
    }

    #[test]
    fn exact_matches_enumeration() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=6);
            let t = ColoredTournament::from_fn(n, 1, |_, _| (rng.gen_bool(0.5), 1)).unwrap();
            let brute = all_orders(n).iter().map(|o| backward_edge_count(&t, o).unwrap()).min().unwrap();
            let (best, order) = exact_min_backward(&t).unwrap();
            assert_eq!(best, brute);
            assert_eq!(backward_edge_count(&t, &order).unwrap(), best);
        }
    }

    #[test]
    fn exact_refuses_large() {
        let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(13, 1, 1).unwrap());
        assert!(matches!(exact_min_backward(&t), Err(TournamentError::TooLarge { .. })));
    }
}
