//! The merge-two-colors floor, made constructive.
//!
//! For a color class, a maximal acyclic subgraph of its edges is grown
//! greedily; labelling each vertex by its longest path ending there gives,
//! over all classes, distinct label vectors. With `k` classes some class
//! therefore has a path on at least `ceil(N^(1/k))` vertices. Merging two
//! of `q >= 3` colors leaves `q - 1` classes, each missing a color.

use crate::color::{Color, ColorSet};
use crate::search::BitSet;
use crate::tournament::ColoredTournament;

/// Longest path in a greedily grown maximal acyclic subgraph of the edges
/// whose color lies in `class`.
pub fn acyclic_class_path(t: &ColoredTournament, class: ColorSet) -> Vec<usize> {
    let n = t.n();
    // reach[x]: vertices reachable from x, x included
    let mut reach: Vec<BitSet> = (0..n)
        .map(|x| {
            let mut b = BitSet::new(n);
            b.insert(x);
            b
        })
        .collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v, c) in t.edges() {
        if !class.contains(c) || reach[v].contains(u) {
            continue;
        }
        out[u].push(v);
        let gained = reach[v].clone();
        for x in 0..n {
            if reach[x].contains(u) {
                for y in gained.iter() {
                    reach[x].insert(y);
                }
            }
        }
    }
    longest_dag_path(&out)
}

/// Longest path in a DAG given by out-lists; ties go to the smallest end vertex.
fn longest_dag_path(out: &[Vec<usize>]) -> Vec<usize> {
    let n = out.len();
    let mut indeg = vec![0usize; n];
    for list in out {
        for &v in list {
            indeg[v] += 1;
        }
    }
    let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut len = vec![1usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    while let Some(u) = queue.pop_front() {
        for &v in &out[u] {
            if len[u] + 1 > len[v] {
                len[v] = len[u] + 1;
                pred[v] = Some(u);
            }
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    let Some(best) = (0..n).max_by_key(|&v| (len[v], std::cmp::Reverse(v))) else {
        return Vec::new();
    };
    let mut path = vec![best];
    while let Some(p) = pred[*path.last().unwrap()] {
        path.push(p);
    }
    path.reverse();
    path
}

/// Smallest `L` with `L^k >= n`.
pub(crate) fn integer_root_ceil(n: usize, k: u32) -> usize {
    let mut l = 1usize;
    while (l as u128).pow(k) < n as u128 {
        l += 1;
    }
    l
}

/// Guaranteed length of the merged-color baseline: `ceil(N^(1/(q-1)))` for
/// `q >= 3`, `ceil(sqrt N)` for two colors, and 1 for a single color.
pub fn baseline_floor(n: usize, q: usize) -> usize {
    match q {
        0 | 1 => 1.min(n),
        2 => integer_root_ceil(n, 2),
        _ => integer_root_ceil(n, q as u32 - 1),
    }
}

/// Best baseline path avoiding each color (index `color - 1`).
///
/// Classes are all singletons and, for three or more colors, all pairs;
/// every merge of two colors is covered.
pub fn merged_baseline(t: &ColoredTournament) -> Vec<Vec<usize>> {
    let q = t.q();
    let mut best: Vec<Vec<usize>> = vec![if t.n() > 0 { vec![0] } else { Vec::new() }; q];
    let mut classes: Vec<ColorSet> = (1..=q as Color).map(ColorSet::single).collect();
    if q >= 3 {
        classes.extend(ColorSet::subsets_of_size(q, 2));
    }
    for class in classes {
        let path = acyclic_class_path(t, class);
        for c in 1..=q as Color {
            if !class.contains(c) && path.len() > best[c as usize - 1].len() {
                best[c as usize - 1] = path.clone();
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::OrderedColoring;

    #[test]
    fn floors() {
        assert_eq!(baseline_floor(40, 4), 4);
        assert_eq!(baseline_floor(9, 2), 3);
        assert_eq!(baseline_floor(10, 2), 4);
        assert_eq!(baseline_floor(10, 3), 4);
        assert_eq!(baseline_floor(7, 1), 1);
    }

    #[test]
    fn monochromatic_transitive() {
        let k = OrderedColoring::monochromatic(9, 2, 1).unwrap();
        let t = ColoredTournament::transitive(&k);
        let best = merged_baseline(&t);
        assert_eq!(best[1], (0..9).collect::<Vec<_>>());
        assert_eq!(best[0].len(), 1);
    }

    #[test]
    fn cycle_keeps_two_arcs() {
        let t = ColoredTournament::from_edges(3, 1, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(acyclic_class_path(&t, ColorSet::single(1)).len(), 3);
    }
}
