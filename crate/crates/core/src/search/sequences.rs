//! Branch and bound for the longest r-increasing sequence and the largest
//! r-comparable set in `[n]^q`.

use rayon::prelude::*;

use super::{check_params, BitSet, ExtremalRecord, Incumbent, Kind, SearchError, Status, Witness};
use crate::budget::{Budget, SharedMeter};
use crate::vectors::grid_points;

/// Largest grid the sequence and set searches accept.
pub const MAX_GRID_POINTS: usize = 4096;

/// Grid points with the relation `x <_r y` as bitsets.
struct Grid {
    points: Vec<Vec<u32>>,
    /// `succ[x]` holds every `y` with `x <_r y`
    succ: Vec<BitSet>,
    pred: Vec<BitSet>,
    /// comparable in at least one direction
    comp: Vec<BitSet>,
}

impl Grid {
    fn build(q: usize, r: usize, n: usize) -> Result<Self, SearchError> {
        let size = (n as u128).checked_pow(q as u32).filter(|&s| s <= MAX_GRID_POINTS as u128);
        let Some(size) = size else {
            return Err(SearchError::TooLarge(format!("[{n}]^{q} has more than {MAX_GRID_POINTS} points")));
        };
        let size = size as usize;
        let points = grid_points(q, n as u32);
        let gains = |a: &[u32], b: &[u32]| a.iter().zip(b).filter(|(x, y)| x < y).count();
        let succ: Vec<BitSet> = (0..size)
            .into_par_iter()
            .map(|x| {
                let mut s = BitSet::new(size);
                for y in 0..size {
                    if gains(&points[x], &points[y]) >= r {
                        s.insert(y);
                    }
                }
                s
            })
            .collect();
        let pred: Vec<BitSet> = (0..size)
            .into_par_iter()
            .map(|y| {
                let mut s = BitSet::new(size);
                for x in 0..size {
                    if succ[x].contains(y) {
                        s.insert(x);
                    }
                }
                s
            })
            .collect();
        let comp = succ
            .iter()
            .zip(&pred)
            .map(|(s, p)| {
                let mut c = s.clone();
                for v in p.iter() {
                    c.insert(v);
                }
                c
            })
            .collect();
        Ok(Self { points, succ, pred, comp })
    }
}

/// Greedy coloring of `cand` in the comparability graph; returns
/// `(vertex, class)` in class order. The class count bounds any clique.
fn color_classes(cand: &BitSet, adj: &[BitSet]) -> Vec<(usize, usize)> {
    let mut uncolored = cand.clone();
    let mut out = Vec::with_capacity(cand.len());
    let mut class = 0;
    while !uncolored.is_empty() {
        class += 1;
        let mut open = uncolored.clone();
        while let Some(v) = open.first() {
            open.remove(v);
            open.difference_with(&adj[v]);
            uncolored.remove(v);
            out.push((v, class));
        }
    }
    out
}

fn class_count(cand: &BitSet, adj: &[BitSet]) -> usize {
    color_classes(cand, adj).last().map_or(0, |&(_, c)| c)
}

struct Ctx<'a> {
    grid: &'a Grid,
    /// only keep vertex sets whose comparability tournament is transitive
    transitive: bool,
    meter: &'a SharedMeter,
    best: &'a Incumbent<Vec<usize>>,
    branch: u32,
}

impl Ctx<'_> {
    /// Clique search with colour-class pruning. `members` mirrors `clique`.
    fn expand(&self, clique: &mut Vec<usize>, members: &mut BitSet, cand: BitSet) {
        if !self.meter.tick() {
            return;
        }
        let mut cand = cand;
        let order = color_classes(&cand, &self.grid.comp);
        for &(v, class) in order.iter().rev() {
            if !self.best.improves(clique.len() + class, self.branch) || self.meter.exhausted() {
                return;
            }
            let mut next = cand.intersection(&self.grid.comp[v]);
            if self.transitive {
                self.drop_cyclic(members, v, &mut next);
            }
            clique.push(v);
            members.insert(v);
            self.best.offer(clique.len(), self.branch, || clique.clone());
            if !next.is_empty() {
                self.expand(clique, members, next);
            }
            clique.pop();
            members.remove(v);
            cand.remove(v);
        }
    }

    /// Removes every `w` that would close a cyclic triangle with `v` and a member.
    fn drop_cyclic(&self, members: &BitSet, v: usize, next: &mut BitSet) {
        let g = self.grid;
        let doomed: Vec<usize> = next
            .iter()
            .filter(|&w| {
                if g.succ[v].contains(w) {
                    // v < w, so a member s with w < s < v closes a cycle
                    members.meets_both(&g.succ[w], &g.pred[v])
                } else {
                    members.meets_both(&g.pred[w], &g.succ[v])
                }
            })
            .collect();
        for w in doomed {
            next.remove(w);
        }
    }

    /// Sequence search extending only at the end; needed when `x <_r y` and
    /// `y <_r x` can both hold.
    fn extend_sequence(&self, seq: &mut Vec<usize>, cand: &BitSet) {
        if !self.meter.tick() {
            return;
        }
        self.best.offer(seq.len(), self.branch, || seq.clone());
        if cand.is_empty() || !self.best.improves(seq.len() + class_count(cand, &self.grid.comp), self.branch) {
            return;
        }
        for v in cand.iter() {
            let next = cand.intersection(&self.grid.succ[v]);
            seq.push(v);
            self.extend_sequence(seq, &next);
            seq.pop();
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

fn finish(
    kind: Kind,
    q: usize,
    r: usize,
    n: usize,
    grid: &Grid,
    meter: &SharedMeter,
    best: Incumbent<Vec<usize>>,
    order_members: bool,
) -> ExtremalRecord {
    let value = best.value();
    let mut members = best.into_witness().unwrap_or_default();
    if order_members {
        // in a transitive set, position = number of members below
        let below = |v: usize| members.iter().filter(|&&u| grid.succ[u].contains(v)).count();
        let mut keyed: Vec<(usize, usize)> = members.iter().map(|&v| (below(v), v)).collect();
        keyed.sort_unstable();
        members = keyed.into_iter().map(|(_, v)| v).collect();
    }
    ExtremalRecord {
        kind,
        q,
        r,
        size: n,
        value,
        status: if meter.exhausted() { Status::LowerBound } else { Status::Exact },
        witness: Witness::Family { vectors: members.iter().map(|&v| grid.points[v].clone()).collect() },
        nodes_explored: meter.nodes(),
        wall_ms: meter.elapsed().as_millis() as u64,
    }
}

/// Longest r-increasing sequence in `[n]^q`.
///
/// The first vector may be taken with sorted coordinates, since permuting
/// coordinates preserves the relation. When `r > q/2` the relation is
/// antisymmetric and sequences are exactly the transitive comparable sets,
/// which are searched as cliques.
pub fn exact_increasing(q: usize, r: usize, n: usize, budget: Budget) -> Result<ExtremalRecord, SearchError> {
    check_params(q, r, n)?;
    let grid = Grid::build(q, r, n)?;
    let meter = SharedMeter::new(budget);
    let best = Incumbent::new(true, 1, u32::MAX, Some(vec![0]));
    let roots: Vec<usize> = (0..grid.points.len())
        .filter(|&v| grid.points[v].windows(2).all(|w| w[0] <= w[1]))
        .collect();
    let antisymmetric = 2 * r > q;
    roots.par_iter().enumerate().for_each(|(i, &root)| {
        let ctx = Ctx { grid: &grid, transitive: true, meter: &meter, best: &best, branch: i as u32 };
        let cand = grid.succ[root].clone();
        if meter.exhausted() || !best.improves(1 + class_count(&cand, &grid.comp), ctx.branch) {
            return;
        }
        if antisymmetric {
            let mut members = BitSet::new(grid.points.len());
            members.insert(root);
            ctx.expand(&mut vec![root], &mut members, cand);
        } else {
            ctx.extend_sequence(&mut vec![root], &cand);
        }
    });
    Ok(finish(Kind::IncreasingSequence, q, r, n, &grid, &meter, best, antisymmetric))
}

/// Largest r-comparable set in `[n]^q`: maximum clique of the comparability graph.
pub fn exact_comparable(q: usize, r: usize, n: usize, budget: Budget) -> Result<ExtremalRecord, SearchError> {
    check_params(q, r, n)?;
    let grid = Grid::build(q, r, n)?;
    let size = grid.points.len();
    let meter = SharedMeter::new(budget);
    let best = Incumbent::new(true, 1, u32::MAX, Some(vec![0]));
    let order = color_classes(&BitSet::full(size), &grid.comp);
    // branch i takes the i-th vertex from the end of the class order and
    // excludes the vertices of earlier branches
    let branches: Vec<(usize, usize)> = order.iter().rev().copied().collect();
    branches.par_iter().enumerate().for_each(|(i, &(v, class))| {
        let ctx = Ctx { grid: &grid, transitive: false, meter: &meter, best: &best, branch: i as u32 };
        if meter.exhausted() || !best.improves(class, ctx.branch) {
            return;
        }
        let mut cand = grid.comp[v].clone();
        for &(u, _) in &branches[..i] {
            cand.remove(u);
        }
        let mut members = BitSet::new(size);
        members.insert(v);
        let mut clique = vec![v];
        best.offer(1, ctx.branch, || clique.clone());
        if !cand.is_empty() {
            ctx.expand(&mut clique, &mut members, cand);
        }
    });
    Ok(finish(Kind::ComparableSet, q, r, n, &grid, &meter, best, false))
}
