//! Branch and bound over edge colorings for the minimum, over colorings, of
//! the longest path using at most r colors: ordered cliques (monotone paths)
//! and all tournaments (directed paths).

use rayon::prelude::*;

use super::{check_params, f_value, g_value, ExtremalRecord, Incumbent, Kind, SearchError, Status, Witness};
use crate::budget::{Budget, SharedMeter};
use crate::color::{Color, ColorSet};
use crate::constructions::canonical_chain;
use crate::tournament::{ColoredTournament, OrderedColoring};

/// Largest vertex count for the tournament search.
pub const EXACT_TOURNAMENT_MAX: usize = 6;

/// Largest vertex count for the ordered-clique search.
const EXACT_ORDERED_MAX: usize = 32;

/// Root prefixes are expanded until there are at least this many branches.
const ROOT_BRANCHES: usize = 256;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|w| (0..w).map(move |u| (u, w))).collect()
}

/// Colors that may be used next under first-use symmetry breaking: the first
/// edge takes color 1 and a new color is always the smallest unused one.
fn next_colors(q: usize, max_used: usize) -> std::ops::RangeInclusive<usize> {
    1..=q.min(max_used + 1)
}

/// The canonical product coloring cut to its first `n` vertices.
fn seed_coloring(q: usize, n: usize) -> OrderedColoring {
    let mut m = 1;
    while (m as u128).pow(q as u32) < n as u128 {
        m += 1;
    }
    let chain = canonical_chain(q, m).expect("valid palette");
    OrderedColoring::from_fn(n, q, |u, v| crate::tournament::OrderedColors::color(&chain, u, v)).expect("valid colors")
}

struct OrderedSearch<'a> {
    n: usize,
    q: usize,
    edges: Vec<(usize, usize)>,
    /// subset indices containing each color (index `c - 1`)
    with_color: Vec<Vec<usize>>,
    subsets: usize,
    meter: &'a SharedMeter,
    best: &'a Incumbent<Vec<Color>>,
}

impl OrderedSearch<'_> {
    /// Colors edge `e` with `c`, updating the end-length table of every
    /// subset containing `c`. Returns the undo log and the new running maximum.
    fn apply(&self, e: usize, c: Color, ends: &mut [u8], cur_max: usize) -> (Vec<(usize, u8)>, usize) {
        let (u, w) = self.edges[e];
        let mut undo = Vec::new();
        let mut new_max = cur_max;
        for &s in &self.with_color[c as usize - 1] {
            let through = ends[s * self.n + u] + 1;
            let slot = s * self.n + w;
            if through > ends[slot] {
                undo.push((slot, ends[slot]));
                ends[slot] = through;
                new_max = new_max.max(through as usize);
            }
        }
        (undo, new_max)
    }

    fn dfs(&self, branch: u32, colors: &mut Vec<Color>, ends: &mut [u8], max_used: usize, cur_max: usize) {
        if !self.meter.tick() {
            return;
        }
        let e = colors.len();
        if e == self.edges.len() {
            self.best.offer(cur_max, branch, || colors.clone());
            return;
        }
        for c in next_colors(self.q, max_used) {
            let c = c as Color;
            let (undo, new_max) = self.apply(e, c, ends, cur_max);
            if self.best.improves(new_max, branch) {
                colors.push(c);
                self.dfs(branch, colors, ends, max_used.max(c as usize), new_max);
                colors.pop();
            }
            for (slot, old) in undo.into_iter().rev() {
                ends[slot] = old;
            }
            if self.meter.exhausted() {
                return;
            }
        }
    }

    /// Prefixes of the first few edges, in search order.
    fn roots(&self) -> Vec<Vec<Color>> {
        let mut roots: Vec<Vec<Color>> = vec![vec![1]];
        let mut depth = 1;
        while roots.len() < ROOT_BRANCHES && depth < self.edges.len() {
            roots = roots
                .into_iter()
                .flat_map(|prefix| {
                    let used = *prefix.iter().max().unwrap() as usize;
                    next_colors(self.q, used).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c as Color);
                        p
                    })
                })
                .collect();
            depth += 1;
        }
        roots
    }

    fn run_root(&self, branch: u32, prefix: &[Color]) {
        let mut ends = vec![1u8; self.subsets * self.n];
        let mut cur_max = 1;
        for (e, &c) in prefix.iter().enumerate() {
            cur_max = self.apply(e, c, &mut ends, cur_max).1;
        }
        if !self.best.improves(cur_max, branch) {
            return;
        }
        let max_used = *prefix.iter().max().unwrap() as usize;
        self.dfs(branch, &mut prefix.to_vec(), &mut ends, max_used, cur_max);
    }
}

fn coloring_from(n: usize, q: usize, edges: &[(usize, usize)], colors: &[Color]) -> OrderedColoring {
    let triples: Vec<(usize, usize, Color)> = edges.iter().zip(colors).map(|(&(u, w), &c)| (u, w, c)).collect();
    OrderedColoring::from_pairs(n, q, &triples).expect("search colors every pair once")
}

/// Least, over q-colorings of the ordered `n`-clique, longest monotone path
/// using at most `r` colors.
pub fn exact_ordered(q: usize, r: usize, n: usize, budget: Budget) -> Result<ExtremalRecord, SearchError> {
    check_params(q, r, n)?;
    if n > EXACT_ORDERED_MAX {
        return Err(SearchError::TooLarge(format!("ordered search limited to {EXACT_ORDERED_MAX} vertices")));
    }
    let meter = SharedMeter::new(budget);
    let seed = seed_coloring(q, n);
    let record = |value: usize, witness: &OrderedColoring, meter: &SharedMeter| ExtremalRecord {
        kind: Kind::OrderedColoring,
        q,
        r,
        size: n,
        value,
        status: if meter.exhausted() { Status::UpperBound } else { Status::Exact },
        witness: Witness::from_coloring(witness),
        nodes_explored: meter.nodes(),
        wall_ms: meter.elapsed().as_millis() as u64,
    };
    if r >= q || n <= 2 {
        // all colors allowed, or too few vertices to matter: the whole order
        return Ok(record(f_value(&seed, r), &seed, &meter));
    }
    let subsets = ColorSet::subsets_of_size(q, r);
    let with_color = (1..=q as Color)
        .map(|c| (0..subsets.len()).filter(|&s| subsets[s].contains(c)).collect())
        .collect();
    let best = Incumbent::new(false, f_value(&seed, r), u32::MAX, None);
    let search = OrderedSearch {
        n,
        q,
        edges: pairs(n),
        with_color,
        subsets: subsets.len(),
        meter: &meter,
        best: &best,
    };
    let roots = search.roots();
    roots.par_iter().enumerate().for_each(|(i, prefix)| {
        if !meter.exhausted() {
            search.run_root(i as u32, prefix);
        }
    });
    let edges = search.edges.clone();
    let value = best.value();
    let witness = best.into_witness().map_or(seed, |colors| coloring_from(n, q, &edges, &colors));
    Ok(record(value, &witness, &meter))
}

/// Tournaments on `n` vertices up to isomorphism, as orientation bitmasks
/// over [`pairs`] (bit set: the smaller vertex beats the larger).
fn tournament_classes(n: usize) -> Vec<u32> {
    let edges = pairs(n);
    let index = |u: usize, w: usize| edges.iter().position(|&p| p == (u.min(w), u.max(w))).unwrap();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut next = p.clone();
                    next.insert(pos, k);
                    next
                })
            })
            .collect();
    }
    let total = 1usize << edges.len();
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for mask in 0..total {
        if seen[mask] {
            continue;
        }
        reps.push(mask as u32);
        for p in &perms {
            let mut image = 0usize;
            for (k, &(u, w)) in edges.iter().enumerate() {
                let u_beats_w = mask >> k & 1 == 1;
                let (a, b) = (p[u], p[w]);
                let a_beats_b = u_beats_w;
                // store with the smaller endpoint first
                let bit = if a < b { a_beats_b } else { !a_beats_b };
                if bit {
                    image |= 1 << index(a, b);
                }
            }
            seen[image] = true;
        }
    }
    reps
}

/// Longest path in the digraph `out` (bitmask adjacency).
fn longest_path(out: &[u32], n: usize) -> usize {
    let mut first = vec![0u32; 1 << n];
    let mut best = 1;
    for mask in 1usize..1 << n {
        let m = mask as u32;
        if m.is_power_of_two() {
            first[mask] = m;
            continue;
        }
        let mut f = 0;
        let mut rest = m;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if out[v] & first[mask ^ (1 << v)] != 0 {
                f |= 1 << v;
            }
        }
        first[mask] = f;
        if f != 0 {
            best = best.max(m.count_ones() as usize);
        }
    }
    best
}

struct TournamentSearch<'a> {
    n: usize,
    q: usize,
    edges: Vec<(usize, usize)>,
    subsets: Vec<ColorSet>,
    meter: &'a SharedMeter,
    best: &'a Incumbent<(u32, Vec<Color>)>,
}

impl TournamentSearch<'_> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        branch: u32,
        orient: u32,
        colors: &mut Vec<Color>,
        out: &mut [Vec<u32>],
        values: &mut [usize],
        max_used: usize,
    ) {
        if !self.meter.tick() {
            return;
        }
        let e = colors.len();
        let current = values.iter().copied().max().unwrap_or(1);
        if e == self.edges.len() {
            self.best.offer(current, branch, || (orient, colors.clone()));
            return;
        }
        let (u, w) = self.edges[e];
        let (from, to) = if orient >> e & 1 == 1 { (u, w) } else { (w, u) };
        for c in next_colors(self.q, max_used) {
            let c = c as Color;
            let mut saved = Vec::new();
            let mut new_max = current;
            for (s, set) in self.subsets.iter().enumerate() {
                if set.contains(c) {
                    out[s][from] |= 1 << to;
                    let v = longest_path(&out[s], self.n);
                    saved.push((s, values[s]));
                    values[s] = v;
                    new_max = new_max.max(v);
                }
            }
            if self.best.improves(new_max, branch) {
                colors.push(c);
                self.dfs(branch, orient, colors, out, values, max_used.max(c as usize));
                colors.pop();
            }
            for (s, old) in saved {
                out[s][from] &= !(1 << to);
                values[s] = old;
            }
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

/// Least, over all q-colored tournaments on `n` vertices, longest directed
/// path using at most `r` colors. Tournaments are taken up to isomorphism.
pub fn exact_tournament(q: usize, r: usize, n: usize, budget: Budget) -> Result<ExtremalRecord, SearchError> {
    check_params(q, r, n)?;
    if n > EXACT_TOURNAMENT_MAX {
        return Err(SearchError::TooLarge(format!("tournament search limited to {EXACT_TOURNAMENT_MAX} vertices")));
    }
    let meter = SharedMeter::new(budget);
    let seed = ColoredTournament::transitive(&seed_coloring(q, n));
    let edges = pairs(n);
    let to_tournament = |orient: u32, colors: &[Color]| {
        let triples: Vec<(usize, usize, Color)> = edges
            .iter()
            .zip(colors)
            .enumerate()
            .map(|(k, (&(u, w), &c))| if orient >> k & 1 == 1 { (u, w, c) } else { (w, u, c) })
            .collect();
        ColoredTournament::from_edges(n, q, &triples).expect("search fixes every pair")
    };
    let record = |value: usize, witness: &ColoredTournament, meter: &SharedMeter| ExtremalRecord {
        kind: Kind::Tournament,
        q,
        r,
        size: n,
        value,
        status: if meter.exhausted() { Status::UpperBound } else { Status::Exact },
        witness: Witness::from_tournament(witness),
        nodes_explored: meter.nodes(),
        wall_ms: meter.elapsed().as_millis() as u64,
    };
    if r >= q || n <= 2 {
        // every tournament has a Hamiltonian path
        return Ok(record(g_value(&seed, r), &seed, &meter));
    }
    let best = Incumbent::new(false, g_value(&seed, r), u32::MAX, None);
    let search = TournamentSearch {
        n,
        q,
        edges: edges.clone(),
        subsets: ColorSet::subsets_of_size(q, r),
        meter: &meter,
        best: &best,
    };
    let classes = tournament_classes(n);
    classes.par_iter().enumerate().for_each(|(i, &orient)| {
        if meter.exhausted() {
            return;
        }
        let mut out = vec![vec![0u32; n]; search.subsets.len()];
        let mut values = vec![1; search.subsets.len()];
        search.dfs(i as u32, orient, &mut Vec::new(), &mut out, &mut values, 0);
    });
    let value = best.value();
    let witness = best.into_witness().map_or(seed, |(orient, colors)| to_tournament(orient, &colors));
    Ok(record(value, &witness, &meter))
}
