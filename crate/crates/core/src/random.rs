//! Seeded instance generators. Every function takes an explicit RNG so that
//! a fixed seed reproduces the same instance.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::color::Color;
use crate::tournament::{ColoredTournament, OrderedColoring};
use crate::vectors::VectorFamily;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_color(rng: &mut impl Rng, q: usize) -> Color {
    rng.gen_range(1..=q) as Color
}

/// Uniform orientation and uniform color on every pair.
pub fn random_tournament(rng: &mut impl Rng, n: usize, q: usize) -> ColoredTournament {
    ColoredTournament::from_fn(n, q, |_, _| (rng.gen_bool(0.5), random_color(rng, q))).expect("q >= 1")
}

pub fn random_coloring(rng: &mut impl Rng, n: usize, q: usize) -> OrderedColoring {
    OrderedColoring::from_fn(n, q, |_, _| random_color(rng, q)).expect("q >= 1")
}

/// `size` uniform points of `[n]^q`, not necessarily distinct or ordered.
pub fn random_family(rng: &mut impl Rng, q: usize, n: u32, r: usize, size: usize) -> VectorFamily {
    let rows = (0..size).map(|_| (0..q).map(|_| rng.gen_range(1..=n)).collect()).collect();
    VectorFamily::from_rows(q, n, r, rows).expect("coordinates in range")
}

/// A tournament that is transitive along a hidden random order except for
/// at most `delta^2 N^2` reversed pairs, together with that order.
pub fn random_close_instance(
    rng: &mut impl Rng,
    n: usize,
    q: usize,
    delta: Ratio<i64>,
) -> (ColoredTournament, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let budget = (delta * delta * Ratio::from_integer((n * n) as i64)).floor().to_integer().max(0) as usize;
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let flips = rng.gen_range(0..=budget.min(pairs.len()));
    let mut flipped = vec![false; n * n];
    for &(u, v) in &pairs[..flips] {
        flipped[u * n + v] = true;
    }
    let t = ColoredTournament::from_fn(n, q, |u, v| {
        let forward = pos[u] < pos[v];
        (forward != flipped[u * n + v], random_color(rng, q))
    })
    .expect("q >= 1");
    (t, order)
}
