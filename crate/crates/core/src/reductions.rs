//! Translations between ordered colorings and (q-1)-increasing vector
//! sequences, and color-merging partitions.

use thiserror::Error;

use crate::color::{Color, ColorSet, MAX_COLORS};
use crate::paths::MonotoneDp;
use crate::tournament::{ColoredTournament, OrderedColoring, TournamentError};
use crate::vectors::{validate_increasing, Certificate, VectorError, VectorFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("need at least 2 colors, got {0}")]
    TooFewColors(usize),
    #[error("family threshold must be q-1 = {expected}, got {got}")]
    WrongThreshold { expected: usize, got: usize },
    #[error("family is not (q-1)-increasing: {0}")]
    NotIncreasing(Certificate),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("partition covers {partition} colors but the instance has {instance}")]
    PaletteMismatch { partition: usize, instance: usize },
    #[error("floor reduction needs q > r >= 1 and floor(q/(q-r)) >= 2 (q={q}, r={r})")]
    NotApplicable { q: usize, r: usize },
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Vector `a` records, for each color `i`, the longest monotone path ending
/// at `a` that avoids `i`. The result is (q-1)-increasing in `[n]^q` with
/// `n` the largest entry.
pub fn coloring_to_vectors(k: &OrderedColoring) -> Result<VectorFamily, ReductionError> {
    let q = k.q();
    if q < 2 {
        return Err(ReductionError::TooFewColors(q));
    }
    let tables: Vec<MonotoneDp> = (1..=q as Color).map(|c| MonotoneDp::new(k, ColorSet::avoiding(q, c))).collect();
    let rows: Vec<Vec<u32>> = (0..k.n())
        .map(|a| tables.iter().map(|dp| dp.ending_lengths()[a] as u32).collect())
        .collect();
    let n = rows.iter().flatten().copied().max().unwrap_or(1);
    Ok(VectorFamily::from_rows(q, n, q - 1, rows)?)
}

/// Colors pair `a < b` with the coordinate where `x_a` does not strictly
/// grow (unique for a (q-1)-increasing family), or color 1 if all grow.
pub fn vectors_to_coloring(fam: &VectorFamily) -> Result<OrderedColoring, ReductionError> {
    let q = fam.q();
    if q < 2 {
        return Err(ReductionError::TooFewColors(q));
    }
    if fam.r() != q - 1 {
        return Err(ReductionError::WrongThreshold { expected: q - 1, got: fam.r() });
    }
    let cert = validate_increasing(fam);
    if !cert.is_ok() {
        return Err(ReductionError::NotIncreasing(cert));
    }
    let vs = fam.vectors();
    Ok(OrderedColoring::from_fn(fam.len(), q, |a, b| {
        vs[a]
            .coords()
            .iter()
            .zip(vs[b].coords())
            .position(|(x, y)| x >= y)
            .map_or(1, |i| (i + 1) as Color)
    })?)
}

/// A partition of `[q]` into labelled blocks; block `j` becomes color `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<Color>>,
    q: usize,
    label: Vec<Color>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<Color>>) -> Result<Self, ReductionError> {
        let q: usize = blocks.iter().map(Vec::len).sum();
        if q == 0 || q > MAX_COLORS || blocks.len() > MAX_COLORS {
            return Err(ReductionError::BadPartition(format!("{q} colors in {} blocks", blocks.len())));
        }
        let mut label = vec![0 as Color; q];
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ReductionError::BadPartition(format!("block {} is empty", j + 1)));
            }
            for &c in block {
                if c == 0 || c as usize > q {
                    return Err(ReductionError::BadPartition(format!("color {c} outside [1, {q}]")));
                }
                if label[c as usize - 1] != 0 {
                    return Err(ReductionError::BadPartition(format!("color {c} appears twice")));
                }
                label[c as usize - 1] = (j + 1) as Color;
            }
        }
        Ok(Self { blocks, q, label })
    }

    pub fn identity(q: usize) -> Result<Self, ReductionError> {
        Self::new((1..=q as Color).map(|c| vec![c]).collect())
    }

    pub fn blocks(&self) -> &[Vec<Color>] {
        &self.blocks
    }

    /// Size of the original palette.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of blocks, the merged palette size.
    pub fn merged_q(&self) -> usize {
        self.blocks.len()
    }

    pub fn label(&self, c: Color) -> Color {
        self.label[c as usize - 1]
    }

    /// Original colors lying in the given merged colors.
    pub fn pullback(&self, merged: ColorSet) -> ColorSet {
        merged.iter().flat_map(|b| self.blocks[b as usize - 1].iter().copied()).collect()
    }

    /// Most original colors reachable by a path using at most `k` blocks.
    pub fn max_original_colors(&self, k: usize) -> usize {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.iter().take(k).sum()
    }
}

pub fn merge_colors(k: &OrderedColoring, partition: &Partition) -> Result<OrderedColoring, ReductionError> {
    if partition.q() != k.q() {
        return Err(ReductionError::PaletteMismatch { partition: partition.q(), instance: k.q() });
    }
    Ok(k.recolored(partition.merged_q(), &partition.label)?)
}

pub fn merge_tournament_colors(
    t: &ColoredTournament,
    partition: &Partition,
) -> Result<ColoredTournament, ReductionError> {
    if partition.q() != t.q() {
        return Err(ReductionError::PaletteMismatch { partition: partition.q(), instance: t.q() });
    }
    Ok(t.recolored(partition.merged_q(), &partition.label)?)
}

/// `p = floor(q/(q-r))` blocks: `p - 1` consecutive blocks of `q - r` colors,
/// and a last block that also absorbs the `t = q - p(q-r)` leftover colors.
pub fn floor_reduction(q: usize, r: usize) -> Result<(usize, Partition), ReductionError> {
    if r == 0 || r >= q {
        return Err(ReductionError::NotApplicable { q, r });
    }
    let width = q - r;
    let p = q / width;
    if p < 2 {
        return Err(ReductionError::NotApplicable { q, r });
    }
    let mut blocks: Vec<Vec<Color>> = (0..p)
        .map(|j| (j * width + 1..=(j + 1) * width).map(|c| c as Color).collect())
        .collect();
    blocks.last_mut().unwrap().extend((p * width + 1..=q).map(|c| c as Color));
    Ok((p, Partition::new(blocks)?))
}
