//! JSON (and CSV) file formats. Vertices in files are 1-based; colors and
//! vector coordinates are written as they are.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{Color, ColorSet};
use crate::paths::{ColorConstraint, PathCertificate, PathMode};
use crate::pods::Packing;
use crate::reductions::Partition;
use crate::tournament::{ColoredTournament, OrderedColoring};
use crate::vectors::VectorFamily;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error("invalid content: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> FormatError {
    FormatError::Invalid(e.to_string())
}

fn to_zero_based(v: usize) -> Result<usize, FormatError> {
    v.checked_sub(1).ok_or_else(|| FormatError::Invalid("vertex 0 found; vertices are 1-based".into()))
}

fn triples(list: &[[usize; 3]]) -> Result<Vec<(usize, usize, Color)>, FormatError> {
    list.iter()
        .map(|&[u, v, c]| {
            let c = Color::try_from(c).map_err(|_| FormatError::Invalid(format!("color {c} too large")))?;
            Ok((to_zero_based(u)?, to_zero_based(v)?, c))
        })
        .collect()
}

/// `{"q","n","r","vectors"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub q: usize,
    pub n: u32,
    pub r: usize,
    pub vectors: Vec<Vec<u32>>,
}

impl From<&VectorFamily> for FamilyFile {
    fn from(f: &VectorFamily) -> Self {
        Self { q: f.q(), n: f.n(), r: f.r(), vectors: f.rows() }
    }
}

impl FamilyFile {
    pub fn into_family(self) -> Result<VectorFamily, FormatError> {
        VectorFamily::from_rows(self.q, self.n, self.r, self.vectors).map_err(invalid)
    }
}

/// One vector per line, coordinates separated by commas.
pub fn family_to_csv(f: &VectorFamily) -> String {
    f.rows()
        .iter()
        .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

/// Reads CSV rows; the dimension is the row length and `n` defaults to the
/// largest coordinate.
pub fn family_from_csv(text: &str, n: Option<u32>, r: usize) -> Result<VectorFamily, FormatError> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| FormatError::Csv { line: k + 1, reason: e.to_string() })?;
        rows.push(row);
    }
    let q = rows.first().map_or(0, Vec::len);
    let n = n.unwrap_or_else(|| rows.iter().flatten().copied().max().unwrap_or(1));
    VectorFamily::from_rows(q, n, r, rows).map_err(invalid)
}

/// `{"N","q","edges"}` with `[u, v, c]` meaning `u -> v` in color `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub q: usize,
    pub edges: Vec<[usize; 3]>,
}

impl From<&ColoredTournament> for TournamentFile {
    fn from(t: &ColoredTournament) -> Self {
        Self { n: t.n(), q: t.q(), edges: t.edges().into_iter().map(|(u, v, c)| [u + 1, v + 1, c as usize]).collect() }
    }
}

impl TournamentFile {
    pub fn into_tournament(self) -> Result<ColoredTournament, FormatError> {
        ColoredTournament::from_edges(self.n, self.q, &triples(&self.edges)?).map_err(invalid)
    }
}

/// `{"N","q","colors"}` with `[u, v, c]`, `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub q: usize,
    pub colors: Vec<[usize; 3]>,
}

impl From<&OrderedColoring> for ColoringFile {
    fn from(k: &OrderedColoring) -> Self {
        Self { n: k.n(), q: k.q(), colors: k.pairs().into_iter().map(|(u, v, c)| [u + 1, v + 1, c as usize]).collect() }
    }
}

impl ColoringFile {
    pub fn into_coloring(self) -> Result<OrderedColoring, FormatError> {
        OrderedColoring::from_pairs(self.n, self.q, &triples(&self.colors)?).map_err(invalid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeField {
    Monotone,
    Directed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintField {
    Avoid(Color),
    Allow(Vec<Color>),
}

/// `{"mode","constraint":{"avoid":i}|{"allow":[..]},"vertices"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFile {
    pub mode: ModeField,
    pub constraint: ConstraintField,
    pub vertices: Vec<usize>,
}

impl From<&PathCertificate> for PathFile {
    fn from(p: &PathCertificate) -> Self {
        Self {
            mode: match p.mode {
                PathMode::Monotone => ModeField::Monotone,
                PathMode::Directed => ModeField::Directed,
            },
            constraint: match p.constraint {
                ColorConstraint::Avoid(c) => ConstraintField::Avoid(c),
                ColorConstraint::Allowed(s) => ConstraintField::Allow(s.iter().collect()),
            },
            vertices: p.vertices.iter().map(|v| v + 1).collect(),
        }
    }
}

impl PathFile {
    pub fn into_certificate(self) -> Result<PathCertificate, FormatError> {
        let constraint = match self.constraint {
            ConstraintField::Avoid(c) => ColorConstraint::Avoid(c),
            ConstraintField::Allow(list) => {
                if list.iter().any(|&c| c == 0 || c as usize > crate::color::MAX_COLORS) {
                    return Err(FormatError::Invalid(format!("allowed colors {list:?} out of range")));
                }
                ColorConstraint::Allowed(list.into_iter().collect::<ColorSet>())
            }
        };
        Ok(PathCertificate {
            vertices: self.vertices.into_iter().map(to_zero_based).collect::<Result<_, _>>()?,
            mode: match self.mode {
                ModeField::Monotone => PathMode::Monotone,
                ModeField::Directed => PathMode::Directed,
            },
            constraint,
        })
    }
}

/// `{"blocks":[[colors..],..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub blocks: Vec<Vec<Color>>,
}

impl From<&Partition> for PartitionFile {
    fn from(p: &Partition) -> Self {
        Self { blocks: p.blocks().to_vec() }
    }
}

impl PartitionFile {
    pub fn into_partition(self) -> Result<Partition, FormatError> {
        Partition::new(self.blocks).map_err(invalid)
    }
}

/// `{"q","r","n","apices"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingFile {
    pub q: usize,
    pub r: usize,
    pub n: u32,
    pub apices: Vec<Vec<u32>>,
}

impl From<&Packing> for PackingFile {
    fn from(p: &Packing) -> Self {
        Self { q: p.q(), r: p.r(), n: p.n(), apices: p.pods().iter().map(|pod| pod.apex().coords().to_vec()).collect() }
    }
}

impl PackingFile {
    pub fn into_packing(self) -> Result<Packing, FormatError> {
        Packing::new(self.q, self.r, self.n, self.apices).map_err(invalid)
    }
}

/// Parses any of the file types above from JSON text.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

/// One compact JSON object per line.
pub fn to_json_lines<T: Serialize>(items: &[T]) -> String {
    items.iter().map(|x| serde_json::to_string(x).expect("serializable") + "\n").collect()
}
