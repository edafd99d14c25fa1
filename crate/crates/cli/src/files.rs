//! Reading instance files. Failures here are parse errors, reported apart
//! from certificate violations.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;

use ramsey_pods::formats::{family_from_csv, from_json, ColoringFile, FamilyFile, PackingFile, TournamentFile};
use ramsey_pods::pods::Packing;
use ramsey_pods::tournament::{ColoredTournament, OrderedColoring};
use ramsey_pods::vectors::VectorFamily;

#[derive(Debug)]
pub struct ParseFailure(pub String);

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseFailure {}

fn fail(path: &Path, why: impl fmt::Display) -> ParseFailure {
    ParseFailure(format!("{}: {why}", path.display()))
}

fn read_text(path: &Path) -> Result<String, ParseFailure> {
    std::fs::read_to_string(path).map_err(|e| fail(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, ParseFailure> {
    from_json(&read_text(path)?).map_err(|e| fail(path, e))
}

pub fn read_tournament(path: &Path) -> Result<ColoredTournament, ParseFailure> {
    read_json::<TournamentFile>(path)?.into_tournament().map_err(|e| fail(path, e))
}

pub fn read_coloring(path: &Path) -> Result<OrderedColoring, ParseFailure> {
    read_json::<ColoringFile>(path)?.into_coloring().map_err(|e| fail(path, e))
}

pub fn read_packing(path: &Path) -> Result<Packing, ParseFailure> {
    read_json::<PackingFile>(path)?.into_packing().map_err(|e| fail(path, e))
}

/// JSON family, or CSV (by extension) with threshold `r`, default 1.
pub fn read_family(path: &Path, r: Option<usize>) -> Result<VectorFamily, ParseFailure> {
    if path.extension().is_some_and(|e| e == "csv") {
        return family_from_csv(&read_text(path)?, None, r.unwrap_or(1)).map_err(|e| fail(path, e));
    }
    let mut file: FamilyFile = read_json(path)?;
    if let Some(r) = r {
        file.r = r;
    }
    file.into_family().map_err(|e| fail(path, e))
}

pub enum Instance {
    Tournament(ColoredTournament),
    Coloring(OrderedColoring),
}

/// A tournament file (with `edges`) or an ordered coloring (with `colors`).
pub fn read_path_instance(path: &Path) -> Result<Instance, ParseFailure> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("edges").is_some() {
        read_tournament(path).map(Instance::Tournament)
    } else if value.get("colors").is_some() {
        read_coloring(path).map(Instance::Coloring)
    } else {
        Err(fail(path, "expected a tournament (\"edges\") or an ordered coloring (\"colors\")"))
    }
}

pub fn write_output(out: Option<&PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}
