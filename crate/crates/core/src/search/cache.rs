//! Append-only JSON-lines store of [`ExtremalRecord`]s keyed by `(kind, q, r, size)`.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use thiserror::Error;

use super::{ExtremalRecord, Kind, Status};

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "RAMSEY_PODS_CACHE";
pub const DEFAULT_CACHE_PATH: &str = "./cache.jsonl";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error("record for {0:?} rejected: {1}")]
    Rejected((Kind, usize, usize, usize), String),
}

pub struct Cache {
    path: PathBuf,
    /// serializes writers
    writer: Mutex<()>,
}

type Key = (Kind, usize, usize, usize);

/// Whether `new` should replace `old` under the rule that knowledge only grows.
fn supersedes(new: &ExtremalRecord, old: &ExtremalRecord) -> Result<bool, String> {
    match (old.status, new.status) {
        (Status::Exact, Status::Exact) if old.value != new.value => {
            Err(format!("exact value {} conflicts with cached exact value {}", new.value, old.value))
        }
        (Status::Exact, Status::Exact) => Ok(false),
        (Status::Exact, _) => Err("a bound cannot replace an exact record".into()),
        (_, Status::Exact) => Ok(true),
        // both one-sided, and of the same side since the kind fixes it
        _ => Ok(if new.kind.maximizes() { new.value > old.value } else { new.value < old.value }),
    }
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), writer: Mutex::new(()) }
    }

    /// Path from the environment, else the default.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_PATH), PathBuf::from))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: io::Error) -> CacheError {
        CacheError::Io { path: self.path.clone(), source }
    }

    /// Every stored record, later lines overriding earlier ones for the same key
    /// when they carry more knowledge. Each record is re-validated.
    fn load(&self) -> Result<BTreeMap<Key, ExtremalRecord>, CacheError> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(self.io(e)),
        };
        let mut out: BTreeMap<Key, ExtremalRecord> = BTreeMap::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| self.io(e))?;
            if line.trim().is_empty() {
                continue;
            }
            let corrupt = |reason: String| CacheError::Corrupt { line: i + 1, reason };
            let rec: ExtremalRecord = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
            rec.validate().map_err(corrupt)?;
            match out.get(&rec.key()) {
                Some(old) if !supersedes(&rec, old).map_err(corrupt)? => {}
                _ => {
                    out.insert(rec.key(), rec);
                }
            }
        }
        Ok(out)
    }

    pub fn get(&self, kind: Kind, q: usize, r: usize, size: usize) -> Result<Option<ExtremalRecord>, CacheError> {
        Ok(self.load()?.remove(&(kind, q, r, size)))
    }

    /// The best record for every stored key, in key order.
    pub fn records(&self) -> Result<Vec<ExtremalRecord>, CacheError> {
        Ok(self.load()?.into_values().collect())
    }

    /// Stores `record` unless the cache already knows at least as much.
    /// A bound offered over an exact record is an error.
    pub fn put(&self, record: &ExtremalRecord) -> Result<(), CacheError> {
        record.validate().map_err(|e| CacheError::Rejected(record.key(), e))?;
        let _guard = self.writer.lock().unwrap();
        if let Some(old) = self.load()?.get(&record.key()) {
            if !supersedes(record, old).map_err(|e| CacheError::Rejected(record.key(), e))? {
                return Ok(());
            }
        }
        let line = serde_json::to_string(record).expect("records serialize");
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(|e| self.io(e))?;
        writeln!(file, "{line}").map_err(|e| self.io(e))
    }

    /// Rewrites the file with one record per key.
    pub fn compact(&self) -> Result<usize, CacheError> {
        let _guard = self.writer.lock().unwrap();
        let records = self.load()?;
        let tmp = self.path.with_extension("jsonl.tmp");
        let mut text = String::new();
        for rec in records.values() {
            text.push_str(&serde_json::to_string(rec).expect("records serialize"));
            text.push('\n');
        }
        fs::write(&tmp, text).map_err(|e| self.io(e))?;
        fs::rename(&tmp, &self.path).map_err(|e| self.io(e))?;
        Ok(records.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Witness;

    fn exact_f_2_1_2() -> ExtremalRecord {
        ExtremalRecord {
            kind: Kind::IncreasingSequence,
            q: 2,
            r: 1,
            size: 2,
            value: 4,
            status: Status::Exact,
            witness: Witness::Family { vectors: vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]] },
            nodes_explored: 7,
            wall_ms: 0,
        }
    }

    #[test]
    fn empty_cache_is_absent() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c.jsonl"));
        assert!(cache.get(Kind::IncreasingSequence, 2, 1, 2).unwrap().is_none());
    }

    #[test]
    fn put_then_get_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c.jsonl"));
        let rec = exact_f_2_1_2();
        cache.put(&rec).unwrap();
        assert_eq!(cache.get(Kind::IncreasingSequence, 2, 1, 2).unwrap(), Some(rec.clone()));
        // a repeat is a no-op
        cache.put(&rec).unwrap();
        assert_eq!(cache.compact().unwrap(), 1);
        assert_eq!(cache.get(Kind::IncreasingSequence, 2, 1, 2).unwrap(), Some(rec));
    }

    #[test]
    fn bound_never_replaces_exact() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c.jsonl"));
        let rec = exact_f_2_1_2();
        cache.put(&rec).unwrap();
        let mut bound = rec.clone();
        bound.status = Status::LowerBound;
        bound.value = 2;
        bound.witness = Witness::Family { vectors: vec![vec![1, 1], vec![2, 2]] };
        assert!(matches!(cache.put(&bound), Err(CacheError::Rejected(..))));
        assert_eq!(cache.get(Kind::IncreasingSequence, 2, 1, 2).unwrap().unwrap().status, Status::Exact);
    }

    #[test]
    fn better_bounds_win() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c.jsonl"));
        let mut weak = exact_f_2_1_2();
        weak.status = Status::LowerBound;
        weak.value = 2;
        weak.witness = Witness::Family { vectors: vec![vec![1, 1], vec![2, 2]] };
        cache.put(&weak).unwrap();
        let mut strong = weak.clone();
        strong.value = 3;
        strong.witness = Witness::Family { vectors: vec![vec![1, 1], vec![1, 2], vec![2, 2]] };
        cache.put(&strong).unwrap();
        cache.put(&weak).unwrap();
        assert_eq!(cache.get(Kind::IncreasingSequence, 2, 1, 2).unwrap().unwrap().value, 3);
    }

    #[test]
    fn corrupt_entries_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut rec = exact_f_2_1_2();
        rec.value = 5;
        fs::write(&path, serde_json::to_string(&rec).unwrap() + "\n").unwrap();
        let cache = Cache::new(&path);
        assert!(matches!(cache.get(Kind::IncreasingSequence, 2, 1, 2), Err(CacheError::Corrupt { line: 1, .. })));
        fs::write(&path, "{not json\n").unwrap();
        assert!(cache.get(Kind::IncreasingSequence, 2, 1, 2).is_err());
    }
}
