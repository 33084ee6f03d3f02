//! Persistent character-row cache: one JSON file per (degree, shape) row.
//!
//! The cache is write-through and purely an accelerator. Any file that is
//! unreadable, fails validation, or carries the wrong format version is
//! ignored with a warning and the row is recomputed, so cached and
//! uncached runs always produce bit-identical results.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::character::ClassVector;
use crate::partition::Partition;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable consulted for the default cache directory.
pub const CACHE_ENV_VAR: &str = "MATINV_CACHE";

#[derive(Serialize, Deserialize)]
struct RowFile {
    version: u32,
    lambda: Vec<u32>,
    entries: Vec<RowEntry>,
}

#[derive(Serialize, Deserialize)]
struct RowEntry {
    rho: Vec<u32>,
    value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub files: u64,
    pub bytes: u64,
}

/// A directory of cached character rows.
#[derive(Debug, Clone)]
pub struct RowCache {
    dir: PathBuf,
}

impl RowCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        RowCache { dir: dir.into() }
    }

    /// Cache from the `MATINV_CACHE` environment variable, when set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV_VAR).map(|dir| RowCache::new(PathBuf::from(dir)))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn file_name(lambda: &Partition) -> String {
        let parts = lambda
            .parts()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join("_");
        format!("charrow-d{}-{}.json", lambda.size(), parts)
    }

    /// Loads a row, or `None` when it is absent or invalid.
    pub fn load(&self, lambda: &Partition) -> Option<ClassVector> {
        let path = self.dir.join(Self::file_name(lambda));
        let text = fs::read_to_string(&path).ok()?;
        match parse_row(&text, lambda) {
            Ok(row) => Some(row),
            Err(reason) => {
                log::warn!(
                    "ignoring cache file {}: {reason}; recomputing",
                    path.display()
                );
                None
            }
        }
    }

    /// Writes a row; failures only log a warning.
    pub fn store(&self, lambda: &Partition, row: &ClassVector) {
        if let Err(err) = self.try_store(lambda, row) {
            log::warn!(
                "could not write cache row for {lambda} under {}: {err}",
                self.dir.display()
            );
        }
    }

    fn try_store(&self, lambda: &Partition, row: &ClassVector) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = RowFile {
            version: CACHE_FORMAT_VERSION,
            lambda: lambda.parts().to_vec(),
            entries: row
                .entries()
                .map(|(rho, value)| RowEntry {
                    rho: rho.parts().to_vec(),
                    value: value.to_string(),
                })
                .collect(),
        };
        let text = serde_json::to_string(&file)?;
        let final_path = self.dir.join(Self::file_name(lambda));
        let tmp_path = self
            .dir
            .join(format!("{}.tmp{}", Self::file_name(lambda), std::process::id()));
        fs::write(&tmp_path, text)?;
        fs::rename(&tmp_path, &final_path)
    }

    /// Number of row files and their total size.
    pub fn stats(&self) -> std::io::Result<CacheStats> {
        let mut stats = CacheStats { files: 0, bytes: 0 };
        let entries = match fs::read_dir(&self.dir) {
            Ok(entries) => entries,
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(stats),
            Err(err) => return Err(err),
        };
        for entry in entries {
            let entry = entry?;
            if is_row_file(&entry.file_name().to_string_lossy()) {
                stats.files += 1;
                stats.bytes += entry.metadata()?.len();
            }
        }
        Ok(stats)
    }

    /// Removes all row files; returns how many were deleted.
    pub fn clear(&self) -> std::io::Result<u64> {
        let mut removed = 0;
        let entries = match fs::read_dir(&self.dir) {
            Ok(entries) => entries,
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(err) => return Err(err),
        };
        for entry in entries {
            let entry = entry?;
            if is_row_file(&entry.file_name().to_string_lossy()) {
                fs::remove_file(entry.path())?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

fn is_row_file(name: &str) -> bool {
    name.starts_with("charrow-") && name.ends_with(".json")
}

fn parse_row(text: &str, lambda: &Partition) -> std::result::Result<ClassVector, String> {
    let file: RowFile =
        serde_json::from_str(text).map_err(|e| format!("not valid row JSON: {e}"))?;
    if file.version != CACHE_FORMAT_VERSION {
        return Err(format!(
            "format version {} (expected {CACHE_FORMAT_VERSION})",
            file.version
        ));
    }
    if file.lambda != lambda.parts() {
        return Err("stored shape does not match the file name".into());
    }
    let mut values = BTreeMap::new();
    for entry in &file.entries {
        let rho = Partition::new(entry.rho.clone());
        if rho.parts() != entry.rho.as_slice() {
            return Err(format!("cycle type {:?} is not canonical", entry.rho));
        }
        let value = BigInt::from_str(&entry.value)
            .map_err(|e| format!("bad integer {:?}: {e}", entry.value))?;
        if values.insert(rho, value).is_some() {
            return Err(format!("duplicate cycle type {:?}", entry.rho));
        }
    }
    let row = ClassVector::from_map(lambda.size(), values)
        .map_err(|e| format!("wrong key set: {e}"))?;
    // Semantic validation: the identity-class value must match the
    // hook-length dimension.
    let identity = Partition::column(lambda.size());
    if row.value(&identity) != Some(&lambda.irrep_dimension()) {
        return Err("identity value disagrees with the hook-length dimension".into());
    }
    Ok(row)
}
