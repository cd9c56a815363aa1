use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{compute_table, CharacterError, CharacterTable, ClassFunction, Provenance};
use crate::cyclotomic::{context, SerializedCyc};
use crate::group::Group;
use crate::CycNum;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "CHARSQUARE_CACHE";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: String,
    spec: String,
    digest: String,
    conductor: u64,
    degrees: Vec<i64>,
    provenance: Provenance,
    values: Vec<Vec<SerializedCyc>>,
}

/// How a table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// A file existed but was stale or failed verification; it was rewritten.
    Rejected,
}

/// On-disk table cache, one JSON file per (version, spec, class digest).
#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// The cache named by `CHARSQUARE_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(TableCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(spec: &str, group: &Group) -> String {
        let mut h = Sha256::new();
        for part in [crate::VERSION, spec, &group.classes().digest()] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn path_for(&self, spec: &str, group: &Group) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(spec, group)))
    }

    /// Loads a verified table, or computes and stores one.
    pub fn load_or_compute(&self, spec: &str, group: &Arc<Group>) -> Result<(CharacterTable, CacheOutcome), CharacterError> {
        let path = self.path_for(spec, group);
        let mut outcome = CacheOutcome::Miss;
        if path.exists() {
            match self.load(&path, spec, group) {
                Ok(t) => return Ok((t, CacheOutcome::Hit)),
                Err(_) => outcome = CacheOutcome::Rejected,
            }
        }
        let table = compute_table(group)?;
        self.store(&path, spec, &table)?;
        Ok((table, outcome))
    }

    fn load(&self, path: &Path, spec: &str, group: &Arc<Group>) -> Result<CharacterTable, CharacterError> {
        let text = fs::read_to_string(path).map_err(|e| CharacterError::Cache(e.to_string()))?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| CharacterError::Cache(e.to_string()))?;
        if file.version != crate::VERSION || file.spec != spec || file.digest != group.classes().digest() {
            return Err(CharacterError::Cache("stale entry".into()));
        }
        if file.conductor != group.exponent() {
            return Err(CharacterError::Cache("conductor mismatch".into()));
        }
        let ctx = context(file.conductor)?;
        let rows = file
            .values
            .iter()
            .map(|row| {
                let vals = row.iter().map(|s| CycNum::from_serialized(&ctx, s)).collect::<Result<Vec<_>, _>>()?;
                ClassFunction::new(group, vals)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let table = CharacterTable::from_parts(Arc::clone(group), ctx, rows, file.provenance)?;
        if table.degrees() != file.degrees.as_slice() {
            return Err(CharacterError::Cache("degree list mismatch".into()));
        }
        table.verify()?;
        Ok(table)
    }

    fn store(&self, path: &Path, spec: &str, table: &CharacterTable) -> Result<(), CharacterError> {
        let io = |e: std::io::Error| CharacterError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let file = CacheFile {
            version: crate::VERSION.to_string(),
            spec: spec.to_string(),
            digest: table.group().classes().digest(),
            conductor: table.conductor(),
            degrees: table.degrees().to_vec(),
            provenance: table.provenance(),
            values: table
                .irreducibles()
                .iter()
                .map(|chi| chi.values().iter().map(CycNum::to_serialized).collect())
                .collect(),
        };
        let text = serde_json::to_string(&file).map_err(|e| CharacterError::Cache(e.to_string()))?;
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}
