//! Content-addressed on-disk cache of report documents.
//!
//! Keys hash the canonical complex document, the operation name and its parameters.
//! Entries are written to a temporary file and renamed into place, so readers never see
//! a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::ComplexDocument;
use crate::report::ReportDocument;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_VAR: &str = "MACX_CACHE_DIR";

/// Hex SHA-256 over the canonical document, the operation and the parameters.
pub fn cache_key(doc: &ComplexDocument, operation: &str, parameters: &Value) -> Result<String> {
    let canonical = doc.canonical()?;
    let mut h = Sha256::new();
    for part in [
        canonical.to_json(),
        operation.to_string(),
        parameters.to_string(),
    ] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    Ok(hex::encode(h.finalize()))
}

#[derive(Clone, Debug)]
pub struct ResultStore {
    dir: PathBuf,
}

impl ResultStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss; `CorruptCacheEntry` when the entry exists but does not parse.
    pub fn load(&self, key: &str) -> Result<Option<ReportDocument>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        serde_json::from_str(&text)
            .map(Some)
            .map_err(|_| Error::CorruptCacheEntry(path.display().to_string()))
    }

    /// Writes the report without its timing block.
    pub fn store(&self, key: &str, report: &ReportDocument) -> Result<()> {
        let path = self.path(key);
        let parent = path.parent().expect("entries live in a subdirectory");
        fs::create_dir_all(parent)?;
        let stored = ReportDocument {
            timing: None,
            ..report.clone()
        };
        let tmp = parent.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(stored.to_json().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Cached report for `key`, or the result of `compute` stored under it. Corrupt
    /// entries are recomputed and overwritten. The flag is true on a hit.
    pub fn get_or_compute<F>(&self, key: &str, compute: F) -> Result<(ReportDocument, bool)>
    where
        F: FnOnce() -> Result<ReportDocument>,
    {
        match self.load(key) {
            Ok(Some(hit)) => return Ok((hit, true)),
            Ok(None) | Err(Error::CorruptCacheEntry(_)) => {}
            Err(e) => return Err(e),
        }
        let report = compute()?;
        self.store(key, &report)?;
        Ok((report, false))
    }
}
