//! Append-only JSON-lines result cache.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::record::RunRecord;

pub const CACHE_DIR_ENV: &str = "PTILE_CACHE_DIR";
const FILE_NAME: &str = "runs.jsonl";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    /// `$PTILE_CACHE_DIR`, else `~/.cache/ptile`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(PathBuf::from(dir));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("ptile"))
    }

    pub fn open(dir: &Path) -> Result<Cache, CacheError> {
        fs::create_dir_all(dir).map_err(|source| CacheError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        Ok(Cache {
            path: dir.join(FILE_NAME),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io_err(&self, source: io::Error) -> CacheError {
        CacheError::Io {
            path: self.path.clone(),
            source,
        }
    }

    /// The first stored record with this hash. Lines that fail to parse or
    /// whose hash does not match their own key fields are skipped.
    pub fn lookup(&self, hash: &str) -> Result<Option<RunRecord>, CacheError> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(self.io_err(e)),
        };
        file.lock_shared().map_err(|e| self.io_err(e))?;
        for (n, line) in BufReader::new(&file).lines().enumerate() {
            let line = line.map_err(|e| self.io_err(e))?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<RunRecord>(&line) {
                Ok(r) if !r.key_is_consistent() => {
                    log::warn!(
                        "{}:{}: record hash does not match its key, skipped",
                        self.path.display(),
                        n + 1
                    );
                }
                Ok(r) if r.hash == hash => return Ok(Some(r)),
                Ok(_) => {}
                Err(e) => log::warn!("{}:{}: corrupt cache line skipped ({e})", self.path.display(), n + 1),
            }
        }
        Ok(None)
    }

    pub fn store(&self, record: &RunRecord) -> Result<(), CacheError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io_err(e))?;
        file.lock().map_err(|e| self.io_err(e))?;
        let mut line = record.to_json_line();
        line.push('\n');
        file.write_all(line.as_bytes()).map_err(|e| self.io_err(e))?;
        file.flush().map_err(|e| self.io_err(e))
    }
}
