//! On-disk result cache: one JSON file per (command, n, format version).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use tempfile::NamedTempFile;

/// Bumped whenever a cached document's shape changes.
pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GENUS_RANGE_CACHE";

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, command: &str, n: usize) -> PathBuf {
        self.dir
            .join(format!("{command}-n{n}-v{FORMAT_VERSION}.json"))
    }

    pub fn load<T: DeserializeOwned>(&self, command: &str, n: usize) -> io::Result<Option<T>> {
        let path = self.path(command, n);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        serde_json::from_str(&text)
            .map(Some)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    /// Writes through a temporary file and renames it into place, so readers
    /// never observe a partial document.
    pub fn store<T: Serialize>(&self, command: &str, n: usize, value: &T) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(command, n)).map_err(|e| e.error)?;
        Ok(())
    }
}
