//! On-disk cache of component bases, one JSON file per content.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qshuffle::bimodule::{BasisCache, StoredBasis};
use qshuffle::{CartanDatum, Content, Regime, WeightSpec};

/// Bump when the stored basis convention changes; older entries become misses.
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: String,
    content: String,
    pivot_words: Vec<String>,
    vectors: Vec<Vec<(String, String)>>,
}

#[derive(Debug, Deserialize)]
struct VersionOnly {
    version: u32,
}

/// Stores bases under `dir`, keyed by braiding data and content.
pub struct FileCache {
    dir: PathBuf,
    prefix: String,
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
    pub invalid: AtomicUsize,
}

impl FileCache {
    pub fn new(dir: &Path, datum: &CartanDatum, lambda: &WeightSpec, regime: Regime) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        let prefix = format!(
            "cartan={:?};d={:?};lambda={};regime={regime}",
            datum.cartan(),
            datum.symmetrizer(),
            lambda.label()
        )
        .replace(' ', "");
        Ok(FileCache {
            dir: dir.to_path_buf(),
            prefix,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            invalid: AtomicUsize::new(0),
        })
    }

    fn key(&self, content: &Content) -> String {
        format!("{};content={}", self.prefix, content.key())
    }

    pub fn path(&self, content: &Content) -> PathBuf {
        let h = hex::encode(Sha256::digest(self.key(content).as_bytes()));
        self.dir.join(format!("{}.json", &h[..32]))
    }

    fn warn(&self, content: &Content, why: &str) {
        eprintln!("warning: cache entry for {} ignored: {why}", content.key());
    }

    fn try_load(&self, content: &Content) -> Result<Option<StoredBasis>, String> {
        let path = self.path(content);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(format!("unreadable: {e}")),
        };
        match serde_json::from_str::<VersionOnly>(&text) {
            Ok(v) if v.version != CACHE_VERSION => return Ok(None),
            Ok(_) => {}
            Err(e) => return Err(format!("corrupt: {e}")),
        }
        let entry: Entry = serde_json::from_str(&text).map_err(|e| format!("corrupt: {e}"))?;
        if entry.key != self.key(content) {
            return Err("key does not match".into());
        }
        Ok(Some(StoredBasis {
            content: entry.content,
            pivot_words: entry.pivot_words,
            vectors: entry.vectors,
        }))
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl BasisCache for FileCache {
    fn load(&self, content: &Content) -> Option<StoredBasis> {
        match self.try_load(content) {
            Ok(Some(b)) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(b)
            }
            Ok(None) => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
            Err(why) => {
                self.invalid.fetch_add(1, Ordering::Relaxed);
                self.warn(content, &format!("{why}; recomputing"));
                None
            }
        }
    }

    fn store(&self, content: &Content, basis: &StoredBasis) {
        let entry = Entry {
            version: CACHE_VERSION,
            key: self.key(content),
            content: basis.content.clone(),
            pivot_words: basis.pivot_words.clone(),
            vectors: basis.vectors.clone(),
        };
        let bytes = serde_json::to_vec_pretty(&entry).expect("entry serializes");
        let path = self.path(content);
        if let Err(e) = self.write_atomic(&path, &bytes) {
            eprintln!("warning: cannot write cache entry {}: {e}", path.display());
        }
    }

    fn report_invalid(&self, content: &Content, reason: &str) {
        self.hits.fetch_sub(1, Ordering::Relaxed);
        self.invalid.fetch_add(1, Ordering::Relaxed);
        self.warn(content, &format!("{reason}; recomputing"));
    }
}
