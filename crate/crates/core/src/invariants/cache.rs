//! Append-only on-disk store of computed TV values, one JSON file per key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::braid::ClosedBraidLink;
use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};
use crate::skein::{RootData, CONVENTION_TAG};

use super::tv::tv_link_complement;
use super::{ExactForm, InvariantOptions, NumberRepr};

pub const CACHE_ENV: &str = "QTV_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".qtv-cache";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub link: String,
    pub r: u32,
    pub coloring: Option<Vec<u32>>,
    pub backend: Backend,
    pub convention: String,
}

impl CacheKey {
    pub fn tv(link: &ClosedBraidLink, r: u32, backend: Backend) -> Self {
        CacheKey { link: link.braid.canonical(), r, coloring: None, backend, convention: CONVENTION_TAG.into() }
    }

    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("key serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub key: CacheKey,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rt_value: Option<NumberRepr>,
    pub tv_value: NumberRepr,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$QTV_CACHE`, or `./.qtv-cache`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_CACHE_DIR.into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn get(&self, key: &CacheKey) -> Result<Option<InvariantRecord>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let rec: InvariantRecord =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if &rec.key != key {
            return Err(Error::Cache(format!("{}: key mismatch", path.display())));
        }
        Ok(Some(rec))
    }

    /// Writes the record unless one already exists. Returns whether it was written.
    pub fn put(&self, rec: &InvariantRecord) -> Result<bool> {
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let path = self.path(&rec.key);
        if path.exists() {
            return Ok(false);
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        serde_json::to_writer_pretty(&mut tmp, rec).map_err(|e| Error::Cache(e.to_string()))?;
        tmp.write_all(b"\n").map_err(io)?;
        match tmp.persist_noclobber(&path) {
            Ok(_) => Ok(true),
            Err(e) if e.error.kind() == std::io::ErrorKind::AlreadyExists => Ok(false),
            Err(e) => Err(io(e.error)),
        }
    }
}

/// TV through the cache: returns the stored record when present, otherwise
/// computes and stores it. The flag tells whether the value came from disk.
pub fn cached_tv<S: Scalar + ExactForm>(
    cache: Option<&Cache>,
    link: &ClosedBraidLink,
    root: &RootData<S>,
    opts: &InvariantOptions,
) -> Result<(InvariantRecord, bool)> {
    let key = CacheKey::tv(link, root.r, S::backend());
    if let Some(c) = cache {
        if let Some(rec) = c.get(&key)? {
            return Ok((rec, true));
        }
    }
    let start = Instant::now();
    let tv = tv_link_complement(link, root, opts)?;
    let rec = InvariantRecord {
        key,
        rt_value: None,
        tv_value: NumberRepr::from_scalar(&tv),
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    if let Some(c) = cache {
        c.put(&rec)?;
    }
    Ok((rec, false))
}
