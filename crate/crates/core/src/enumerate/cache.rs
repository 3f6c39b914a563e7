//! On-disk cache of search reports, one JSON file per `(m, p, q)`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::search::{extremal_search, ExtremalReport, DETECTOR_VERSION};
use crate::error::GraphError;

#[derive(Serialize, Deserialize)]
struct Entry {
    detector_version: String,
    report: ExtremalReport,
}

/// What a lookup found.
#[derive(Debug)]
pub enum CacheLookup {
    Hit(ExtremalReport),
    Miss,
    /// Written by a different detector version.
    Stale(String),
    /// Present but unreadable; the message says why.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct SearchCache {
    dir: PathBuf,
    version: String,
}

impl SearchCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SearchCache {
            dir: dir.into(),
            version: DETECTOR_VERSION.to_string(),
        }
    }

    /// A cache that stamps entries with a custom version string.
    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        SearchCache {
            dir: dir.into(),
            version: version.to_string(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, m: usize, p: usize, q: usize) -> PathBuf {
        self.dir.join(format!("search_m{m}_p{p}_q{q}.json"))
    }

    pub fn lookup(&self, m: usize, p: usize, q: usize) -> CacheLookup {
        let path = self.path_for(m, p, q);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return CacheLookup::Miss,
            Err(e) => return CacheLookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match serde_json::from_str::<Entry>(&text) {
            Ok(entry) if entry.detector_version != self.version => CacheLookup::Stale(entry.detector_version),
            Ok(entry) => CacheLookup::Hit(entry.report),
            Err(e) => CacheLookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    /// The stored report, if present, readable and current.
    pub fn get(&self, m: usize, p: usize, q: usize) -> Option<ExtremalReport> {
        match self.lookup(m, p, q) {
            CacheLookup::Hit(r) => Some(r),
            CacheLookup::Corrupt(why) => {
                log::warn!("ignoring corrupt cache entry {why}");
                None
            }
            CacheLookup::Stale(v) => {
                log::info!("cache entry from detector {v} is stale");
                None
            }
            CacheLookup::Miss => None,
        }
    }

    pub fn put(&self, p: usize, q: usize, report: &ExtremalReport) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(report.m, p, q);
        let entry = Entry {
            detector_version: self.version.clone(),
            report: report.clone(),
        };
        let text = serde_json::to_string_pretty(&entry).map_err(io::Error::other)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

/// Cached search: a hit is returned as stored, anything else is recomputed and written back.
pub fn cached_search(
    cache: Option<&SearchCache>,
    m: usize,
    (p, q): (usize, usize),
    jobs: usize,
) -> Result<ExtremalReport, GraphError> {
    let (p, q) = crate::theta::normalize_lengths(p, q)?;
    if let Some(hit) = cache.and_then(|c| c.get(m, p, q)) {
        return Ok(hit);
    }
    let report = extremal_search(m, (p, q), jobs)?;
    if let Some(c) = cache {
        if let Err(e) = c.put(p, q, &report) {
            log::warn!("could not write cache entry: {e}");
        }
    }
    Ok(report)
}
