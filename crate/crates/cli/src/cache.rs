//! Append-only JSON-lines store of solved values.

use std::fs::OpenOptions;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use exdir_core::Graph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "EXDIR_CACHE";
const DEFAULT_CACHE_FILE: &str = "exdir-cache.jsonl";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub graph_hash: String,
    pub family_spec: Option<String>,
    pub start: usize,
    pub f_d: u32,
    pub closed_min: usize,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// SHA-256 of the canonical edge list, hex encoded.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(g.to_edge_list().as_bytes()))
}

/// `SOURCE_DATE_EPOCH` when set, so runs can be made byte-identical.
pub fn now() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        return t;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn default_path() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE))
}

/// First record for `(hash, start)`. A missing file is an empty cache, and
/// lines that do not parse are skipped.
pub fn lookup(path: &Path, hash: &str, start: usize) -> io::Result<Option<ResultRecord>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    for line in BufReader::new(file).lines() {
        let line = line?;
        if let Ok(rec) = serde_json::from_str::<ResultRecord>(&line) {
            if rec.graph_hash == hash && rec.start == start {
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}

pub fn append(path: &Path, record: &ResultRecord) -> io::Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut line = serde_json::to_string(record).map_err(io::Error::other)?;
    line.push('\n');
    // One write per record keeps concurrent appenders from interleaving lines.
    file.write_all(line.as_bytes())
}
