//! On-disk cache of the exact j q-expansion.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::series::{j_coefficients_uncached, QSeries};
use crate::error::{Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PLUSTRACE_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    kind: String,
    #[serde(rename = "N")]
    n: usize,
    coeffs: Vec<String>,
}

/// Directory resolution: explicit flag, then `PLUSTRACE_CACHE_DIR`, then the per-user cache path.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(p));
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(p).join("plustrace"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("plustrace"))
}

/// Disk-backed store of j coefficients keyed by N.
#[derive(Debug, Clone)]
pub struct JCache {
    dir: PathBuf,
}

impl JCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("j_qexp_{n}.json"))
    }

    /// Reads the entry for N; missing or malformed files count as a miss.
    pub fn load(&self, n: usize) -> Option<QSeries> {
        let text = fs::read_to_string(self.path_for(n)).ok()?;
        let f: CacheFile = serde_json::from_str(&text).ok()?;
        if f.kind != "j_qexp" || f.n != n || f.coeffs.len() != n + 2 {
            return None;
        }
        let coeffs = f.coeffs.iter().map(|s| s.parse::<BigInt>().ok()).collect::<Option<Vec<_>>>()?;
        Some(QSeries { leading_exponent: -1, coeffs })
    }

    /// Writes atomically through a temporary file in the same directory.
    pub fn store(&self, n: usize, s: &QSeries) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let f = CacheFile {
            kind: "j_qexp".into(),
            n,
            coeffs: s.coeffs.iter().map(|c| c.to_string()).collect(),
        };
        let body = serde_json::to_vec(&f).map_err(|e| Error::Cache(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        tmp.write_all(&body).map_err(|e| Error::Cache(e.to_string()))?;
        tmp.persist(self.path_for(n)).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }

    /// Cached j coefficients c(−1..=N), computing and storing on a miss.
    pub fn j_coefficients(&self, n: usize) -> Result<QSeries> {
        if let Some(s) = self.load(n) {
            return Ok(s);
        }
        let s = j_coefficients_uncached(n);
        self.store(n, &s)?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let c = JCache::new(dir.path());
        assert!(c.load(10).is_none());
        let s = c.j_coefficients(10).unwrap();
        assert_eq!(c.load(10).unwrap(), s);
        assert_eq!(s.coeff(1), BigInt::from(196884));
        fs::write(c.path_for(10), b"{\"kind\":\"j_qexp\",\"N\":10,\"coeffs\":[\"1\"").unwrap();
        assert!(c.load(10).is_none());
        assert_eq!(c.j_coefficients(10).unwrap(), s);
        assert!(c.load(11).is_none());
    }

    #[test]
    fn resolution_prefers_flag() {
        let p = resolve_cache_dir(Some(Path::new("/tmp/x"))).unwrap();
        assert_eq!(p, PathBuf::from("/tmp/x"));
    }
}
