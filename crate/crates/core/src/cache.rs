//! On-disk cache of `π` tables, one JSON document per Lie type.
//!
//! Files are written to a temporary file in the same directory and renamed
//! into place, so a concurrent reader sees either the old document or the
//! new one. The serialization is canonical (ascending exponents, fixed key
//! order), so identical tables produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, LieType};
use crate::error::{Error, Result};
use crate::mq::PiTable;
use crate::qpoly::LaurentPoly;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheDocument {
    pub format_version: u32,
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub period: i64,
    pub pi: Vec<Vec<Vec<[i64; 3]>>>,
}

impl CacheDocument {
    pub fn from_table(t: &PiTable) -> Result<Self> {
        let pi = t
            .pi
            .iter()
            .map(|row| row.iter().map(|p| p.to_triples()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CacheDocument {
            format_version: FORMAT_VERSION,
            lie_type: t.lie_type,
            period: t.period,
            pi,
        })
    }

    pub fn into_table(self) -> Result<PiTable> {
        let pi = self
            .pi
            .iter()
            .map(|row| row.iter().map(|t| LaurentPoly::from_triples(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PiTable::from_polys(self.lie_type, self.period, pi)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// One cache file as seen by [`Cache::entries`].
#[derive(Clone, Debug, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub lie_type: Option<LieType>,
    pub format_version: Option<u32>,
    pub bytes: u64,
    pub valid: bool,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, t: LieType) -> PathBuf {
        self.dir.join(format!("mq-v{FORMAT_VERSION}-{t}.json"))
    }

    /// Reads a cached table; `Ok(None)` when absent, an error when unreadable or stale.
    pub fn load(&self, cd: &CartanData) -> Result<Option<PiTable>> {
        let path = self.path_for(cd.lie_type);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let doc: CacheDocument =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if doc.format_version != FORMAT_VERSION || doc.lie_type != cd.lie_type || doc.period != cd.period {
            return Err(Error::Cache(format!("{}: header does not match {}", path.display(), cd.lie_type)));
        }
        if doc.pi.len() != cd.rank() || doc.pi.iter().any(|r| r.len() != cd.rank()) {
            return Err(Error::Cache(format!("{}: wrong matrix size", path.display())));
        }
        doc.into_table().map(Some)
    }

    pub fn store(&self, table: &PiTable) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let json = CacheDocument::from_table(table)?.to_json()?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(json.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(table.lie_type)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    /// Uses the cached table when it is intact, otherwise recomputes and rewrites it.
    pub fn load_or_compute(&self, cd: &CartanData) -> Result<PiTable> {
        if let Ok(Some(t)) = self.load(cd) {
            return Ok(t);
        }
        let t = PiTable::compute(cd)?;
        self.store(&t)?;
        Ok(t)
    }

    pub fn entries(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for entry in rd {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if !(name.starts_with("mq-v") && name.ends_with(".json")) {
                continue;
            }
            let bytes = entry.metadata()?.len();
            let doc: Option<CacheDocument> =
                fs::read_to_string(entry.path()).ok().and_then(|t| serde_json::from_str(&t).ok());
            out.push(CacheEntry {
                file: name,
                lie_type: doc.as_ref().map(|d| d.lie_type),
                format_version: doc.as_ref().map(|d| d.format_version),
                bytes,
                valid: doc.is_some(),
            });
        }
        out.sort_by(|a, b| a.file.cmp(&b.file));
        Ok(out)
    }

    /// Removes every cache file; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let entries = self.entries()?;
        for e in &entries {
            fs::remove_file(self.dir.join(&e.file))?;
        }
        Ok(entries.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::cartan_data;

    #[test]
    fn round_trip_is_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let cd = cartan_data("G2".parse().unwrap());
        let fresh = PiTable::compute(&cd).unwrap();
        cache.store(&fresh).unwrap();
        let first = fs::read(cache.path_for(cd.lie_type)).unwrap();
        let loaded = cache.load(&cd).unwrap().unwrap();
        assert_eq!(loaded, fresh);
        cache.store(&loaded).unwrap();
        assert_eq!(fs::read(cache.path_for(cd.lie_type)).unwrap(), first);
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with(r#"{"format_version":1,"type":"G2","period":24,"pi":[[[["#), "{text}");
    }

    #[test]
    fn corrupt_file_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let cd = cartan_data("A2".parse().unwrap());
        fs::write(cache.path_for(cd.lie_type), "{not json").unwrap();
        assert!(matches!(cache.load(&cd), Err(Error::Cache(_))));
        let t = cache.load_or_compute(&cd).unwrap();
        assert_eq!(cache.load(&cd).unwrap().unwrap(), t);
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let a2 = cartan_data("A2".parse().unwrap());
        let a3 = cartan_data("A3".parse().unwrap());
        cache.store(&PiTable::compute(&a2).unwrap()).unwrap();
        fs::copy(cache.path_for(a2.lie_type), cache.path_for(a3.lie_type)).unwrap();
        assert!(matches!(cache.load(&a3), Err(Error::Cache(_))));
    }

    #[test]
    fn inspect_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        assert!(cache.entries().unwrap().is_empty());
        for t in ["A1", "B2"] {
            cache.load_or_compute(&cartan_data(t.parse().unwrap())).unwrap();
        }
        let entries = cache.entries().unwrap();
        assert_eq!(entries.len(), 2);
        assert!(entries.iter().all(|e| e.valid));
        assert_eq!(cache.clear().unwrap(), 2);
        assert!(cache.entries().unwrap().is_empty());
    }
}
