use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use serde::Serialize;

use crate::laurent::LaurentVZ;

pub const CACHE_FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"G2HC";
const FILE_NAME: &str = "homfly-v1.bin";

/// Shared memo table from canonical diagram codes to framed values, with
/// optional persistence to a directory.
#[derive(Default)]
pub struct MemoCache {
    map: DashMap<Vec<u8>, LaurentVZ>,
    hits: AtomicU64,
    misses: AtomicU64,
    bytes: AtomicU64,
    dir: Option<PathBuf>,
    discarded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
    pub approx_bytes: u64,
    pub file: Option<PathBuf>,
    pub file_bytes: Option<u64>,
    /// Set when an unreadable cache file was thrown away on load.
    pub discarded_corrupt_file: bool,
}

fn entry_bytes(k: &[u8], v: &LaurentVZ) -> u64 {
    (k.len() + 48 * v.len() + 64) as u64
}

impl MemoCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens a cache backed by `dir`, loading any previous contents. A file
    /// with a wrong header or a truncated record is ignored and replaced on
    /// the next save.
    pub fn open(dir: impl AsRef<Path>) -> io::Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut c = Self { dir: Some(dir.clone()), ..Self::default() };
        let path = dir.join(FILE_NAME);
        if path.exists() {
            let mut buf = Vec::new();
            fs::File::open(&path)?.read_to_end(&mut buf)?;
            match decode(&buf) {
                Some(rows) => {
                    for (k, v) in rows {
                        c.insert(k, v);
                    }
                }
                None => c.discarded = true,
            }
        }
        Ok(c)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get(&self, key: &[u8]) -> Option<LaurentVZ> {
        match self.map.get(key) {
            Some(v) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v.clone())
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn insert(&self, key: Vec<u8>, value: LaurentVZ) {
        let b = entry_bytes(&key, &value);
        if self.map.insert(key, value).is_none() {
            self.bytes.fetch_add(b, Ordering::Relaxed);
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn approx_bytes(&self) -> u64 {
        self.bytes.load(Ordering::Relaxed)
    }

    pub fn stats(&self) -> CacheStats {
        let file = self.dir.as_ref().map(|d| d.join(FILE_NAME));
        let file_bytes = file.as_ref().and_then(|f| fs::metadata(f).ok()).map(|m| m.len());
        CacheStats {
            entries: self.map.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            approx_bytes: self.approx_bytes(),
            file,
            file_bytes,
            discarded_corrupt_file: self.discarded,
        }
    }

    /// Writes all entries to the backing file through a temporary file and
    /// a rename. Does nothing for an in-memory cache.
    pub fn save(&self) -> io::Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let mut rows: Vec<(Vec<u8>, LaurentVZ)> = self.map.iter().map(|e| (e.key().clone(), e.value().clone())).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let buf = encode(&rows);
        let tmp = dir.join(format!("{FILE_NAME}.tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&buf)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, dir.join(FILE_NAME))
    }

    /// Drops every entry and deletes the backing file.
    pub fn clear(&self) -> io::Result<()> {
        self.map.clear();
        self.bytes.store(0, Ordering::Relaxed);
        if let Some(dir) = &self.dir {
            match fs::remove_file(dir.join(FILE_NAME)) {
                Err(e) if e.kind() != io::ErrorKind::NotFound => return Err(e),
                _ => {}
            }
        }
        Ok(())
    }
}

fn encode(rows: &[(Vec<u8>, LaurentVZ)]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&CACHE_FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(rows.len() as u64).to_le_bytes());
    for (k, v) in rows {
        let val = serde_json::to_vec(v).expect("polynomial serializes");
        out.extend_from_slice(&(k.len() as u32).to_le_bytes());
        out.extend_from_slice(k);
        out.extend_from_slice(&(val.len() as u32).to_le_bytes());
        out.extend_from_slice(&val);
    }
    out
}

fn decode(buf: &[u8]) -> Option<Vec<(Vec<u8>, LaurentVZ)>> {
    let mut pos = 0;
    let mut take = |n: usize| -> Option<&[u8]> {
        let s = buf.get(pos..pos + n)?;
        pos += n;
        Some(s)
    };
    if take(4)? != MAGIC {
        return None;
    }
    if u32::from_le_bytes(take(4)?.try_into().ok()?) != CACHE_FORMAT_VERSION {
        return None;
    }
    let count = u64::from_le_bytes(take(8)?.try_into().ok()?);
    let mut rows = Vec::new();
    for _ in 0..count {
        let kl = u32::from_le_bytes(take(4)?.try_into().ok()?) as usize;
        let k = take(kl)?.to_vec();
        let vl = u32::from_le_bytes(take(4)?.try_into().ok()?) as usize;
        let v: LaurentVZ = serde_json::from_slice(take(vl)?).ok()?;
        rows.push((k, v));
    }
    if pos != buf.len() {
        return None;
    }
    Some(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_across_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let c = MemoCache::open(dir.path()).unwrap();
        c.insert(vec![1, 2, 3], LaurentVZ::delta());
        c.save().unwrap();
        let c2 = MemoCache::open(dir.path()).unwrap();
        assert_eq!(c2.get(&[1, 2, 3]), Some(LaurentVZ::delta()));
        assert_eq!(c2.stats().hits, 1);
    }

    #[test]
    fn corrupt_file_discarded() {
        let dir = tempfile::tempdir().unwrap();
        let c = MemoCache::open(dir.path()).unwrap();
        c.insert(vec![9], LaurentVZ::one());
        c.save().unwrap();
        let path = dir.path().join(FILE_NAME);
        let mut bytes = fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 3);
        fs::write(&path, bytes).unwrap();
        let c2 = MemoCache::open(dir.path()).unwrap();
        assert!(c2.is_empty());
        assert!(c2.stats().discarded_corrupt_file);
        fs::write(&path, b"XXXX\x01\0\0\0").unwrap();
        assert!(MemoCache::open(dir.path()).unwrap().is_empty());
    }

    #[test]
    fn clear_removes_file() {
        let dir = tempfile::tempdir().unwrap();
        let c = MemoCache::open(dir.path()).unwrap();
        c.insert(vec![9], LaurentVZ::one());
        c.save().unwrap();
        c.clear().unwrap();
        assert!(c.is_empty());
        assert!(!dir.path().join(FILE_NAME).exists());
    }
}
