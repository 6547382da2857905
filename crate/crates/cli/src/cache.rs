//! Append-only JSON-lines store of extremal values.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use mnl_core::extremal::{ExRecord, Kind};

pub type CacheKey = (String, Kind, u32);

fn key_of(r: &ExRecord) -> CacheKey {
    (r.pattern_key.clone(), r.kind, r.n)
}

/// Whether `candidate` should replace `current` as the best record.
fn improves(candidate: &ExRecord, current: &ExRecord) -> bool {
    match (candidate.exact, current.exact) {
        (true, false) => true,
        (false, true) => false,
        _ => candidate.value > current.value,
    }
}

#[derive(Debug)]
pub struct CacheStore {
    path: PathBuf,
    best: BTreeMap<CacheKey, ExRecord>,
    lock: Option<File>,
}

#[derive(Debug)]
pub enum CacheError {
    Io(io::Error),
    Locked(PathBuf),
    Conflict { existing: ExRecord, offered: ExRecord },
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache i/o error: {e}"),
            CacheError::Locked(p) => write!(f, "cache {} is locked by another writer", p.display()),
            CacheError::Conflict { existing, offered } => write!(
                f,
                "conflicting exact values for {} n={}: cached {}, offered {}",
                existing.pattern_key, existing.n, existing.value, offered.value
            ),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        CacheError::Io(e)
    }
}

impl CacheStore {
    /// Loads the cache at `path`; a missing file is an empty cache.
    /// Unreadable lines are skipped and reported in the returned warnings.
    pub fn open(path: impl Into<PathBuf>) -> Result<(Self, Vec<String>), CacheError> {
        let path = path.into();
        let mut store = CacheStore {
            path,
            best: BTreeMap::new(),
            lock: None,
        };
        let mut warnings = Vec::new();
        let file = match File::open(&store.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((store, warnings)),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    warnings.push(format!("warning: cache line {}: {e}; skipped", i + 1));
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<ExRecord>(&line) {
                Ok(rec) => store.absorb(rec),
                Err(e) => warnings.push(format!(
                    "warning: corrupt cache line {} in {}: {e}; skipped",
                    i + 1,
                    store.path.display()
                )),
            }
        }
        Ok((store, warnings))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn absorb(&mut self, rec: ExRecord) {
        let key = key_of(&rec);
        match self.best.get(&key) {
            Some(cur) if !improves(&rec, cur) => {}
            _ => {
                self.best.insert(key, rec);
            }
        }
    }

    /// Best record for the key: an exact one if present, else the largest
    /// lower bound.
    pub fn get(&self, key: &str, kind: Kind, n: u32) -> Option<&ExRecord> {
        self.best.get(&(key.to_string(), kind, n))
    }

    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }

    fn lock_path(&self) -> PathBuf {
        let mut name = self.path.as_os_str().to_owned();
        name.push(".lock");
        PathBuf::from(name)
    }

    fn acquire(&mut self) -> Result<(), CacheError> {
        if self.lock.is_some() {
            return Ok(());
        }
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.lock_path())?;
        match file.try_lock() {
            Ok(()) => {
                self.lock = Some(file);
                Ok(())
            }
            Err(fs::TryLockError::WouldBlock) => Err(CacheError::Locked(self.path.clone())),
            Err(fs::TryLockError::Error(e)) => Err(e.into()),
        }
    }

    /// Appends `rec` if it improves on what is stored and returns the best
    /// record for its key afterwards. A second exact record with a
    /// different value is refused.
    pub fn put(&mut self, rec: ExRecord) -> Result<ExRecord, CacheError> {
        let key = key_of(&rec);
        if let Some(cur) = self.best.get(&key) {
            if cur.exact && rec.exact && cur.value != rec.value {
                return Err(CacheError::Conflict {
                    existing: cur.clone(),
                    offered: rec,
                });
            }
            if !improves(&rec, cur) {
                return Ok(cur.clone());
            }
        }
        self.acquire()?;
        let mut line = serde_json::to_string(&rec).expect("records serialize");
        line.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(line.as_bytes())?;
        file.flush()?;
        self.best.insert(key, rec.clone());
        Ok(rec)
    }

    /// Rewrites the file with one best record per key. Returns the number
    /// of records kept.
    pub fn compact(&mut self) -> Result<usize, CacheError> {
        self.acquire()?;
        let mut tmp = self.path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut out = io::BufWriter::new(File::create(&tmp)?);
            for rec in self.best.values() {
                serde_json::to_writer(&mut out, rec).expect("records serialize");
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(self.best.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(value: u64, exact: bool) -> ExRecord {
        ExRecord {
            pattern_key: "11".into(),
            kind: Kind::Matrix,
            n: 5,
            value,
            exact,
            nodes_explored: 1,
            elapsed_ms: 0,
        }
    }

    #[test]
    fn empty_get_is_absent() {
        let dir = tempfile::tempdir().unwrap();
        let (store, warnings) = CacheStore::open(dir.path().join("c.jsonl")).unwrap();
        assert!(warnings.is_empty());
        assert!(store.get("11", Kind::Matrix, 5).is_none());
    }

    #[test]
    fn exact_beats_lower_bound() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let (mut store, _) = CacheStore::open(&path).unwrap();
        store.put(rec(3, false)).unwrap();
        store.put(rec(5, true)).unwrap();
        assert_eq!(store.get("11", Kind::Matrix, 5), Some(&rec(5, true)));
        // Weaker records are not appended.
        store.put(rec(4, false)).unwrap();
        drop(store);
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        let (store, _) = CacheStore::open(&path).unwrap();
        assert_eq!(store.get("11", Kind::Matrix, 5), Some(&rec(5, true)));
    }

    #[test]
    fn conflicting_exact_values_refused() {
        let dir = tempfile::tempdir().unwrap();
        let (mut store, _) = CacheStore::open(dir.path().join("c.jsonl")).unwrap();
        store.put(rec(5, true)).unwrap();
        assert!(matches!(store.put(rec(6, true)), Err(CacheError::Conflict { .. })));
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&rec(5, true)).unwrap();
        fs::write(&path, format!("{{not json\n{good}\n{{\"key\":1}}\n")).unwrap();
        let (store, warnings) = CacheStore::open(&path).unwrap();
        assert_eq!(warnings.len(), 2);
        assert!(warnings[0].contains("line 1"));
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn compact_keeps_best() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let (mut store, _) = CacheStore::open(&path).unwrap();
        for v in 1..=4 {
            store.put(rec(v, false)).unwrap();
        }
        store.put(rec(5, true)).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 5);
        assert_eq!(store.compact().unwrap(), 1);
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1);
        let back: ExRecord = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(back, rec(5, true));
    }

    #[test]
    fn second_writer_is_locked_out() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let (mut first, _) = CacheStore::open(&path).unwrap();
        first.put(rec(5, true)).unwrap();
        let (mut second, _) = CacheStore::open(&path).unwrap();
        assert_eq!(second.get("11", Kind::Matrix, 5), Some(&rec(5, true)));
        let mut other = rec(2, false);
        other.n = 2;
        assert!(matches!(second.put(other.clone()), Err(CacheError::Locked(_))));
        drop(first);
        assert!(second.put(other).is_ok());
    }
}
