//! Append-only value cache: one JSON object per line, keyed by canonical
//! diagram key, convention and algebra name.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::diagram::CanonicalKey;

pub const CACHE_ENV: &str = "SKEIN_CACHE_DIR";
const FILE_NAME: &str = "values.jsonl";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    convention: String,
    algebra: String,
    value: String,
}

type Slot = (String, String, String);

pub struct Cache {
    map: RwLock<HashMap<Slot, String>>,
    file: Mutex<File>,
}

pub fn key_hex(k: &CanonicalKey) -> String {
    let mut s = String::with_capacity(2 * k.as_bytes().len());
    for b in k.as_bytes() {
        let _ = write!(s, "{b:02x}");
    }
    s
}

impl Cache {
    /// Opens the cache under `$SKEIN_CACHE_DIR`, if that is set.
    pub fn from_env() -> std::io::Result<Option<Cache>> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Cache::open(Path::new(&dir)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        let path: PathBuf = dir.join(FILE_NAME);
        let mut map = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                // a torn final line from an interrupted run is skipped
                if let Ok(e) = serde_json::from_str::<Entry>(&line?) {
                    map.insert((e.key, e.convention, e.algebra), e.value);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(Cache { map: RwLock::new(map), file: Mutex::new(file) })
    }

    pub fn get(&self, key: &str, convention: &str, algebra: &str) -> Option<String> {
        let slot = (key.to_string(), convention.to_string(), algebra.to_string());
        self.map.read().expect("cache lock").get(&slot).cloned()
    }

    pub fn put(&self, key: &str, convention: &str, algebra: &str, value: &str) -> std::io::Result<()> {
        let slot = (key.to_string(), convention.to_string(), algebra.to_string());
        if self.map.read().expect("cache lock").contains_key(&slot) {
            return Ok(());
        }
        let e = Entry { key: slot.0.clone(), convention: slot.1.clone(), algebra: slot.2.clone(), value: value.into() };
        let mut line = serde_json::to_string(&e).expect("entry serializes");
        line.push('\n');
        {
            let mut f = self.file.lock().expect("cache file lock");
            f.write_all(line.as_bytes())?;
            f.flush()?;
        }
        self.map.write().expect("cache lock").insert(slot, value.into());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_survive_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path()).unwrap();
        c.put("ab", "modern", "mod3", "2").unwrap();
        c.put("ab", "modern", "mod3", "2").unwrap();
        drop(c);
        let c = Cache::open(dir.path()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get("ab", "modern", "mod3").as_deref(), Some("2"));
        assert_eq!(c.get("ab", "old", "mod3"), None);
    }
}
