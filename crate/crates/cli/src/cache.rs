//! Shifted-family enumerations memoized on disk under `OVERLAP_LAB_CACHE`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use overlap_lab::family::enumerate_shifted_families;
use overlap_lab::Family;
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "OVERLAP_LAB_CACHE";

#[derive(Serialize, Deserialize)]
struct Stored {
    n: usize,
    k: usize,
    /// Colex ranks of the members of each family.
    families: Vec<Vec<u64>>,
}

type Entry = Arc<overlap_lab::Result<Vec<Family>>>;

#[derive(Default)]
pub struct DownsetCache {
    dir: Option<PathBuf>,
    memory: Mutex<HashMap<(usize, usize, u64), Entry>>,
}

impl DownsetCache {
    pub fn from_env() -> Self {
        DownsetCache {
            dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            memory: Mutex::default(),
        }
    }

    fn path(&self, n: usize, k: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("shifted-n{n}-k{k}.json")))
    }

    fn load(&self, n: usize, k: usize) -> Option<Vec<Family>> {
        let text = std::fs::read_to_string(self.path(n, k)?).ok()?;
        let stored: Stored = serde_json::from_str(&text).ok()?;
        if (stored.n, stored.k) != (n, k) {
            return None;
        }
        stored
            .families
            .into_iter()
            .map(|ranks| Family::from_ranks(n, k, ranks).ok())
            .collect()
    }

    fn store(&self, n: usize, k: usize, families: &[Family]) {
        let (Some(path), Some(dir)) = (self.path(n, k), self.dir.as_ref()) else { return };
        let stored = Stored { n, k, families: families.iter().map(|f| f.ranks().collect()).collect() };
        let Ok(text) = serde_json::to_string(&stored) else { return };
        // a failed write only costs a recomputation later
        let tmp = path.with_extension("json.tmp");
        if std::fs::create_dir_all(dir).is_ok() && std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }

    /// All shifted families over `(n, k)`, from memory, disk, or a fresh
    /// enumeration capped at `limit`.
    pub fn get(&self, n: usize, k: usize, limit: u64) -> Entry {
        let key = (n, k, limit);
        if let Some(e) = self.memory.lock().expect("cache lock").get(&key) {
            return e.clone();
        }
        let entry = match self.load(n, k) {
            Some(f) if f.len() as u64 <= limit => Ok(f),
            _ => {
                let result = enumerate_shifted_families(n, k, limit);
                if let Ok(f) = &result {
                    self.store(n, k, f);
                }
                result
            }
        };
        let entry = Arc::new(entry);
        self.memory.lock().expect("cache lock").insert(key, entry.clone());
        entry
    }
}
