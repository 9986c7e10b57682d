//! On-disk cache of Weyl group words.
//!
//! One JSON file per (type, rank, simple roots of the subsystem). Files are
//! written atomically; anything unreadable, from another schema version or
//! failing validation is ignored and rebuilt.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::{Root, RootSystem, WeylElement};

pub const CACHE_ENV: &str = "KSPRINGER_CACHE_DIR";
const VERSION: u32 = 1;

// None: not yet configured, fall back to the environment.
static DIR: RwLock<Option<Option<PathBuf>>> = RwLock::new(None);

/// Set the cache directory; `None` disables the disk cache.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *DIR.write().expect("cache lock") = Some(dir);
}

pub fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = DIR.read().expect("cache lock").clone() {
        return dir;
    }
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Key {
    label: String,
    rank: usize,
    simple: Vec<Vec<i64>>,
}

impl Key {
    pub(crate) fn new(rs: &RootSystem, simple: &[Root]) -> Self {
        Key {
            label: rs.label().to_string(),
            rank: rs.rank(),
            simple: simple.iter().map(|r| r.0.clone()).collect(),
        }
    }

    fn file_name(&self) -> String {
        let roots: Vec<String> = self
            .simple
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect();
        let roots = if roots.is_empty() {
            "torus".to_string()
        } else {
            roots.join("_")
        };
        format!("weyl-v{VERSION}-{}{}-{roots}.json", self.label, self.rank)
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: Key,
    words: Vec<Vec<usize>>,
}

pub(crate) fn load(key: &Key) -> Option<Vec<WeylElement>> {
    let path = cache_dir()?.join(key.file_name());
    let text = fs::read_to_string(path).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if entry.version != VERSION || &entry.key != key {
        return None;
    }
    Some(
        entry
            .words
            .into_iter()
            .map(|word| WeylElement { word })
            .collect(),
    )
}

/// Best effort: a cache that cannot be written is simply not used.
pub(crate) fn store(key: &Key, elements: &[WeylElement]) {
    let Some(dir) = cache_dir() else { return };
    let entry = Entry {
        version: VERSION,
        key: key.clone(),
        words: elements.iter().map(|e| e.word.clone()).collect(),
    };
    let _ = write_atomic(&dir, &key.file_name(), &entry);
}

fn write_atomic(dir: &PathBuf, name: &str, entry: &Entry) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, entry)?;
    tmp.flush()?;
    tmp.persist(dir.join(name)).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_are_distinct() {
        let rs = RootSystem::new(crate::rootdata::TypeLabel::A, 2).unwrap();
        let a = Key::new(&rs, &[Root(vec![1, 1])]);
        let b = Key::new(&rs, &[Root(vec![1, 0]), Root(vec![0, 1])]);
        assert_ne!(a.file_name(), b.file_name());
        assert_eq!(Key::new(&rs, &[]).file_name(), "weyl-v1-A2-torus.json");
    }
}
