//! Memoised Schubert structure constants with an optional JSON-lines store.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use super::kernel::{self, SchubertTable};
use super::vector::{int_qpoly, Basis, SchubertVector};
use super::SchubertError;
use crate::permgroup::Permutation;

const FORMAT: &str = "dlchow-cache";
const VERSION: u32 = 1;

pub type Expansion = Arc<[(u32, i128)]>;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct Record {
    u: String,
    v: String,
    expansion: Vec<(String, String)>,
}

/// What happened when the store was opened.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheLoad {
    pub loaded: usize,
    pub corrupt_lines: usize,
    pub rebuilt: bool,
}

struct Store {
    path: PathBuf,
    file: Option<File>,
}

/// `Z[x]/J` for `S_n` with memoised products `S_u * S_v`.
pub struct FlagRing {
    n: usize,
    table: Arc<SchubertTable>,
    memo: RwLock<HashMap<(u32, u32), Expansion>>,
    store: Option<Mutex<Store>>,
    load: CacheLoad,
}

impl FlagRing {
    pub fn new(n: usize) -> Result<FlagRing, SchubertError> {
        if !(1..=kernel::MAX_RANK).contains(&n) {
            return Err(SchubertError::RankOutOfRange(n));
        }
        Ok(FlagRing {
            n,
            table: kernel::table(n),
            memo: RwLock::new(HashMap::new()),
            store: None,
            load: CacheLoad::default(),
        })
    }

    /// Opens (or creates) `dir/structure-n{n}.jsonl`. Unreadable lines are
    /// dropped and the file is rewritten without them.
    pub fn with_cache_dir(n: usize, dir: &Path) -> Result<FlagRing, SchubertError> {
        let mut ring = FlagRing::new(n)?;
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("structure-n{n}.jsonl"));
        let mut load = CacheLoad::default();
        let mut fresh = !path.exists();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            let mut lines = reader.lines();
            let header_ok = match lines.next() {
                Some(Ok(line)) => serde_json::from_str::<Header>(&line)
                    .map(|h| h.format == FORMAT && h.version == VERSION && h.n == n)
                    .unwrap_or(false),
                Some(Err(_)) => false,
                None => {
                    fresh = true;
                    true
                }
            };
            let mut memo = HashMap::new();
            if header_ok {
                for line in lines {
                    match line.ok().and_then(|l| ring.decode(&l)) {
                        Some((key, value)) => {
                            memo.insert(key, value);
                        }
                        None => load.corrupt_lines += 1,
                    }
                }
            } else {
                load.corrupt_lines = 1 + lines.count();
            }
            load.loaded = memo.len();
            *ring.memo.get_mut().expect("fresh lock") = memo;
        }
        ring.store = Some(Mutex::new(Store { file: None, path: path.clone() }));
        if load.corrupt_lines > 0 || fresh {
            load.rebuilt = load.corrupt_lines > 0;
            ring.compact()?;
        } else {
            ring.reopen_append()?;
        }
        ring.load = load;
        Ok(ring)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &SchubertTable {
        &self.table
    }

    pub fn cache_load(&self) -> CacheLoad {
        self.load
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn decode(&self, line: &str) -> Option<((u32, u32), Expansion)> {
        let rec: Record = serde_json::from_str(line).ok()?;
        let perm = |s: &str| -> Option<u32> {
            let w = Permutation::parse(s, self.n).ok()?;
            Some(self.table.index_of(&w) as u32)
        };
        let (a, b) = (perm(&rec.u)?, perm(&rec.v)?);
        let mut exp = Vec::with_capacity(rec.expansion.len());
        for (w, c) in &rec.expansion {
            exp.push((perm(w)?, c.parse::<i128>().ok()?));
        }
        exp.sort_unstable();
        Some(((a.min(b), a.max(b)), exp.into()))
    }

    fn encode(&self, key: (u32, u32), exp: &[(u32, i128)]) -> String {
        let perm = |k: u32| self.table.perms[k as usize].one_line_string();
        let rec = Record {
            u: perm(key.0),
            v: perm(key.1),
            expansion: exp.iter().map(|&(k, c)| (perm(k), c.to_string())).collect(),
        };
        serde_json::to_string(&rec).expect("record serialises")
    }

    fn header_line(&self) -> String {
        serde_json::to_string(&Header { format: FORMAT.into(), version: VERSION, n: self.n }).expect("header")
    }

    fn reopen_append(&self) -> Result<(), SchubertError> {
        if let Some(store) = &self.store {
            let mut store = store.lock().expect("store lock");
            store.file = Some(OpenOptions::new().append(true).open(&store.path)?);
        }
        Ok(())
    }

    /// Rewrites the store from memory through a temporary file and rename.
    fn compact(&self) -> Result<(), SchubertError> {
        let Some(store) = &self.store else { return Ok(()) };
        let mut store = store.lock().expect("store lock");
        let tmp = store.path.with_extension("jsonl.tmp");
        {
            let mut out = BufWriter::new(File::create(&tmp)?);
            writeln!(out, "{}", self.header_line())?;
            let memo = self.memo.read().expect("memo lock");
            let mut keys: Vec<_> = memo.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                writeln!(out, "{}", self.encode(key, &memo[&key]))?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, &store.path)?;
        store.file = Some(OpenOptions::new().append(true).open(&store.path)?);
        Ok(())
    }

    /// Compacts the store; call once when done with the ring.
    pub fn finish(&self) -> Result<(), SchubertError> {
        self.compact()
    }

    /// Expansion of `S_u * S_v` as `(table index, coefficient)` pairs.
    pub fn product_indices(&self, u: usize, v: usize) -> Expansion {
        let key = (u.min(v) as u32, u.max(v) as u32);
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return Arc::clone(hit);
        }
        let t = &self.table;
        let prod = t.polys[key.0 as usize].mul(&t.polys[key.1 as usize]);
        let exp: Expansion = t.expand(&prod).into_iter().map(|(k, c)| (k as u32, c)).collect();
        let mut memo = self.memo.write().expect("memo lock");
        if let Some(existing) = memo.get(&key) {
            return Arc::clone(existing);
        }
        memo.insert(key, Arc::clone(&exp));
        drop(memo);
        if let Some(store) = &self.store {
            let line = self.encode(key, &exp);
            let mut store = store.lock().expect("store lock");
            // a failed append only loses memoisation
            if let Some(file) = store.file.as_mut() {
                let _ = writeln!(file, "{line}");
            }
        }
        exp
    }

    /// `S_u * S_v` in the Schubert basis.
    pub fn schubert_product(&self, u: &Permutation, v: &Permutation) -> Result<SchubertVector, SchubertError> {
        for w in [u, v] {
            if w.n() != self.n {
                return Err(SchubertError::RankMismatch { left: self.n, right: w.n() });
            }
        }
        let exp = self.product_indices(self.table.index_of(u), self.table.index_of(v));
        Ok(SchubertVector::from_entries(
            self.n,
            Basis::Polynomial,
            exp.iter().map(|&(k, c)| (self.table.perms[k as usize].clone(), int_qpoly(c))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_are_symmetric_and_memoised() {
        let ring = FlagRing::new(3).unwrap();
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert_eq!(ring.schubert_product(&s1, &s1).unwrap().render(), "[s2 s1]");
        let a = ring.schubert_product(&s1, &s2).unwrap();
        let b = ring.schubert_product(&s2, &s1).unwrap();
        assert_eq!(a, b);
        assert_eq!(ring.memo_len(), 2);
        let id = Permutation::identity(3);
        assert_eq!(ring.schubert_product(&id, &s2).unwrap().render(), "[s2]");
    }
}
