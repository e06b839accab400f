//! On-disk cache of denumerant tables under `FROBLAB_CACHE_DIR`.
//!
//! One text file per `(tuple, cap)`: a header line, the generators, the cap,
//! one count per line and an end marker. Anything unexpected on load means
//! the table is rebuilt and rewritten, so a damaged cache never changes an
//! answer.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use froblab::denumerant::{DenumerantTable, GeneratorTuple};
use froblab::{Result, TableSource};
use num_bigint::BigUint;

const MAGIC: &str = "froblab-denumerant v1";

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    /// The cache named by `FROBLAB_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os("FROBLAB_CACHE_DIR").filter(|v| !v.is_empty()).map(DiskCache::new)
    }

    pub fn path_for(&self, tuple: &GeneratorTuple, cap: usize) -> PathBuf {
        let gens: Vec<String> = tuple.gens().iter().map(u64::to_string).collect();
        self.dir.join(format!("d-{}-{cap}.txt", gens.join("_")))
    }

    fn load(&self, path: &Path, tuple: &GeneratorTuple, cap: usize) -> Option<DenumerantTable> {
        let file = fs::File::open(path).ok()?;
        let mut lines = BufReader::new(file).lines();
        let mut next = || lines.next()?.ok();
        if next()? != MAGIC || next()? != tuple.to_string() || next()? != cap.to_string() {
            return None;
        }
        let mut counts = Vec::with_capacity(cap + 1);
        for _ in 0..=cap {
            counts.push(next()?.parse::<BigUint>().ok()?);
        }
        if next()? != "end" || next().is_some() {
            return None;
        }
        DenumerantTable::from_counts(tuple, counts).ok()
    }

    fn store(&self, path: &Path, table: &DenumerantTable) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = std::io::BufWriter::new(tmp.as_file_mut());
            writeln!(w, "{MAGIC}")?;
            writeln!(w, "{}", table.tuple())?;
            writeln!(w, "{}", table.limit())?;
            for c in table.counts() {
                writeln!(w, "{c}")?;
            }
            writeln!(w, "end")?;
            w.flush()?;
        }
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl TableSource for DiskCache {
    fn table(&self, tuple: &GeneratorTuple, cap: usize) -> Result<DenumerantTable> {
        let path = self.path_for(tuple, cap);
        if let Some(t) = self.load(&path, tuple, cap) {
            return Ok(t);
        }
        let table = DenumerantTable::new(tuple, cap)?;
        // a failed write only costs a rebuild next time
        let _ = self.store(&path, &table);
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_repair() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let t = GeneratorTuple::new(vec![8, 21, 55]).unwrap();
        let fresh = DenumerantTable::new(&t, 840).unwrap();

        assert_eq!(cache.table(&t, 840).unwrap(), fresh);
        let path = cache.path_for(&t, 840);
        assert!(path.ends_with("d-8_21_55-840.txt"));
        assert_eq!(cache.table(&t, 840).unwrap(), fresh);

        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("\nend\n", "\n")).unwrap();
        assert_eq!(cache.table(&t, 840).unwrap(), fresh);
        assert!(fs::read_to_string(&path).unwrap().ends_with("end\n"));

        fs::write(&path, "garbage").unwrap();
        assert_eq!(cache.table(&t, 840).unwrap(), fresh);
    }

    #[test]
    fn wrong_header_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let t = GeneratorTuple::new(vec![2, 3]).unwrap();
        let path = cache.path_for(&t, 5);
        fs::write(&path, format!("{MAGIC}\n(2,5)\n5\n1\n0\n1\n1\n1\n1\nend\n")).unwrap();
        assert_eq!(cache.table(&t, 5).unwrap(), DenumerantTable::new(&t, 5).unwrap());
    }
}
