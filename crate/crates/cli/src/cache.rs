//! Append-only scan cache: one JSON object per line, one line per scanned prime.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use modpk_core::{PrimePowerModulus, ScanRecord, Triplet};

use crate::error::{CliError, Result};

/// Line form of a [`ScanRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCacheLine {
    pub p: u64,
    pub k: u32,
    pub degenerate_count: usize,
    pub proper_triplet_count: usize,
    pub first_proper: Option<[u64; 3]>,
    pub elapsed_us: u64,
}

impl From<&ScanRecord> for ScanCacheLine {
    fn from(r: &ScanRecord) -> Self {
        Self {
            p: r.p,
            k: r.k,
            degenerate_count: r.degenerate_count,
            proper_triplet_count: r.proper_triplet_count,
            first_proper: r.first_proper.map(|t| [t.a.value(), t.b.value(), t.c.value()]),
            elapsed_us: r.elapsed.as_micros().min(u64::MAX as u128) as u64,
        }
    }
}

impl ScanCacheLine {
    pub fn to_record(&self) -> Option<ScanRecord> {
        let modulus = PrimePowerModulus::new(self.p, self.k).ok()?;
        let first_proper = match self.first_proper {
            Some([a, b, c]) => {
                let t = Triplet {
                    a: modulus.residue(a),
                    b: modulus.residue(b),
                    c: modulus.residue(c),
                };
                // Reject lines that do not describe a valid orbit.
                if !t.satisfies_chain() {
                    return None;
                }
                Some(t)
            }
            None => None,
        };
        if first_proper.is_some() != (self.proper_triplet_count > 0) {
            return None;
        }
        Some(ScanRecord {
            p: self.p,
            k: self.k,
            degenerate_count: self.degenerate_count,
            proper_triplet_count: self.proper_triplet_count,
            first_proper,
            elapsed: Duration::from_micros(self.elapsed_us),
        })
    }
}

pub struct ScanCache {
    path: PathBuf,
    records: BTreeMap<(u64, u32), ScanRecord>,
    file: File,
}

impl ScanCache {
    /// Loads existing lines (later lines win) and opens the file for appending.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut records = BTreeMap::new();
        match File::open(&path) {
            Ok(f) => {
                for (n, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|e| CliError::io(&path, e))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<ScanCacheLine>(&line)
                        .ok()
                        .and_then(|l| l.to_record())
                    {
                        Some(r) => {
                            records.insert((r.p, r.k), r);
                        }
                        None => eprintln!("warning: {}:{}: skipping malformed cache line", path.display(), n + 1),
                    }
                }
            }
            Err(e) if e.kind() == ErrorKind::NotFound => {}
            Err(e) => return Err(CliError::io(&path, e)),
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| CliError::io(&path, e))?;
        Ok(Self { path, records, file })
    }

    pub fn get(&self, p: u64, k: u32) -> Option<&ScanRecord> {
        self.records.get(&(p, k))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn append(&mut self, record: &ScanRecord) -> Result<()> {
        let line = serde_json::to_string(&ScanCacheLine::from(record)).expect("cache line serializes");
        writeln!(self.file, "{line}").map_err(|e| CliError::io(&self.path, e))?;
        self.records.insert((record.p, record.k), record.clone());
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.file.flush().map_err(|e| CliError::io(&self.path, e))
    }
}
