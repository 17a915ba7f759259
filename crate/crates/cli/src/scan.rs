//! Parallel prime scan with optional on-disk cache.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use modpk_core::{scan_prime, scan_range, ScanRecord};

use crate::cache::ScanCache;
use crate::error::{CliError, Result};
use crate::report::{RenderText, Style, TripletView};

/// Scans `primes` at precision `k` with at most `jobs` worker threads.
/// Output order follows `primes`, whatever order the work finishes in.
pub fn parallel_scan(primes: &[u64], k: u32, jobs: usize) -> Result<Vec<ScanRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| {
        primes
            .par_iter()
            .map(|&p| {
                let start = Instant::now();
                let mut rec = scan_prime(p, k)?;
                rec.elapsed = start.elapsed();
                Ok(rec)
            })
            .collect::<std::result::Result<Vec<_>, modpk_core::Error>>()
    })
    .map_err(CliError::from)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordView {
    pub p: u64,
    pub degenerate_count: usize,
    pub proper_triplet_count: usize,
    pub first_proper: Option<TripletView>,
}

/// Scan outcome without timings, so cached and fresh runs compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub p_min: u64,
    pub p_max: u64,
    pub k: u32,
    pub primes_scanned: usize,
    pub records: Vec<RecordView>,
    /// Smallest prime with a proper core triplet.
    pub first_onset: Option<u64>,
}

impl RenderText for ScanSummary {
    fn render_text(&self, out: &mut String) {
        for r in &self.records {
            let _ = write!(
                out,
                "p={} degenerate={} proper={}",
                r.p, r.degenerate_count, r.proper_triplet_count
            );
            if let Some(t) = &r.first_proper {
                let _ = write!(out, " first={}", t.text());
            }
            out.push('\n');
        }
        let _ = writeln!(out, "primes scanned: {}", self.primes_scanned);
        match self.first_onset {
            Some(p) => {
                let _ = writeln!(out, "first proper triplet at p = {p}");
            }
            None => out.push_str("no proper triplets found\n"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanStats {
    pub computed: usize,
    pub from_cache: usize,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub jobs: usize,
    pub cache: Option<std::path::PathBuf>,
    pub force: bool,
}

pub fn run_scan(p_min: u64, p_max: u64, k: u32, opts: &ScanOptions, style: Style) -> Result<(ScanSummary, ScanStats)> {
    if p_min < 3 || p_min > p_max {
        return Err(CliError::Usage(format!("invalid prime range {p_min}..={p_max}")));
    }
    let primes = scan_range(p_min, p_max, k)?;
    let mut cache = opts.cache.as_ref().map(ScanCache::open).transpose()?;

    let pending: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| opts.force || cache.as_ref().is_none_or(|c| c.get(p, k).is_none()))
        .collect();
    let fresh = parallel_scan(&pending, k, opts.jobs)?;
    if let Some(cache) = cache.as_mut() {
        for rec in &fresh {
            cache.append(rec)?;
        }
        cache.flush()?;
    }

    let mut fresh = fresh.into_iter().peekable();
    let mut records = Vec::with_capacity(primes.len());
    for &p in &primes {
        let rec = match fresh.peek() {
            Some(r) if r.p == p => fresh.next().expect("peeked"),
            _ => cache
                .as_ref()
                .and_then(|c| c.get(p, k))
                .cloned()
                .expect("every prime is either pending or cached"),
        };
        records.push(rec);
    }

    let stats = ScanStats {
        computed: pending.len(),
        from_cache: primes.len() - pending.len(),
    };
    let summary = ScanSummary {
        p_min,
        p_max,
        k,
        primes_scanned: records.len(),
        first_onset: records.iter().find(|r| r.proper_triplet_count > 0).map(|r| r.p),
        records: records
            .iter()
            .map(|r| RecordView {
                p: r.p,
                degenerate_count: r.degenerate_count,
                proper_triplet_count: r.proper_triplet_count,
                first_proper: r.first_proper.as_ref().map(|t| TripletView::new(t, style)),
            })
            .collect(),
    };
    Ok((summary, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(jobs: usize) -> ScanOptions {
        ScanOptions {
            jobs,
            cache: None,
            force: false,
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = modpk_core::scan_primes(3, 400, 2).unwrap();
        let primes: Vec<u64> = seq.iter().map(|r| r.p).collect();
        let par = parallel_scan(&primes, 2, 4).unwrap();
        let untimed: Vec<ScanRecord> = par.iter().map(ScanRecord::untimed).collect();
        assert_eq!(untimed, seq);
    }

    #[test]
    fn onset_is_reported() {
        let (s, stats) = run_scan(3, 100, 2, &opts(2), Style::default()).unwrap();
        assert_eq!(s.first_onset, Some(59));
        assert_eq!(stats.computed, 24);
        let (s, _) = run_scan(3, 57, 2, &opts(2), Style::default()).unwrap();
        assert_eq!(s.first_onset, None);
        let (s, _) = run_scan(7, 7, 2, &opts(1), Style::default()).unwrap();
        assert_eq!(s.records.len(), 1);
        assert_eq!(s.records[0].degenerate_count, 2);
    }

    #[test]
    fn cached_rerun_skips_work() {
        let dir = tempfile::tempdir().unwrap();
        let o = ScanOptions {
            jobs: 2,
            cache: Some(dir.path().join("c.jsonl")),
            force: false,
        };
        let (first, s1) = run_scan(3, 120, 2, &o, Style::default()).unwrap();
        let (second, s2) = run_scan(3, 120, 2, &o, Style::default()).unwrap();
        assert_eq!(first, second);
        assert_eq!(s1.from_cache, 0);
        assert_eq!(s2.computed, 0);
        // Extending the range only computes the new primes.
        let (_, s3) = run_scan(3, 140, 2, &o, Style::default()).unwrap();
        assert_eq!(s3.computed, 4);
        let forced = ScanOptions { force: true, ..o };
        let (third, s4) = run_scan(3, 120, 2, &forced, Style::default()).unwrap();
        assert_eq!(third, first);
        assert_eq!(s4.from_cache, 0);
    }

    #[test]
    fn bad_ranges() {
        assert_eq!(
            run_scan(10, 3, 2, &opts(1), Style::default()).unwrap_err().exit_code(),
            2
        );
        assert_eq!(
            run_scan(3, 1 << 40, 2, &opts(1), Style::default())
                .unwrap_err()
                .exit_code(),
            3
        );
    }
}
