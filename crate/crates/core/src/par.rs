//! Chunked scans. With the `parallel` feature chunks run on a rayon pool of
//! `jobs` threads; without it they run in order on the calling thread.
//! Either way results are handed to the caller in chunk order, so output
//! never depends on the worker count.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub jobs: usize,
    pub chunk_size: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { jobs: 1, chunk_size: 1 << 20 }
    }
}

/// Per-chunk survivor log (the checkpoint file in the CLI).
pub trait ChunkLog {
    /// Survivors of a chunk finished in an earlier run.
    fn lookup(&self, chunk: u64) -> Option<Vec<u64>>;
    fn record(&mut self, chunk: u64, survivors: &[u64]) -> Result<()>;
}

/// A log that remembers nothing.
pub struct NoLog;

impl ChunkLog for NoLog {
    fn lookup(&self, _: u64) -> Option<Vec<u64>> {
        None
    }
    fn record(&mut self, _: u64, _: &[u64]) -> Result<()> {
        Ok(())
    }
}

/// Runs `scan(start, end)` over `[0, total)` in chunks and concatenates the
/// survivor indices in chunk order.
pub fn run_chunks<F>(total: u64, cfg: &ScanConfig, log: &mut dyn ChunkLog, scan: F) -> Result<Vec<u64>>
where
    F: Fn(u64, u64) -> Result<Vec<u64>> + Sync,
{
    if cfg.jobs == 0 || cfg.chunk_size == 0 {
        return Err(Error::Argument("jobs and chunk size must be positive".into()));
    }
    let nchunks = total.div_ceil(cfg.chunk_size);
    let range = |c: u64| (c * cfg.chunk_size, ((c + 1) * cfg.chunk_size).min(total));
    let todo: Vec<u64> = (0..nchunks).filter(|&c| log.lookup(c).is_none()).collect();
    let mut fresh = std::collections::BTreeMap::new();
    let batch = (cfg.jobs * 4).max(1);
    for group in todo.chunks(batch) {
        let results = run_group(group, cfg.jobs, |&c| {
            let (s, e) = range(c);
            scan(s, e)
        });
        for (&c, r) in group.iter().zip(results) {
            let r = r?;
            log.record(c, &r)?;
            fresh.insert(c, r);
        }
    }
    let mut out = Vec::new();
    for c in 0..nchunks {
        match fresh.remove(&c) {
            Some(r) => out.extend(r),
            None => out.extend(log.lookup(c).expect("chunk logged earlier")),
        }
    }
    Ok(out)
}

/// Maps `f` over items, keeping order.
pub fn map_ordered<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    run_group(items, jobs, f)
}

#[cfg(feature = "parallel")]
fn run_group<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    use rayon::prelude::*;
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_group<T, R, F>(items: &[T], _jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    struct MemLog(std::collections::BTreeMap<u64, Vec<u64>>);

    impl ChunkLog for MemLog {
        fn lookup(&self, c: u64) -> Option<Vec<u64>> {
            self.0.get(&c).cloned()
        }
        fn record(&mut self, c: u64, s: &[u64]) -> Result<()> {
            self.0.insert(c, s.to_vec());
            Ok(())
        }
    }

    fn sevens(s: u64, e: u64) -> Result<Vec<u64>> {
        Ok((s..e).filter(|i| i % 7 == 3).collect())
    }

    #[test]
    fn chunking_and_jobs_do_not_change_output() {
        let want: Vec<u64> = (0..1000).filter(|i| i % 7 == 3).collect();
        for (jobs, cs) in [(1, 1000), (1, 13), (3, 7), (4, 1)] {
            let cfg = ScanConfig { jobs, chunk_size: cs };
            assert_eq!(run_chunks(1000, &cfg, &mut NoLog, sevens).unwrap(), want);
        }
    }

    #[test]
    fn resume_uses_logged_chunks() {
        let cfg = ScanConfig { jobs: 2, chunk_size: 100 };
        let mut log = MemLog(Default::default());
        let full = run_chunks(1000, &cfg, &mut log, sevens).unwrap();
        // drop half the log, poison the scan for logged chunks
        log.0.retain(|c, _| c % 2 == 0);
        let again = run_chunks(1000, &cfg, &mut log, |s, e| {
            assert!((s / 100) % 2 == 1, "logged chunk rescanned");
            sevens(s, e)
        })
        .unwrap();
        assert_eq!(full, again);
    }
}
