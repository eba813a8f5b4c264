//! Chunked, deterministic parallel sampling.
//!
//! Samples are cut into fixed-size chunks and chunk `c` always draws from
//! `RngStream::new(seed, c)`. Workers pull chunk indices from a shared
//! counter and the per-chunk results are handed back in chunk order, so the
//! merged output depends on `(seed, samples, chunk_size)` but not on the
//! number of workers or on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::RngStream;

pub const DEFAULT_CHUNK_SIZE: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingPlan {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub chunk_size: u64,
}

impl SamplingPlan {
    /// Single worker, default chunk size.
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: 1,
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_chunk_size(mut self, chunk_size: u64) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidArgument("chunk size must be at least 1".into()));
        }
        Ok(())
    }

    pub fn n_chunks(&self) -> u64 {
        self.samples.div_ceil(self.chunk_size)
    }

    /// Number of samples in chunk `c`.
    pub fn chunk_len(&self, c: u64) -> u64 {
        let start = c * self.chunk_size;
        self.chunk_size.min(self.samples - start)
    }
}

/// Runs `body(rng, n)` once per chunk and returns the results in chunk order.
///
/// On failure the error of the lowest failing chunk is returned; workers
/// stop picking up new chunks once any chunk has failed.
pub fn map_chunks<T, F>(plan: &SamplingPlan, body: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream, u64) -> Result<T> + Sync,
{
    plan.validate()?;
    let n_chunks = plan.n_chunks();
    let run = |c: u64| body(&mut RngStream::new(plan.seed, c), plan.chunk_len(c));

    let workers = (plan.workers as u64).min(n_chunks) as usize;
    if workers == 1 {
        return (0..n_chunks).map(run).collect();
    }

    let next = AtomicU64::new(0);
    let failed = AtomicBool::new(false);
    let done: Mutex<Vec<(u64, Result<T>)>> = Mutex::new(Vec::with_capacity(n_chunks as usize));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                let mut local = Vec::new();
                loop {
                    if failed.load(Ordering::Relaxed) {
                        break;
                    }
                    let c = next.fetch_add(1, Ordering::Relaxed);
                    if c >= n_chunks {
                        break;
                    }
                    let r = run(c);
                    if r.is_err() {
                        failed.store(true, Ordering::Relaxed);
                    }
                    local.push((c, r));
                }
                done.lock().expect("no worker panics while holding the lock").extend(local);
            });
        }
    });

    let mut done = done.into_inner().expect("workers joined");
    done.sort_by_key(|(c, _)| *c);
    if let Some(pos) = done.iter().position(|(_, r)| r.is_err()) {
        return Err(done.swap_remove(pos).1.err().expect("position found an error"));
    }
    Ok(done.into_iter().map(|(_, r)| r.expect("no errors left")).collect())
}
