//! Parallel verification with wall-clock timing.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use binomv_core::verify::{verify_with, Clock, VerifyConfig};
use binomv_core::{Identity, Report, Verdict};

/// Milliseconds since construction.
#[derive(Debug, Clone, Copy)]
pub struct StdClock(Instant);

impl StdClock {
    pub fn new() -> Self {
        StdClock(Instant::now())
    }
}

impl Default for StdClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for StdClock {
    fn now_ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

/// Verifies on up to `jobs` threads; verdicts keep the input order.
pub fn verify_all(identities: &[Identity], cfg: &VerifyConfig, jobs: usize) -> Report {
    let clock = StdClock::new();
    let jobs = jobs.clamp(1, identities.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Verdict>>> = identities.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(id) = identities.get(i) else { break };
                let v = verify_with(id, cfg, &clock);
                *slots[i].lock().expect("unpoisoned") = Some(v);
            });
        }
    });
    let verdicts = slots.into_iter().map(|m| m.into_inner().expect("unpoisoned").expect("every slot filled")).collect();
    Report::assemble(verdicts, *cfg)
}

/// Default worker count.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
