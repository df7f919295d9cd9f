//! Measurement protocol: unmeasured warmup runs, then timed repetitions,
//! each timing exactly one loop of `inner_iterations` kernel calls.

use std::hint::black_box;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::clock::Clock;
use crate::error::{Error, Result};
use crate::record::{BenchRecord, Target};
use crate::stats::stats;
use crate::workload::{Kernel, WorkloadId, WorkloadSpec};

pub const DEFAULT_REPETITIONS: u64 = 10;
pub const DEFAULT_WARMUP: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Protocol {
    pub repetitions: u64,
    pub warmup: u64,
}

impl Default for Protocol {
    fn default() -> Self {
        Self {
            repetitions: DEFAULT_REPETITIONS,
            warmup: DEFAULT_WARMUP,
        }
    }
}

/// Descriptive fields copied into every record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunMeta {
    pub env: String,
    pub target: Target,
    pub timestamp: Option<String>,
    pub host: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub elapsed_ms: f64,
    /// Checksum returned by the last kernel call.
    pub checksum: u64,
}

/// Times one run of `inner` kernel calls.
pub fn measure(kernel: &mut dyn Kernel, inner: u64, clock: &dyn Clock, workload: WorkloadId) -> Result<Measurement> {
    let start = clock.now_ms();
    let mut checksum = 0;
    for _ in 0..inner {
        checksum = black_box(kernel.run_once().map_err(|source| Error::Kernel {
            workload: workload.to_string(),
            source,
        })?);
    }
    let elapsed_ms = clock.now_ms() - start;
    Ok(Measurement {
        elapsed_ms,
        checksum,
    })
}

static RUNNING: AtomicBool = AtomicBool::new(false);

/// Held while a workload runs; a second concurrent acquisition fails.
#[derive(Debug)]
pub struct RunGuard(());

impl RunGuard {
    pub fn acquire() -> Result<Self> {
        RUNNING
            .compare_exchange(false, true, Ordering::AcqRel, Ordering::Acquire)
            .map(|_| RunGuard(()))
            .map_err(|_| Error::Busy)
    }
}

impl Drop for RunGuard {
    fn drop(&mut self) {
        RUNNING.store(false, Ordering::Release);
    }
}

/// Warmup and timed repetitions of a prepared kernel. Returns the samples
/// and the checksum of the final repetition.
pub fn run_kernel(
    kernel: &mut dyn Kernel,
    spec: &WorkloadSpec,
    clock: &dyn Clock,
    protocol: Protocol,
) -> Result<(Vec<f64>, u64)> {
    if protocol.repetitions == 0 {
        return Err(Error::Config("repetitions must be >= 1".into()));
    }
    let inner = spec.inner_iterations();
    for _ in 0..protocol.warmup {
        measure(kernel, inner, clock, spec.id)?;
    }
    let mut samples = Vec::with_capacity(protocol.repetitions as usize);
    let mut checksum = 0;
    for _ in 0..protocol.repetitions {
        let m = measure(kernel, inner, clock, spec.id)?;
        samples.push(m.elapsed_ms);
        checksum = m.checksum;
    }
    Ok((samples, checksum))
}

pub fn run_workload(
    spec: &WorkloadSpec,
    clock: &dyn Clock,
    protocol: Protocol,
    meta: &RunMeta,
) -> Result<BenchRecord> {
    let _guard = RunGuard::acquire()?;
    let mut kernel = spec.prepare()?;
    let (samples_ms, result_checksum) = run_kernel(kernel.as_mut(), spec, clock, protocol)?;
    let (mean_ms, std_ms) = stats(&samples_ms)?;
    Ok(BenchRecord {
        workload: spec.id,
        params: spec.params.clone(),
        env: meta.env.clone(),
        target: meta.target,
        seed: spec.seed,
        repetitions: protocol.repetitions,
        samples_ms,
        mean_ms,
        std_ms,
        result_checksum,
        timestamp: meta.timestamp.clone(),
        host: meta.host.clone(),
    })
}
