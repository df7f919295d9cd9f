//! WebAssembly entry points for the benchmark kernels.
//!
//! Every workload is exported as `run_<id>(seed_lo, seed_hi, inner_iterations,
//! params...) -> f64`. The 64-bit seed is split into two `u32` halves. The
//! workload parameters follow in the order listed on each export, all as
//! `u32`. A call prepares the inputs, then times one loop of
//! `inner_iterations` kernel calls with the host clock. It returns the
//! elapsed milliseconds, or `-1.0` when the parameters are invalid or the
//! kernel fails.
//!
//! The checksum of the last successful call is read back with
//! `get_checksum() -> u64` or `get_checksum_lo() / get_checksum_hi() -> u32`.
//!
//! The only import is `env.now_ms() -> f64`, a monotonic millisecond clock.
//! Native builds use the platform clock instead, so the same exports can be
//! called directly from Rust.

use std::sync::atomic::{AtomicU64, Ordering};

use xbench_harness::protocol::{RunGuard, measure};
use xbench_harness::workload::INNER_ITERATIONS;
use xbench_harness::{Clock, WorkloadId, WorkloadSpec};

#[cfg(target_arch = "wasm32")]
mod host {
    #[link(wasm_import_module = "env")]
    unsafe extern "C" {
        pub fn now_ms() -> f64;
    }
}

struct HostClock;

impl Clock for HostClock {
    #[cfg(target_arch = "wasm32")]
    fn now_ms(&self) -> f64 {
        // SAFETY: the host function takes no arguments and has no preconditions.
        unsafe { host::now_ms() }
    }

    #[cfg(not(target_arch = "wasm32"))]
    fn now_ms(&self) -> f64 {
        use std::sync::OnceLock;
        use std::time::Instant;
        static ORIGIN: OnceLock<Instant> = OnceLock::new();
        ORIGIN.get_or_init(Instant::now).elapsed().as_secs_f64() * 1e3
    }
}

static CHECKSUM: AtomicU64 = AtomicU64::new(0);

fn try_run(
    id: WorkloadId,
    seed: u64,
    inner: u32,
    params: &[(&str, u32)],
) -> xbench_harness::Result<f64> {
    let mut spec = WorkloadSpec::new(id, seed);
    spec.set(INNER_ITERATIONS, u64::from(inner))?;
    for &(key, value) in params {
        spec.set(key, u64::from(value))?;
    }
    let mut kernel = spec.prepare()?;
    let _guard = RunGuard::acquire()?;
    let m = measure(kernel.as_mut(), spec.inner_iterations(), &HostClock, id)?;
    CHECKSUM.store(m.checksum, Ordering::Relaxed);
    Ok(m.elapsed_ms)
}

fn run(id: WorkloadId, seed_lo: u32, seed_hi: u32, inner: u32, params: &[(&str, u32)]) -> f64 {
    let seed = u64::from(seed_hi) << 32 | u64::from(seed_lo);
    match try_run(id, seed, inner, params) {
        Ok(ms) => ms,
        Err(_) => {
            CHECKSUM.store(0, Ordering::Relaxed);
            -1.0
        }
    }
}

/// Params: `n`.
#[unsafe(no_mangle)]
pub extern "C" fn run_fill_array_rand(seed_lo: u32, seed_hi: u32, inner: u32, n: u32) -> f64 {
    run(WorkloadId::FillArrayRand, seed_lo, seed_hi, inner, &[("n", n)])
}

/// Params: `n`.
#[unsafe(no_mangle)]
pub extern "C" fn run_rec_fib(seed_lo: u32, seed_hi: u32, inner: u32, n: u32) -> f64 {
    run(WorkloadId::RecFib, seed_lo, seed_hi, inner, &[("n", n)])
}

/// Params: `pairs`.
#[unsafe(no_mangle)]
pub extern "C" fn run_int_compare(seed_lo: u32, seed_hi: u32, inner: u32, pairs: u32) -> f64 {
    run(WorkloadId::IntCompare, seed_lo, seed_hi, inner, &[("pairs", pairs)])
}

/// Params: `vertices`, `max_weight`.
#[unsafe(no_mangle)]
pub extern "C" fn run_floyd_warshall(
    seed_lo: u32,
    seed_hi: u32,
    inner: u32,
    vertices: u32,
    max_weight: u32,
) -> f64 {
    run(
        WorkloadId::FloydWarshall,
        seed_lo,
        seed_hi,
        inner,
        &[("vertices", vertices), ("max_weight", max_weight)],
    )
}

/// No params beyond the common ones.
#[unsafe(no_mangle)]
pub extern "C" fn run_huffman(seed_lo: u32, seed_hi: u32, inner: u32) -> f64 {
    run(WorkloadId::Huffman, seed_lo, seed_hi, inner, &[])
}

/// Params: `n`.
#[unsafe(no_mangle)]
pub extern "C" fn run_permutations(seed_lo: u32, seed_hi: u32, inner: u32, n: u32) -> f64 {
    run(WorkloadId::Permutations, seed_lo, seed_hi, inner, &[("n", n)])
}

/// Params: `size`.
#[unsafe(no_mangle)]
pub extern "C" fn run_fft(seed_lo: u32, seed_hi: u32, inner: u32, size: u32) -> f64 {
    run(WorkloadId::Fft, seed_lo, seed_hi, inner, &[("size", size)])
}

/// Params: `size`, `threshold`, `lambda`.
#[unsafe(no_mangle)]
pub extern "C" fn run_mincut_single(
    seed_lo: u32,
    seed_hi: u32,
    inner: u32,
    size: u32,
    threshold: u32,
    lambda: u32,
) -> f64 {
    let params = [("size", size), ("threshold", threshold), ("lambda", lambda)];
    run(WorkloadId::MincutSingle, seed_lo, seed_hi, inner, &params)
}

/// Params: `size`, `threshold`, `lambda`.
#[unsafe(no_mangle)]
pub extern "C" fn run_mincut_expansion(
    seed_lo: u32,
    seed_hi: u32,
    inner: u32,
    size: u32,
    threshold: u32,
    lambda: u32,
) -> f64 {
    let params = [("size", size), ("threshold", threshold), ("lambda", lambda)];
    run(WorkloadId::MincutExpansion, seed_lo, seed_hi, inner, &params)
}

#[unsafe(no_mangle)]
pub extern "C" fn get_checksum() -> u64 {
    CHECKSUM.load(Ordering::Relaxed)
}

#[unsafe(no_mangle)]
pub extern "C" fn get_checksum_lo() -> u32 {
    CHECKSUM.load(Ordering::Relaxed) as u32
}

#[unsafe(no_mangle)]
pub extern "C" fn get_checksum_hi() -> u32 {
    (CHECKSUM.load(Ordering::Relaxed) >> 32) as u32
}

/// Export names and their workload-specific parameter keys, in argument
/// order after `(seed_lo, seed_hi, inner_iterations)`.
pub const EXPORTS: [(WorkloadId, &str, &[&str]); 9] = [
    (WorkloadId::FillArrayRand, "run_fill_array_rand", &["n"]),
    (WorkloadId::RecFib, "run_rec_fib", &["n"]),
    (WorkloadId::IntCompare, "run_int_compare", &["pairs"]),
    (WorkloadId::FloydWarshall, "run_floyd_warshall", &["vertices", "max_weight"]),
    (WorkloadId::Huffman, "run_huffman", &[]),
    (WorkloadId::Permutations, "run_permutations", &["n"]),
    (WorkloadId::Fft, "run_fft", &["size"]),
    (WorkloadId::MincutSingle, "run_mincut_single", &["size", "threshold", "lambda"]),
    (WorkloadId::MincutExpansion, "run_mincut_expansion", &["size", "threshold", "lambda"]),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn export_table_matches_parameter_defaults() {
        for (id, name, keys) in EXPORTS {
            assert_eq!(name, format!("run_{id}"));
            let mut want: Vec<&str> = id
                .defaults()
                .iter()
                .map(|&(k, _)| k)
                .filter(|&k| k != INNER_ITERATIONS)
                .collect();
            let mut got = keys.to_vec();
            want.sort_unstable();
            got.sort_unstable();
            assert_eq!(got, want, "{id}");
        }
        assert_eq!(EXPORTS.map(|e| e.0), WorkloadId::ALL);
    }

    #[test]
    fn native_calls_report_checksums() {
        assert!(run_rec_fib(7, 0, 2, 10) >= 0.0);
        assert_eq!(get_checksum(), 55);
        assert_eq!((get_checksum_lo(), get_checksum_hi()), (55, 0));
        assert_eq!(run_fft(1, 0, 1, 12), -1.0);
        assert_eq!(get_checksum(), 0);
        assert_eq!(run_rec_fib(0, 0, 0, 10), -1.0);
    }
}
