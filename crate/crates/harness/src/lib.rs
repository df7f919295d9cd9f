//! Measurement harness. Times prepared workloads under a fixed protocol
//! and reads and writes the versioned result schema.

pub mod clock;
pub mod error;
pub mod protocol;
pub mod record;
pub mod stats;
pub mod summary;
pub mod workload;

#[cfg(not(target_arch = "wasm32"))]
pub use clock::MonotonicClock;
pub use clock::{Clock, SteppingClock};
pub use error::{Error, Result};
pub use protocol::{Protocol, RunMeta, run_kernel, run_workload};
pub use record::{BenchRecord, ResultFile, Target};
pub use stats::stats;
pub use summary::{Summary, render_csv, render_markdown, summarize};
pub use workload::{Kernel, WorkloadId, WorkloadSpec};
