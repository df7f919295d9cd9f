//! Benchmark kernels. Each module holds one workload family, from the small
//! integer loops in [`base`] up to graph-cut segmentation in [`graphcut`].
//!
//! Every kernel is deterministic for a given input and seed and builds for
//! both native targets and `wasm32-unknown-unknown`.

pub mod base;
pub mod checksum;
pub mod corpus;
pub mod error;
pub mod fft;
pub mod floyd;
pub mod graphcut;
pub mod huffman;
pub mod permute;
pub mod rng;

pub use error::{Error, Result};
pub use rng::Rng;
