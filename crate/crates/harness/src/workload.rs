//! Workload registry. Maps each id to its default parameters and to the
//! prepared kernel the protocol times.

use std::collections::BTreeMap;
use std::fmt;
use std::hint::black_box;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use xbench_core::checksum::Fold;
use xbench_core::floyd::{DenseGraph, floyd_warshall};
use xbench_core::graphcut::{
    self, EnergyModel, FlowNetwork, GrayImage, Pattern, alpha_expansion, bk_maxflow,
    generate_test_image, threshold,
};
use xbench_core::{Rng, base, corpus, fft, huffman, permute};

use crate::error::{Error, Result};

/// Parameter holding the number of kernel calls per measured run.
pub const INNER_ITERATIONS: &str = "inner_iterations";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorkloadId {
    FillArrayRand,
    RecFib,
    IntCompare,
    FloydWarshall,
    Huffman,
    Permutations,
    Fft,
    MincutSingle,
    MincutExpansion,
}

impl WorkloadId {
    pub const ALL: [WorkloadId; 9] = [
        WorkloadId::FillArrayRand,
        WorkloadId::RecFib,
        WorkloadId::IntCompare,
        WorkloadId::FloydWarshall,
        WorkloadId::Huffman,
        WorkloadId::Permutations,
        WorkloadId::Fft,
        WorkloadId::MincutSingle,
        WorkloadId::MincutExpansion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WorkloadId::FillArrayRand => "fill_array_rand",
            WorkloadId::RecFib => "rec_fib",
            WorkloadId::IntCompare => "int_compare",
            WorkloadId::FloydWarshall => "floyd_warshall",
            WorkloadId::Huffman => "huffman",
            WorkloadId::Permutations => "permutations",
            WorkloadId::Fft => "fft",
            WorkloadId::MincutSingle => "mincut_single",
            WorkloadId::MincutExpansion => "mincut_expansion",
        }
    }

    pub fn valid_list() -> String {
        Self::ALL.map(Self::as_str).join(", ")
    }

    /// Default parameters, at the scale of the original measurements.
    pub fn defaults(self) -> &'static [(&'static str, u64)] {
        match self {
            WorkloadId::FillArrayRand => &[("n", 1_000_000), (INNER_ITERATIONS, 1)],
            WorkloadId::RecFib => &[("n", 40), (INNER_ITERATIONS, 1)],
            WorkloadId::IntCompare => &[("pairs", 10_000_000), (INNER_ITERATIONS, 1)],
            WorkloadId::FloydWarshall => &[("vertices", 1000), ("max_weight", 100), (INNER_ITERATIONS, 1)],
            WorkloadId::Huffman => &[(INNER_ITERATIONS, 100_000)],
            WorkloadId::Permutations => &[("n", 9), (INNER_ITERATIONS, 1)],
            WorkloadId::Fft => &[("size", 1024), (INNER_ITERATIONS, 100_000)],
            WorkloadId::MincutSingle | WorkloadId::MincutExpansion => &[
                ("size", 100),
                ("threshold", 128),
                ("lambda", graphcut::DEFAULT_LAMBDA),
                (INNER_ITERATIONS, 1),
            ],
        }
    }
}

impl fmt::Display for WorkloadId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for WorkloadId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownWorkload(s.to_string()))
    }
}

/// A workload id with concrete parameters and seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadSpec {
    pub id: WorkloadId,
    pub params: BTreeMap<String, u64>,
    pub seed: u64,
}

impl WorkloadSpec {
    pub fn new(id: WorkloadId, seed: u64) -> Self {
        Self {
            id,
            params: id
                .defaults()
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            seed,
        }
    }

    /// Overrides one parameter. Keys the workload does not know are refused.
    pub fn set(&mut self, key: &str, value: u64) -> Result<()> {
        match self.params.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::Config(format!(
                "workload {} has no parameter '{key}' (known: {})",
                self.id,
                self.params.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn with(mut self, key: &str, value: u64) -> Result<Self> {
        self.set(key, value)?;
        Ok(self)
    }

    pub fn param(&self, key: &str) -> u64 {
        self.params[key]
    }

    pub fn inner_iterations(&self) -> u64 {
        self.param(INNER_ITERATIONS)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("{}: {msg}", self.id)));
        if self.inner_iterations() == 0 {
            return bad("inner_iterations must be >= 1".into());
        }
        match self.id {
            WorkloadId::RecFib if self.param("n") > u64::from(base::FIB_MAX_N) => {
                bad(format!("n must be <= {}", base::FIB_MAX_N))
            }
            WorkloadId::Permutations
                if !(1..=permute::MAX_PERMUTATION_LEN as u64).contains(&self.param("n")) =>
            {
                bad(format!("n must be in 1..={}", permute::MAX_PERMUTATION_LEN))
            }
            WorkloadId::Fft if !self.param("size").is_power_of_two() => {
                bad("size must be a power of two".into())
            }
            WorkloadId::MincutSingle | WorkloadId::MincutExpansion
                if self.param("size") == 0 || self.param("threshold") > 255 =>
            {
                bad("size must be >= 1 and threshold <= 255".into())
            }
            WorkloadId::FloydWarshall
                if self.param("vertices") == 0 || self.param("max_weight") == 0 =>
            {
                bad("vertices and max_weight must be >= 1".into())
            }
            _ => Ok(()),
        }
    }

    /// Builds the kernel. Input generation happens here, outside any timed
    /// region.
    pub fn prepare(&self) -> Result<Box<dyn Kernel>> {
        self.validate()?;
        let kernel_err = |source| Error::Kernel {
            workload: self.id.to_string(),
            source,
        };
        let seed = self.seed;
        Ok(match self.id {
            WorkloadId::FillArrayRand => Box::new(FillArray {
                n: self.param("n") as usize,
                seed,
            }),
            WorkloadId::RecFib => Box::new(RecFib {
                n: self.param("n") as u32,
            }),
            WorkloadId::IntCompare => Box::new(IntCompare {
                pairs: self.param("pairs"),
                seed,
            }),
            WorkloadId::FloydWarshall => {
                let graph = DenseGraph::random_complete(
                    self.param("vertices") as usize,
                    self.param("max_weight") as u32,
                    &mut Rng::new(seed),
                )
                .map_err(kernel_err)?;
                Box::new(FloydWarshall { graph })
            }
            WorkloadId::Huffman => Box::new(HuffmanCycle {
                text: corpus::LOREM_IPSUM.as_bytes(),
            }),
            WorkloadId::Permutations => Box::new(Permutations {
                text: permute::alphabet_prefix(self.param("n") as usize),
            }),
            WorkloadId::Fft => Box::new(Fft {
                signal: fft::random_signal(self.param("size") as usize, &mut Rng::new(seed)),
            }),
            WorkloadId::MincutSingle => {
                let observed = self.mincut_image();
                let (_, _, graph) = graphcut::extract_graph(
                    &observed,
                    self.param("threshold") as u8,
                    self.param("lambda"),
                )
                .map_err(kernel_err)?;
                Box::new(MincutSingle { net: graph.net })
            }
            WorkloadId::MincutExpansion => {
                let observed = self.mincut_image();
                let model = EnergyModel::from_observed(
                    &observed,
                    &graphcut::BINARY_LABELS,
                    self.param("lambda"),
                )
                .map_err(kernel_err)?;
                Box::new(MincutExpansion {
                    initial: threshold(&observed, self.param("threshold") as u8),
                    model,
                })
            }
        })
    }

    fn mincut_image(&self) -> GrayImage {
        let size = self.param("size") as usize;
        generate_test_image(size, size, Pattern::Blobs, &mut Rng::new(self.seed))
    }
}

/// One prepared workload. Each call performs the full kernel once and
/// returns a checksum of its output.
pub trait Kernel {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error>;
}

struct FillArray {
    n: usize,
    seed: u64,
}

impl Kernel for FillArray {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        base::fill_array_rand(black_box(self.n), &mut Rng::new(self.seed))
    }
}

struct RecFib {
    n: u32,
}

impl Kernel for RecFib {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        base::fib_recursive(black_box(self.n))
    }
}

struct IntCompare {
    pairs: u64,
    seed: u64,
}

impl Kernel for IntCompare {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        let t = base::int_compare(black_box(self.pairs), &mut Rng::new(self.seed))?;
        Ok(Fold::new().push(t.less).push(t.equal).push(t.greater).finish())
    }
}

struct FloydWarshall {
    graph: DenseGraph,
}

impl Kernel for FloydWarshall {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        Ok(floyd_warshall(black_box(&self.graph)).checksum())
    }
}

struct HuffmanCycle {
    text: &'static [u8],
}

impl Kernel for HuffmanCycle {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        let run = huffman::coding_cycle(black_box(self.text))?;
        Ok(Fold::new()
            .push(run.encoded_bits)
            .push(run.weighted_length)
            .finish())
    }
}

struct Permutations {
    text: String,
}

impl Kernel for Permutations {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        let out = permute::permutations(black_box(&self.text))?;
        let mut fold = Fold::new();
        fold.push(out.len() as u64);
        for s in [out.first(), out.last()].into_iter().flatten() {
            fold.push_bytes(s.as_bytes());
        }
        Ok(fold.finish())
    }
}

struct Fft {
    signal: fft::ComplexVector,
}

impl Kernel for Fft {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        let spectrum = fft::fft_recursive(black_box(&self.signal))?;
        let mut fold = Fold::new();
        for v in &spectrum {
            fold.push_rounded(v.re).push_rounded(v.im);
        }
        Ok(fold.finish())
    }
}

struct MincutSingle {
    net: FlowNetwork,
}

impl Kernel for MincutSingle {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        let cut = bk_maxflow(black_box(&self.net));
        Ok(Fold::new()
            .push(cut.max_flow)
            .push(cut.source_side_count() as u64)
            .finish())
    }
}

struct MincutExpansion {
    initial: GrayImage,
    model: EnergyModel,
}

impl Kernel for MincutExpansion {
    fn run_once(&mut self) -> std::result::Result<u64, xbench_core::Error> {
        let out = alpha_expansion(black_box(&self.initial), &self.model)?;
        let foreground = out.labeling.pixels().iter().filter(|&&p| p == 255).count();
        Ok(Fold::new()
            .push(out.energy)
            .push(foreground as u64)
            .finish())
    }
}
