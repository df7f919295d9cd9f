//! Graph-cut segmentation: images, flow networks, the two-tree max-flow
//! solver and alpha-expansion.

pub mod bk;
pub mod energy;
pub mod expansion;
pub mod image;
pub mod network;

pub use bk::{BkSolver, CutResult, TreeTag, bk_maxflow};
pub use energy::{EnergyModel, ExpansionGraph, build_expansion_graph};
pub use expansion::{ExpansionResult, MoveOutcome, alpha_expansion, expansion_move};
pub use image::{GrayImage, Pattern, PgmFormat, generate_test_image, read_pgm, threshold, write_pgm};
pub use network::{FlowNetwork, Side, cut_cost, load_graph, read_graph, save_graph, write_graph};

use crate::error::Result;

/// Label set of the binary segmentation pipeline.
pub const BINARY_LABELS: [u8; 2] = [0, 255];

/// Foreground label whose expansion move the single-move pipeline solves.
pub const FOREGROUND: u8 = 255;

/// Potts weight used by the benchmarks.
pub const DEFAULT_LAMBDA: u64 = 1;

/// Thresholds `observed` and builds the expansion graph for the foreground
/// label, with data costs taken from the observed intensities.
pub fn extract_graph(observed: &GrayImage, t: u8, lambda: u64) -> Result<(GrayImage, EnergyModel, ExpansionGraph)> {
    let initial = threshold(observed, t);
    let model = EnergyModel::from_observed(observed, &BINARY_LABELS, lambda)?;
    let graph = build_expansion_graph(&initial, &model, FOREGROUND)?;
    Ok((initial, model, graph))
}

#[derive(Debug, Clone)]
pub struct Segmentation {
    pub labeling: GrayImage,
    pub max_flow: u64,
    pub energy: u64,
}

/// Threshold, extract the foreground graph and solve one expansion move.
pub fn segment(observed: &GrayImage, t: u8, lambda: u64) -> Result<Segmentation> {
    let (initial, model, graph) = extract_graph(observed, t, lambda)?;
    let cut = bk_maxflow(&graph.net);
    let labeling = graph.labeling_from_cut(&initial, &cut.side);
    let energy = model.energy(&labeling)?;
    Ok(Segmentation {
        labeling,
        max_flow: cut.max_flow,
        energy,
    })
}
