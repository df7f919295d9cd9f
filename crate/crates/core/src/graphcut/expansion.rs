//! Alpha-expansion: repeated passes over the labels, each solving one
//! expansion move by min-cut and keeping it only if the energy drops.

use super::bk::{CutResult, bk_maxflow};
use super::energy::{EnergyModel, build_expansion_graph};
use super::image::GrayImage;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub labeling: GrayImage,
    pub energy: u64,
    pub cut: CutResult,
}

/// Best labeling within one alpha-expansion of `current`.
pub fn expansion_move(model: &EnergyModel, current: &GrayImage, alpha: u8) -> Result<MoveOutcome> {
    let graph = build_expansion_graph(current, model, alpha)?;
    let cut = bk_maxflow(&graph.net);
    let labeling = graph.labeling_from_cut(current, &cut.side);
    let energy = model.energy(&labeling)?;
    Ok(MoveOutcome {
        labeling,
        energy,
        cut,
    })
}

#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub labeling: GrayImage,
    pub energy: u64,
    /// Energy of the initial labeling followed by the energy after each
    /// accepted move.
    pub energy_trace: Vec<u64>,
    pub passes: usize,
}

/// Runs expansion moves over the labels in ascending order until a full pass
/// accepts nothing. Moves that do not strictly lower the energy are
/// rejected.
pub fn alpha_expansion(initial: &GrayImage, model: &EnergyModel) -> Result<ExpansionResult> {
    let mut labeling = initial.clone();
    let mut energy = model.energy(&labeling)?;
    let mut energy_trace = vec![energy];
    let mut passes = 0;
    loop {
        passes += 1;
        let mut success = false;
        for &alpha in model.labels() {
            let candidate = expansion_move(model, &labeling, alpha)?;
            if candidate.energy < energy {
                labeling = candidate.labeling;
                energy = candidate.energy;
                energy_trace.push(energy);
                success = true;
            }
        }
        if !success {
            break;
        }
    }
    Ok(ExpansionResult {
        labeling,
        energy,
        energy_trace,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcut::image::{Pattern, generate_test_image, threshold};
    use crate::rng::Rng;

    #[test]
    fn optimum_is_returned_unchanged() {
        let obs = GrayImage::new(3, 1, vec![0, 0, 255]).unwrap();
        let model = EnergyModel::from_observed(&obs, &[0, 255], 1).unwrap();
        let out = alpha_expansion(&obs, &model).unwrap();
        assert_eq!(out.labeling, obs);
        assert_eq!(out.passes, 1);
        assert_eq!(out.energy_trace, vec![1]);
    }

    #[test]
    fn energy_never_increases() {
        let obs = generate_test_image(16, 16, Pattern::Noise, &mut Rng::new(4));
        let model = EnergyModel::from_observed(&obs, &[0, 255], 30).unwrap();
        let init = threshold(&obs, 128);
        let out = alpha_expansion(&init, &model).unwrap();
        assert!(out.energy <= model.energy(&init).unwrap());
        assert!(out.energy_trace.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(out.energy, model.energy(&out.labeling).unwrap());
    }

    #[test]
    fn move_energy_matches_cut_value() {
        let obs = generate_test_image(6, 5, Pattern::Blobs, &mut Rng::new(12));
        let model = EnergyModel::from_observed(&obs, &[0, 255], 25).unwrap();
        let init = threshold(&obs, 100);
        for alpha in [0, 255] {
            let mv = expansion_move(&model, &init, alpha).unwrap();
            assert_eq!(mv.energy, mv.cut.max_flow);
        }
    }
}
