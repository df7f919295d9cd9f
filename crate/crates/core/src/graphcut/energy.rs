//! Labeling energy with per-pixel data costs and a Potts smoothness term
//! over 4-connected neighbors, and the graph whose s-t cuts encode one
//! expansion move.

use super::image::{GrayImage, neighbor_pairs};
use super::network::{Capacity, FlowNetwork, Side, VertexId};
use crate::error::{Error, Result, domain};

/// Data term scale: a full-range intensity mismatch costs this much.
pub const DATA_SCALE: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyModel {
    width: usize,
    height: usize,
    labels: Vec<u8>,
    /// `data[p * labels.len() + i]` is the cost of giving pixel `p` label `labels[i]`.
    data: Vec<u64>,
    lambda: u64,
}

impl EnergyModel {
    pub fn new(
        width: usize,
        height: usize,
        labels: Vec<u8>,
        data: Vec<u64>,
        lambda: u64,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(domain("label set is empty"));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(domain("label set contains duplicates"));
        }
        if data.len() != width * height * labels.len() {
            return Err(Error::Shape(format!(
                "{} data costs for {} pixels and {} labels",
                data.len(),
                width * height,
                labels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            labels: sorted.clone(),
            data: reorder(&labels, &sorted, &data),
            lambda,
        })
    }

    /// Data term `round(|I_p - l| * 100 / 255)` against observed intensities.
    pub fn from_observed(observed: &GrayImage, labels: &[u8], lambda: u64) -> Result<Self> {
        let data = observed
            .pixels()
            .iter()
            .flat_map(|&i| {
                labels.iter().map(move |&l| {
                    (u64::from(i.abs_diff(l)) * DATA_SCALE + 127) / 255
                })
            })
            .collect();
        Self::new(
            observed.width(),
            observed.height(),
            labels.to_vec(),
            data,
            lambda,
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    /// Labels in ascending order.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    fn label_index(&self, label: u8) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn data_cost(&self, pixel: usize, label: u8) -> Result<u64> {
        let i = self
            .label_index(label)
            .ok_or_else(|| domain(format!("label {label} is not in the label set")))?;
        Ok(self.data[pixel * self.labels.len() + i])
    }

    /// Potts term: `lambda` if the labels differ, else 0.
    pub fn smoothness(&self, a: u8, b: u8) -> u64 {
        if a == b { 0 } else { self.lambda }
    }

    fn check_labeling(&self, labeling: &GrayImage) -> Result<()> {
        if labeling.width() != self.width || labeling.height() != self.height {
            return Err(Error::Shape(format!(
                "labeling is {}x{}, model is {}x{}",
                labeling.width(),
                labeling.height(),
                self.width,
                self.height
            )));
        }
        if let Some(&bad) = labeling
            .pixels()
            .iter()
            .find(|&&l| self.label_index(l).is_none())
        {
            return Err(domain(format!("labeling uses {bad}, outside the label set")));
        }
        Ok(())
    }

    pub fn energy(&self, labeling: &GrayImage) -> Result<u64> {
        self.check_labeling(labeling)?;
        let f = labeling.pixels();
        let smooth: u64 = neighbor_pairs(self.width, self.height)
            .map(|(p, q)| self.smoothness(f[p], f[q]))
            .sum();
        let data = f
            .iter()
            .enumerate()
            .map(|(p, &l)| self.data_cost(p, l))
            .sum::<Result<u64>>()?;
        Ok(smooth + data)
    }
}

fn reorder(original: &[u8], sorted: &[u8], data: &[u64]) -> Vec<u64> {
    let k = original.len();
    let pos: Vec<usize> = sorted
        .iter()
        .map(|l| original.iter().position(|o| o == l).expect("same label set"))
        .collect();
    data.chunks(k)
        .flat_map(|row| pos.iter().map(move |&i| row[i]))
        .collect()
}

/// Network for one expansion move.
///
/// Vertex 0 is the source (label alpha), vertex 1 the sink (keep the current
/// label), pixels follow in row-major order and auxiliary vertices after
/// them, one per neighboring pair whose current labels differ. A pixel that
/// ends on the sink side of a cut switches to alpha.
///
/// Every s-t cut of finite cost, with auxiliary vertices placed optimally,
/// costs exactly the energy of the labeling it induces.
#[derive(Debug, Clone)]
pub struct ExpansionGraph {
    pub net: FlowNetwork,
    pub alpha: u8,
    pub pixel_count: usize,
    pub aux_count: usize,
    /// Capacity standing in for an uncuttable link.
    pub infinity: Capacity,
}

impl ExpansionGraph {
    pub const SOURCE: VertexId = 0;
    pub const SINK: VertexId = 1;

    pub fn pixel_vertex(p: usize) -> VertexId {
        p + 2
    }

    /// Labeling induced by a cut of this graph.
    pub fn labeling_from_cut(&self, current: &GrayImage, side: &[Side]) -> GrayImage {
        let pixels = current
            .pixels()
            .iter()
            .enumerate()
            .map(|(p, &l)| {
                if side[Self::pixel_vertex(p)] == Side::Sink {
                    self.alpha
                } else {
                    l
                }
            })
            .collect();
        GrayImage::new(current.width(), current.height(), pixels)
            .expect("same shape as the current labeling")
    }
}

pub fn build_expansion_graph(
    labeling: &GrayImage,
    model: &EnergyModel,
    alpha: u8,
) -> Result<ExpansionGraph> {
    if model.label_index(alpha).is_none() {
        return Err(domain(format!("alpha {alpha} is not in the label set")));
    }
    model.check_labeling(labeling)?;
    let f = labeling.pixels();
    let pixel_count = f.len();

    let mut finite_total = 0u64;
    for (p, &l) in f.iter().enumerate() {
        finite_total += model.data_cost(p, alpha)? + model.data_cost(p, l)?;
    }
    finite_total += 3 * model.lambda * neighbor_pairs(model.width, model.height).count() as u64;
    let infinity = finite_total + 1;

    let (s, t) = (ExpansionGraph::SOURCE, ExpansionGraph::SINK);
    let mut net = FlowNetwork::new(pixel_count + 2, s, t)?;
    let add = |net: &mut FlowNetwork, u, v, c| -> Result<()> {
        if c > 0 {
            net.add_edge(u, v, c)?;
        }
        Ok(())
    };
    let add_both = |net: &mut FlowNetwork, u, v, c| -> Result<()> {
        if c > 0 {
            net.add_undirected(u, v, c)?;
        }
        Ok(())
    };

    for (p, &l) in f.iter().enumerate() {
        let v = ExpansionGraph::pixel_vertex(p);
        add(&mut net, s, v, model.data_cost(p, alpha)?)?;
        let keep = if l == alpha { infinity } else { model.data_cost(p, l)? };
        add(&mut net, v, t, keep)?;
    }

    let mut aux_count = 0;
    for (p, q) in neighbor_pairs(model.width, model.height) {
        let (fp, fq) = (f[p], f[q]);
        let (vp, vq) = (ExpansionGraph::pixel_vertex(p), ExpansionGraph::pixel_vertex(q));
        if fp == fq {
            add_both(&mut net, vp, vq, model.smoothness(fp, alpha))?;
        } else {
            let a = net.add_vertex();
            aux_count += 1;
            add_both(&mut net, vp, a, model.smoothness(fp, alpha))?;
            add_both(&mut net, a, vq, model.smoothness(alpha, fq))?;
            add(&mut net, a, t, model.smoothness(fp, fq))?;
        }
    }

    Ok(ExpansionGraph {
        net,
        alpha,
        pixel_count,
        aux_count,
        infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_model(observed: &GrayImage, lambda: u64) -> EnergyModel {
        EnergyModel::from_observed(observed, &[0, 255], lambda).unwrap()
    }

    #[test]
    fn data_term_scaling() {
        let img = GrayImage::new(3, 1, vec![0, 128, 255]).unwrap();
        let m = binary_model(&img, 1);
        assert_eq!(m.data_cost(0, 0).unwrap(), 0);
        assert_eq!(m.data_cost(0, 255).unwrap(), 100);
        assert_eq!(m.data_cost(1, 0).unwrap(), 50);
        assert_eq!(m.data_cost(1, 255).unwrap(), 50);
        assert!(m.data_cost(0, 7).is_err());
    }

    #[test]
    fn label_order_is_normalized() {
        let m = EnergyModel::new(1, 1, vec![255, 0], vec![4, 9], 1).unwrap();
        assert_eq!(m.labels(), &[0, 255]);
        assert_eq!(m.data_cost(0, 0).unwrap(), 9);
        assert_eq!(m.data_cost(0, 255).unwrap(), 4);
        assert!(EnergyModel::new(1, 1, vec![0, 0], vec![1, 1], 1).is_err());
        assert!(EnergyModel::new(1, 1, vec![0], vec![1, 1], 1).is_err());
    }

    #[test]
    fn energy_sums_both_terms() {
        let obs = GrayImage::new(2, 2, vec![0, 255, 255, 255]).unwrap();
        let m = binary_model(&obs, 7);
        let all_white = GrayImage::filled(2, 2, 255);
        assert_eq!(m.energy(&all_white).unwrap(), 100);
        assert_eq!(m.energy(&obs).unwrap(), 2 * 7);
        assert!(m.energy(&GrayImage::filled(2, 2, 3)).is_err());
        assert!(m.energy(&GrayImage::filled(1, 2, 0)).is_err());
    }

    #[test]
    fn uniform_alpha_labeling_has_no_aux() {
        let obs = GrayImage::filled(4, 4, 255);
        let g = build_expansion_graph(&obs, &binary_model(&obs, 1), 255).unwrap();
        assert_eq!(g.aux_count, 0);
        assert_eq!(g.net.vertex_count(), 2 + 16);
    }

    #[test]
    fn two_pixel_differing_labels() {
        let obs = GrayImage::new(2, 1, vec![0, 255]).unwrap();
        let g = build_expansion_graph(&obs, &binary_model(&obs, 1), 255).unwrap();
        assert_eq!(g.aux_count, 1);
        assert_eq!(g.net.vertex_count() - 2, 3);
    }

    #[test]
    fn alpha_must_be_a_label() {
        let obs = GrayImage::filled(2, 2, 0);
        let m = binary_model(&obs, 1);
        assert!(build_expansion_graph(&obs, &m, 128).is_err());
        assert!(build_expansion_graph(&GrayImage::filled(2, 2, 9), &m, 0).is_err());
    }
}
