use xbench_core::Rng;
use xbench_core::graphcut::{
    EnergyModel, ExpansionGraph, GrayImage, Side, alpha_expansion, bk_maxflow, build_expansion_graph,
    cut_cost, expansion_move,
};
use xbench_oracles::{grid_potts_energy, min_over_labelings};

const LABELS: [u8; 2] = [0, 255];

/// Random data costs in `[0, 100)`, random Potts weight in `[0, 60)`.
fn random_model(rng: &mut Rng, width: usize, height: usize, labels: &[u8]) -> EnergyModel {
    let data = (0..width * height * labels.len())
        .map(|_| rng.next_below(100))
        .collect();
    EnergyModel::new(width, height, labels.to_vec(), data, rng.next_below(60)).unwrap()
}

fn random_labeling(rng: &mut Rng, width: usize, height: usize, labels: &[u8]) -> GrayImage {
    let px = (0..width * height)
        .map(|_| labels[rng.next_below(labels.len() as u64) as usize])
        .collect();
    GrayImage::new(width, height, px).unwrap()
}

fn oracle_energy(model: &EnergyModel, labeling: &[u8]) -> u64 {
    grid_potts_energy(
        model.width(),
        model.height(),
        |p, l| model.data_cost(p, l).unwrap(),
        model.lambda(),
        labeling,
    )
}

/// Cost of the cheapest cut that puts the pixels on the given sides, with
/// every auxiliary vertex placed both ways exhaustively.
fn min_cut_with_pixels(graph: &ExpansionGraph, pixel_sides: &[Side]) -> u64 {
    let n = graph.net.vertex_count();
    let aux: Vec<usize> = (2 + graph.pixel_count..n).collect();
    let mut side = vec![Side::Sink; n];
    side[ExpansionGraph::SOURCE] = Side::Source;
    for (p, &s) in pixel_sides.iter().enumerate() {
        side[ExpansionGraph::pixel_vertex(p)] = s;
    }
    (0u64..1 << aux.len())
        .map(|mask| {
            for (bit, &v) in aux.iter().enumerate() {
                side[v] = if mask >> bit & 1 == 1 { Side::Source } else { Side::Sink };
            }
            cut_cost(&graph.net, &side).unwrap()
        })
        .min()
        .unwrap()
}

#[test]
fn cut_value_equals_energy_for_every_move() {
    let mut rng = Rng::new(31);
    for case in 0..12 {
        let (w, h) = if case % 3 == 0 { (2, 2) } else { (3, 3) };
        let labels: &[u8] = if case % 2 == 0 { &LABELS } else { &[0, 128, 255] };
        let model = random_model(&mut rng, w, h, labels);
        let current = random_labeling(&mut rng, w, h, labels);
        for &alpha in labels {
            let graph = build_expansion_graph(&current, &model, alpha).unwrap();
            let free: Vec<usize> = (0..w * h).filter(|&p| current.pixels()[p] != alpha).collect();
            for mask in 0u64..1 << free.len() {
                let mut sides = vec![Side::Sink; w * h];
                let mut labeling = vec![alpha; w * h];
                for (bit, &p) in free.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        sides[p] = Side::Source;
                        labeling[p] = current.pixels()[p];
                    }
                }
                assert_eq!(
                    min_cut_with_pixels(&graph, &sides),
                    oracle_energy(&model, &labeling),
                    "case {case}, alpha {alpha}, mask {mask:b}"
                );
            }
        }
    }
}

#[test]
fn max_flow_is_the_best_move_energy() {
    let mut rng = Rng::new(8);
    for _ in 0..20 {
        let model = random_model(&mut rng, 3, 3, &LABELS);
        let current = random_labeling(&mut rng, 3, 3, &LABELS);
        for alpha in LABELS {
            let graph = build_expansion_graph(&current, &model, alpha).unwrap();
            let flow = bk_maxflow(&graph.net).max_flow;
            let free: Vec<usize> = (0..9).filter(|&p| current.pixels()[p] != alpha).collect();
            let best_cut = (0u64..1 << free.len())
                .map(|mask| {
                    let mut sides = vec![Side::Sink; 9];
                    for (bit, &p) in free.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            sides[p] = Side::Source;
                        }
                    }
                    min_cut_with_pixels(&graph, &sides)
                })
                .min()
                .unwrap();
            assert_eq!(flow, best_cut);
            let mv = expansion_move(&model, &current, alpha).unwrap();
            assert_eq!(mv.energy, flow);
        }
    }
}

#[test]
fn binary_expansion_reaches_global_minimum() {
    let mut rng = Rng::new(2718);
    for _ in 0..20 {
        let model = random_model(&mut rng, 4, 4, &LABELS);
        let init = random_labeling(&mut rng, 4, 4, &LABELS);
        let out = alpha_expansion(&init, &model).unwrap();
        let best = min_over_labelings(16, &LABELS, |f| oracle_energy(&model, f));
        assert_eq!(out.energy, best);
        assert_eq!(out.energy, oracle_energy(&model, out.labeling.pixels()));
    }
}

#[test]
fn multi_label_expansion_is_monotone() {
    let mut rng = Rng::new(6);
    for _ in 0..10 {
        let labels = [0, 85, 170, 255];
        let model = random_model(&mut rng, 5, 4, &labels);
        let init = random_labeling(&mut rng, 5, 4, &labels);
        let out = alpha_expansion(&init, &model).unwrap();
        assert!(out.energy_trace.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(out.energy_trace.last(), Some(&out.energy));
        // A converged labeling admits no improving expansion.
        for alpha in labels {
            assert!(expansion_move(&model, &out.labeling, alpha).unwrap().energy >= out.energy);
        }
    }
}
