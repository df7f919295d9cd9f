use std::collections::HashSet;

use num_complex::Complex64;
use proptest::prelude::*;
use xbench_core::corpus::LOREM_IPSUM;
use xbench_core::fft::{dft_naive, energy, fft_recursive, ifft_recursive, random_signal};
use xbench_core::floyd::{DenseGraph, INF, floyd_warshall};
use xbench_core::huffman::{CodeTable, frequencies, huffman_build, huffman_decode, huffman_encode};
use xbench_core::permute::{alphabet_prefix, permutations};
use xbench_core::{Rng, base};
use xbench_oracles::{dijkstra_all_sources, factorial, fib_iterative, optimal_code_length};

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.re - y.re).abs().max((x.im - y.im).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn floyd_warshall_matches_dijkstra() {
    let mut rng = Rng::new(50);
    for i in 0..20 {
        let density = [0.05, 0.2, 1.0][i % 3];
        let g = DenseGraph::random_sparse(50, 100, density, &mut rng).unwrap();
        let d = floyd_warshall(&g);
        let oracle = dijkstra_all_sources(50, g.as_slice(), INF);
        for (u, row) in oracle.iter().enumerate() {
            for (v, want) in row.iter().enumerate() {
                assert_eq!(want.map_or(INF, |x| x as u32), d.get(u, v), "({u},{v})");
            }
        }
    }
}

#[test]
fn fib_recursive_matches_iterative() {
    for n in [0, 1, 2, 10, 25, 32] {
        assert_eq!(base::fib_recursive(n).unwrap(), fib_iterative(n));
    }
}

#[test]
fn huffman_optimal_on_small_alphabets() {
    let mut rng = Rng::new(3);
    for _ in 0..100 {
        let k = 2 + rng.next_below(5) as usize;
        let weights: Vec<(u8, u64)> = (0..k).map(|s| (b'a' + s as u8, 1 + rng.next_below(50))).collect();
        let table = CodeTable::from_tree(&huffman_build(&weights).unwrap());
        let plain: Vec<u64> = weights.iter().map(|w| w.1).collect();
        assert_eq!(table.weighted_length(&weights).unwrap(), optimal_code_length(&plain));
    }
}

#[test]
fn huffman_on_counted_text() {
    let w = frequencies(b"aabbbcccc");
    let table = CodeTable::from_tree(&huffman_build(&w).unwrap());
    assert_eq!(table.weighted_length(&w).unwrap(), optimal_code_length(&[2, 3, 4]));
}

#[test]
fn lorem_ipsum_round_trip() {
    let text = LOREM_IPSUM.as_bytes();
    let w = frequencies(text);
    let tree = huffman_build(&w).unwrap();
    let table = CodeTable::from_tree(&tree);
    assert!(table.is_prefix_free());
    assert!(table.satisfies_kraft_equality());
    assert_eq!(tree.root_freq(), text.len() as u64);
    assert_eq!(tree.internal_count() + 1, tree.leaf_count());
    let bits = huffman_encode(text, &table).unwrap();
    assert_eq!(bits.len() as u64, table.weighted_length(&w).unwrap());
    assert_eq!(huffman_decode(&bits, &tree).unwrap(), text);
}

#[test]
fn permutation_counts() {
    for n in 1..=8 {
        let out = permutations(&alphabet_prefix(n)).unwrap();
        assert_eq!(out.len() as u64, factorial(n as u64));
        let distinct: HashSet<&String> = out.iter().collect();
        assert_eq!(distinct.len(), out.len());
    }
}

#[test]
fn fft_matches_naive_up_to_4096() {
    let mut rng = Rng::new(1);
    for log in 0..=12 {
        let x = random_signal(1 << log, &mut rng);
        let fast = fft_recursive(&x).unwrap();
        let dev = max_dev(&fast, &dft_naive(&x).unwrap());
        assert!(dev < 1e-9, "N = {}: deviation {dev:e}", x.len());
        assert!(max_dev(&ifft_recursive(&fast).unwrap(), &x) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn huffman_tree_properties(weights in proptest::collection::vec(1u64..1000, 2..40)) {
        let w: Vec<(u8, u64)> = weights.iter().enumerate().map(|(i, &x)| (i as u8, x)).collect();
        let tree = huffman_build(&w).unwrap();
        prop_assert!(tree.is_consistent());
        prop_assert_eq!(tree.root_freq(), weights.iter().sum::<u64>());
        let table = CodeTable::from_tree(&tree);
        prop_assert!(table.is_prefix_free());
        prop_assert!(table.satisfies_kraft_equality());
    }

    #[test]
    fn huffman_round_trip(text in proptest::collection::vec(any::<u8>(), 2..300)) {
        let w = frequencies(&text);
        prop_assume!(w.len() >= 2);
        let tree = huffman_build(&w).unwrap();
        let bits = huffman_encode(&text, &CodeTable::from_tree(&tree)).unwrap();
        prop_assert_eq!(huffman_decode(&bits, &tree).unwrap(), text);
    }

    #[test]
    fn fft_parseval(seed: u64, log in 0u32..9) {
        let x = random_signal(1 << log, &mut Rng::new(seed));
        let spec = fft_recursive(&x).unwrap();
        let n = x.len() as f64;
        prop_assert!((energy(&spec) - n * energy(&x)).abs() <= 1e-9 * n * energy(&x).max(1.0));
    }

    #[test]
    fn floyd_idempotent_and_triangular(seed: u64, n in 1usize..20) {
        let g = DenseGraph::random_sparse(n, 30, 0.3, &mut Rng::new(seed)).unwrap();
        let d = floyd_warshall(&g);
        prop_assert_eq!(&floyd_warshall(&d), &d);
        for i in 0..n {
            for j in 0..n {
                prop_assert!(d.get(i, j) <= g.get(i, j));
                for k in 0..n {
                    let via = d.get(i, k) as u64 + d.get(k, j) as u64;
                    prop_assert!(d.get(i, j) as u64 <= via.min(INF as u64));
                }
            }
        }
    }

    #[test]
    fn permutations_preserve_characters(s in "[a-e]{1,6}") {
        let mut want: Vec<char> = s.chars().collect();
        want.sort_unstable();
        let out = permutations(&s).unwrap();
        prop_assert_eq!(out.len() as u64, factorial(want.len() as u64));
        for p in out {
            let mut got: Vec<char> = p.chars().collect();
            got.sort_unstable();
            prop_assert_eq!(&got, &want);
        }
    }

    #[test]
    fn rng_kernels_deterministic(seed: u64, n in 1usize..2000) {
        prop_assert_eq!(
            base::fill_array_rand(n, &mut Rng::new(seed)).unwrap(),
            base::fill_array_rand(n, &mut Rng::new(seed)).unwrap()
        );
        let t = base::int_compare(n as u64, &mut Rng::new(seed)).unwrap();
        prop_assert_eq!(t.total(), n as u64);
    }
}
