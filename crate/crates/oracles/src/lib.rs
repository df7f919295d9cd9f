//! Slow, obviously-correct reference computations.
//!
//! Nothing here depends on the kernels under test; inputs are plain edge
//! lists, matrices and closures.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

pub fn fib_iterative(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Max-flow by shortest augmenting paths (BFS) over a residual graph kept
/// as adjacency lists. Parallel edges stay separate residual arcs.
pub fn edmonds_karp(n: usize, s: usize, t: usize, edges: &[(usize, usize, u64)]) -> u64 {
    let mut head = Vec::with_capacity(2 * edges.len());
    let mut cap = Vec::with_capacity(2 * edges.len());
    let mut out = vec![Vec::new(); n];
    for &(u, v, c) in edges {
        out[u].push(head.len());
        head.push(v);
        cap.push(c);
        out[v].push(head.len());
        head.push(u);
        cap.push(0);
    }
    let mut flow = 0;
    loop {
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &out[u] {
                let v = head[a];
                if !seen[v] && cap[a] > 0 {
                    seen[v] = true;
                    via[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return flow;
        }
        let mut bottleneck = u64::MAX;
        let mut v = t;
        while v != s {
            let a = via[v];
            bottleneck = bottleneck.min(cap[a]);
            v = head[a ^ 1];
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            cap[a] -= bottleneck;
            cap[a ^ 1] += bottleneck;
            v = head[a ^ 1];
        }
        flow += bottleneck;
    }
}

/// Minimum s-t cut by enumerating every partition of the non-terminal
/// vertices. Feasible up to ~20 vertices.
pub fn min_cut_exhaustive(n: usize, s: usize, t: usize, edges: &[(usize, usize, u64)]) -> u64 {
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = u64::MAX;
    let mut in_s = vec![false; n];
    in_s[s] = true;
    for mask in 0u64..(1u64 << others.len()) {
        for (bit, &v) in others.iter().enumerate() {
            in_s[v] = mask >> bit & 1 == 1;
        }
        let cost = edges
            .iter()
            .filter(|&&(u, v, _)| in_s[u] && !in_s[v])
            .map(|&(_, _, c)| c)
            .sum();
        best = best.min(cost);
    }
    best
}

/// Shortest path lengths from every source by Dijkstra. `weights` is a
/// row-major `n x n` matrix in which `inf` marks a missing edge; unreachable
/// pairs come back as `None`.
pub fn dijkstra_all_sources(n: usize, weights: &[u32], inf: u32) -> Vec<Vec<Option<u64>>> {
    (0..n)
        .map(|src| {
            let mut dist: Vec<Option<u64>> = vec![None; n];
            let mut heap = BinaryHeap::from([Reverse((0u64, src))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if dist[u].is_some() {
                    continue;
                }
                dist[u] = Some(d);
                for v in 0..n {
                    let w = weights[u * n + v];
                    if v != u && w != inf && dist[v].is_none() {
                        heap.push(Reverse((d + u64::from(w), v)));
                    }
                }
            }
            dist
        })
        .collect()
}

/// Minimum weighted path length over all full binary code trees, found by
/// trying every sequence of pairwise merges (each tree arises from some
/// merge order, and its weighted length is the sum of merged weights).
pub fn optimal_code_length(weights: &[u64]) -> u64 {
    fn search(pool: &[u64]) -> u64 {
        if pool.len() == 1 {
            return 0;
        }
        let mut best = u64::MAX;
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let (a, b) = (pool[i], pool[j]);
                let mut next: Vec<u64> = pool
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &w)| w)
                    .collect();
                next.push(a + b);
                best = best.min(a + b + search(&next));
            }
        }
        best
    }
    assert!(weights.len() >= 2, "need at least two symbols");
    search(weights)
}

/// Minimum of `energy` over every assignment of `labels` to `sites` sites.
pub fn min_over_labelings(sites: usize, labels: &[u8], mut energy: impl FnMut(&[u8]) -> u64) -> u64 {
    let k = labels.len();
    let total = k.pow(sites as u32);
    let mut labeling = vec![labels[0]; sites];
    let mut best = u64::MAX;
    for mut code in 0..total {
        for slot in labeling.iter_mut() {
            *slot = labels[code % k];
            code /= k;
        }
        best = best.min(energy(&labeling));
    }
    best
}

/// Potts energy on a `width x height` 4-connected grid.
pub fn grid_potts_energy(width: usize, height: usize, data: impl Fn(usize, u8) -> u64, lambda: u64, labeling: &[u8]) -> u64 {
    let mut e = 0;
    for y in 0..height {
        for x in 0..width {
            let p = y * width + x;
            e += data(p, labeling[p]);
            if x + 1 < width && labeling[p] != labeling[p + 1] {
                e += lambda;
            }
            if y + 1 < height && labeling[p] != labeling[p + width] {
                e += lambda;
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flows_agree_on_diamond() {
        let edges = [(0, 1, 3), (0, 2, 2), (1, 3, 2), (2, 3, 3), (1, 2, 1)];
        assert_eq!(edmonds_karp(4, 0, 3, &edges), 5);
        assert_eq!(min_cut_exhaustive(4, 0, 3, &edges), 5);
    }

    #[test]
    fn code_lengths() {
        assert_eq!(optimal_code_length(&[1, 1]), 2);
        assert_eq!(optimal_code_length(&[1, 2, 4]), 10);
        assert_eq!(optimal_code_length(&[1, 1, 1, 1]), 8);
    }

    #[test]
    fn small_values() {
        assert_eq!(fib_iterative(10), 55);
        assert_eq!(factorial(8), 40320);
        let d = dijkstra_all_sources(3, &[0, 1, 5, 9, 0, 1, 9, 9, 0], 9);
        assert_eq!(d[0], vec![Some(0), Some(1), Some(2)]);
        assert_eq!(d[2][0], None);
    }
}
