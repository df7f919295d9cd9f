//! Dense all-pairs shortest paths.

use crate::error::{Error, Result, domain};
use crate::rng::Rng;

/// Weight meaning "no edge". Any graph accepted by [`DenseGraph`] keeps every
/// real path length below it, and `INF + INF` does not overflow.
pub const INF: u32 = u32::MAX / 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    weights: Vec<u32>,
}

impl DenseGraph {
    /// Graph with `n` vertices, zero diagonal and no edges.
    pub fn empty(n: usize) -> Self {
        let mut weights = vec![INF; n * n];
        for i in 0..n {
            weights[i * n + i] = 0;
        }
        Self { n, weights }
    }

    /// Builds a graph from rows. Rows must form a square matrix with a zero
    /// diagonal; entries are either [`INF`] or finite weights small enough
    /// that no simple path reaches `INF`.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let mut g = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if i == j {
                    if w != 0 {
                        return Err(domain(format!("diagonal entry ({i},{i}) is {w}, expected 0")));
                    }
                } else {
                    g.set(i, j, w)?;
                }
            }
        }
        Ok(g)
    }

    /// Complete directed graph with weights uniform in `[1, max_weight]`.
    pub fn random_complete(n: usize, max_weight: u32, rng: &mut Rng) -> Result<Self> {
        if max_weight == 0 {
            return Err(domain("max_weight must be >= 1"));
        }
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let w = 1 + rng.next_below(u64::from(max_weight)) as u32;
                    g.set(i, j, w)?;
                }
            }
        }
        Ok(g)
    }

    /// Directed graph where each off-diagonal edge exists with probability
    /// `density`.
    pub fn random_sparse(n: usize, max_weight: u32, density: f64, rng: &mut Rng) -> Result<Self> {
        if max_weight == 0 {
            return Err(domain("max_weight must be >= 1"));
        }
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.next_f64() < density {
                    let w = 1 + rng.next_below(u64::from(max_weight)) as u32;
                    g.set(i, j, w)?;
                }
            }
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.weights[i * self.n + j]
    }

    /// Sets an off-diagonal weight.
    pub fn set(&mut self, i: usize, j: usize, w: u32) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::Shape(format!("({i},{j}) outside a {0}x{0} graph", self.n)));
        }
        if i == j {
            return Err(domain("diagonal entries are fixed at 0"));
        }
        if w != INF && (w as u64) * (self.n.max(1) as u64) >= INF as u64 {
            return Err(domain(format!(
                "weight {w} too large for {} vertices (paths could reach INF)",
                self.n
            )));
        }
        self.weights[i * self.n + j] = w;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.weights
    }

    /// Wrapping sum of every entry.
    pub fn checksum(&self) -> u64 {
        self.weights
            .iter()
            .fold(0u64, |acc, &w| acc.wrapping_add(u64::from(w)))
    }
}

/// Returns the matrix of shortest path lengths, relaxing every pair `(i, j)`
/// through each intermediate vertex `k` in turn.
pub fn floyd_warshall(graph: &DenseGraph) -> DenseGraph {
    let mut dist = graph.clone();
    let n = dist.n;
    let w = &mut dist.weights;
    for k in 0..n {
        for i in 0..n {
            let ik = w[i * n + k];
            for j in 0..n {
                let through = ik + w[k * n + j];
                if w[i * n + j] > through {
                    w[i * n + j] = through;
                }
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_edges_is_fixed_point() {
        let g = DenseGraph::empty(5);
        assert_eq!(floyd_warshall(&g), g);
    }

    #[test]
    fn triangle_shortcut() {
        let g = DenseGraph::from_rows(&[
            vec![0, 1, 5],
            vec![INF, 0, 1],
            vec![INF, INF, 0],
        ])
        .unwrap();
        let d = floyd_warshall(&g);
        assert_eq!(d.get(0, 2), 2);
        assert_eq!(d.get(2, 0), INF);
    }

    #[test]
    fn non_square_rejected() {
        let err = DenseGraph::from_rows(&[vec![0, 1], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn bad_weights_rejected() {
        assert!(DenseGraph::from_rows(&[vec![1]]).is_err());
        let mut g = DenseGraph::empty(3);
        assert!(g.set(0, 0, 4).is_err());
        assert!(g.set(0, 3, 4).is_err());
        assert!(g.set(0, 1, INF - 1).is_err());
    }

    #[test]
    fn idempotent_and_triangle() {
        let mut rng = Rng::new(11);
        let g = DenseGraph::random_sparse(25, 50, 0.2, &mut rng).unwrap();
        let d = floyd_warshall(&g);
        assert_eq!(floyd_warshall(&d), d);
        let n = d.len();
        for i in 0..n {
            for j in 0..n {
                assert!(d.get(i, j) <= g.get(i, j));
                for k in 0..n {
                    assert!(d.get(i, j) <= d.get(i, k).saturating_add(d.get(k, j)).min(INF));
                }
            }
        }
    }
}
