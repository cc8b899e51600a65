use crate::error::{Error, Result};
use crate::network::Topology;
use std::collections::BTreeSet;

/// A finite set of distinct lattice points in `Z^d`, kept in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dimension: usize,
    points: Vec<Vec<i64>>,
}

impl PointConfiguration {
    /// Keeps the given order; rejects duplicates and length mismatches.
    pub fn new(dimension: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (k, p) in points.iter().enumerate() {
            if p.len() != dimension {
                return Err(Error::contract(format!(
                    "point {k} has {} coordinates, expected {dimension}",
                    p.len()
                )));
            }
            if !seen.insert(p) {
                return Err(Error::contract(format!("point {k} is a duplicate")));
            }
        }
        Ok(PointConfiguration { dimension, points })
    }

    /// Sorts lexicographically and merges duplicates.
    pub fn from_unsorted(dimension: usize, points: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let set: BTreeSet<Vec<i64>> = points.into_iter().collect();
        Self::new(dimension, set.into_iter().collect())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of the affine hull.
    pub fn affine_rank(&self) -> usize {
        let Some(first) = self.points.first() else {
            return 0;
        };
        let diffs: Vec<Vec<i64>> = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
            .collect();
        super::exact::rank_i64(&diffs)
    }
}

/// Unit vector `e_i` of node `i` in `Z^n`; the reference node maps to the origin.
fn node_vector(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    if i > 0 {
        v[i - 1] = 1;
    }
    v
}

/// The points `(e_i, e_j)` over all directed edges and loops of `topology`, with
/// `e_0 = 0`, in `Z^{2n}`, sorted and without duplicates.
pub fn adjacency_polytope(topology: &Topology) -> PointConfiguration {
    let n = topology.n();
    let points = topology.directed_edges().into_iter().map(|(i, j)| {
        let mut p = node_vector(n, i);
        p.extend(node_vector(n, j));
        p
    });
    PointConfiguration::from_unsorted(2 * n, points).expect("points have length 2n")
}
