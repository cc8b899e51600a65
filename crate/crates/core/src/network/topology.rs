use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Undirected network graph. Every node carries an implicit self-loop; node 0 is the
/// reference bus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    bus_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Topology {
    /// Builds a topology from unordered pairs. Pairs are normalized to `(min, max)`;
    /// loops and duplicates are rejected.
    pub fn new(bus_count: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if bus_count == 0 {
            return Err(Error::InvalidSize("a network needs at least one bus".into()));
        }
        let mut edges = BTreeSet::new();
        for (a, b) in pairs {
            if a >= bus_count || b >= bus_count {
                return Err(Error::contract(format!(
                    "edge ({a},{b}) references a node outside 0..{bus_count}"
                )));
            }
            if a == b {
                return Err(Error::contract(format!("loop ({a},{a}) must not be listed")));
            }
            if !edges.insert((a.min(b), a.max(b))) {
                return Err(Error::contract(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(Topology { bus_count, edges })
    }

    /// Like [`Topology::new`] but silently merges duplicate pairs.
    pub(crate) fn collapsing(bus_count: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = pairs
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .filter(|(a, b)| a != b)
            .collect();
        Topology { bus_count, edges }
    }

    pub fn bus_count(&self) -> usize {
        self.bus_count
    }

    /// Number of non-reference buses.
    pub fn n(&self) -> usize {
        self.bus_count - 1
    }

    /// Non-loop edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i == j && i < self.bus_count || self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Neighbors of `i` including `i` itself, sorted.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.push(i);
        out.sort_unstable();
        out
    }

    /// Every ordered pair `(i, j)` with `{i, j}` an edge or `i == j`, sorted.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.bus_count).map(|i| (i, i)).collect();
        for &(a, b) in &self.edges {
            out.push((a, b));
            out.push((b, a));
        }
        out.sort_unstable();
        out
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        Topology::new(self.bus_count, self.edges().chain(std::iter::once((i, j))))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.bus_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Relabels nodes: node `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Topology::collapsing(self.bus_count, self.edges().map(|(a, b)| (perm[a], perm[b])))
    }
}
