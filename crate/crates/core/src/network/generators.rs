use super::Topology;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

fn require_buses(bus_count: usize, what: &str) -> Result<()> {
    if bus_count < 2 {
        return Err(Error::InvalidSize(format!("{what} needs at least 2 buses, got {bus_count}")));
    }
    Ok(())
}

fn clique(nodes: impl Iterator<Item = usize> + Clone) -> Vec<(usize, usize)> {
    let nodes: Vec<usize> = nodes.collect();
    let mut out = Vec::new();
    for (k, &a) in nodes.iter().enumerate() {
        for &b in &nodes[k + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// Nodes `0..bus_count` joined in a line.
pub fn make_path(bus_count: usize) -> Result<Topology> {
    require_buses(bus_count, "a path")?;
    Ok(Topology::collapsing(bus_count, (1..bus_count).map(|i| (i - 1, i))))
}

/// A path closed into a cycle. With two buses the closing edge coincides with the path.
pub fn make_ring(bus_count: usize) -> Result<Topology> {
    require_buses(bus_count, "a ring")?;
    let closing = std::iter::once((0, bus_count - 1));
    Ok(Topology::collapsing(bus_count, (1..bus_count).map(|i| (i - 1, i)).chain(closing)))
}

pub fn make_complete(bus_count: usize) -> Result<Topology> {
    require_buses(bus_count, "a complete graph")?;
    Ok(Topology::collapsing(bus_count, clique(0..bus_count)))
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2` into its tree edges.
pub fn prufer_decode(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| degree[i] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, a));
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves remain");
    let Reverse(v) = leaves.pop().expect("two leaves remain");
    edges.push((u, v));
    edges
}

/// Uniformly random labeled tree, deterministic in `seed`.
pub fn make_random_tree(bus_count: usize, seed: u64) -> Result<Topology> {
    require_buses(bus_count, "a tree")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..bus_count - 2).map(|_| rng.gen_range(0..bus_count)).collect();
    Ok(Topology::collapsing(bus_count, prufer_decode(&seq)))
}

/// Two cliques of sizes `c1` and `c2` overlapping in `shared` nodes. The first clique is
/// `0..c1` and its last `shared` nodes are the overlap, so node 0 is never shared.
pub fn make_glued_cliques(c1: usize, c2: usize, shared: usize) -> Result<Topology> {
    let min = c1.min(c2);
    if shared >= min {
        return Err(Error::InvalidOverlap { shared, min });
    }
    if shared == 0 {
        return Err(Error::InvalidSize("glued cliques share at least one bus".into()));
    }
    let bus_count = c1 + c2 - shared;
    let second = (c1 - shared)..bus_count;
    Ok(Topology::collapsing(bus_count, clique(0..c1).into_iter().chain(clique(second))))
}

/// `m` cliques of `c` nodes in a row, clique `k` occupying `k*c..(k+1)*c`, each joined to
/// the next by an edge from its last node to the next clique's first node.
pub fn make_clique_chain(c: usize, m: usize) -> Result<Topology> {
    if c == 0 || m == 0 || c * m < 2 {
        return Err(Error::InvalidSize(format!("clique chain {c}x{m} needs at least 2 buses")));
    }
    let mut pairs = Vec::new();
    for k in 0..m {
        pairs.extend(clique(k * c..(k + 1) * c));
        if k + 1 < m {
            pairs.push(((k + 1) * c - 1, (k + 1) * c));
        }
    }
    Ok(Topology::collapsing(c * m, pairs))
}

/// A clique on `0..c1` and a clique on `c1..c1+c2` joined by the edge `(c1-1, c1)`.
pub fn make_bridged_cliques(c1: usize, c2: usize) -> Result<Topology> {
    if c1 == 0 || c2 == 0 || c1 + c2 < 2 {
        return Err(Error::InvalidSize(format!("bridged cliques {c1}+{c2} need two nonempty cliques")));
    }
    let bus_count = c1 + c2;
    let mut pairs = clique(0..c1);
    pairs.extend(clique(c1..bus_count));
    pairs.push((c1 - 1, c1));
    Ok(Topology::collapsing(bus_count, pairs))
}

const IEEE14_BRANCHES: [(usize, usize); 20] = [
    (1, 2), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5), (4, 7), (4, 9), (5, 6),
    (6, 11), (6, 12), (6, 13), (7, 8), (7, 9), (9, 10), (9, 14), (10, 11), (12, 13), (13, 14),
];

/// The 14-bus test network; bus `k` becomes node `k - 1`.
pub fn ieee14_topology() -> Topology {
    Topology::collapsing(14, IEEE14_BRANCHES.iter().map(|&(a, b)| (a - 1, b - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn edges(t: &Topology) -> Vec<(usize, usize)> {
        t.edges().collect()
    }

    /// Brute-force isomorphism check over all relabelings.
    fn isomorphic(a: &Topology, b: &Topology) -> bool {
        if a.bus_count() != b.bus_count() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.bus_count();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(k: usize, perm: &mut Vec<usize>, a: &Topology, b: &Topology) -> bool {
            if k == perm.len() {
                return a.relabel(perm) == *b;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                if rec(k + 1, perm, a, b) {
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        rec(0, &mut perm, a, b)
    }

    #[test]
    fn small_families() {
        assert_eq!(edges(&make_path(4).unwrap()), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(make_path(12).unwrap().edge_count(), 11);
        assert_eq!(make_ring(2).unwrap(), make_path(2).unwrap());
        assert_eq!(make_ring(12).unwrap().edge_count(), 12);
        assert_eq!(make_complete(4).unwrap().edge_count(), 6);
        assert_eq!(make_complete(2).unwrap(), make_path(2).unwrap());
        for bad in [0, 1] {
            assert!(matches!(make_path(bad), Err(Error::InvalidSize(_))));
            assert!(make_ring(bad).is_err());
            assert!(make_complete(bad).is_err());
            assert!(make_random_tree(bad, 0).is_err());
        }
    }

    #[test]
    fn glued_layout() {
        let g = make_glued_cliques(2, 2, 1).unwrap();
        assert_eq!(edges(&g), vec![(0, 1), (1, 2)]);
        let g = make_glued_cliques(3, 3, 2).unwrap();
        assert_eq!(g.bus_count(), 4);
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(0, 3));
        assert!(matches!(make_glued_cliques(2, 2, 2), Err(Error::InvalidOverlap { shared: 2, min: 2 })));
    }

    #[test]
    fn chains_and_bridges() {
        assert!(isomorphic(&make_clique_chain(2, 2).unwrap(), &make_path(4).unwrap()));
        assert_eq!(make_clique_chain(1, 5).unwrap(), make_path(5).unwrap());
        assert_eq!(make_bridged_cliques(1, 2).unwrap(), make_path(3).unwrap());
        assert_eq!(make_clique_chain(3, 2).unwrap(), make_bridged_cliques(3, 3).unwrap());
        for m in 2..=8 {
            assert!(isomorphic(&make_clique_chain(1, m).unwrap(), &make_path(m).unwrap()));
        }
        for c1 in 1..=4 {
            for c2 in 1..=4 {
                let b = make_bridged_cliques(c1, c2).unwrap();
                assert_eq!(b.edge_count(), c1 * (c1 - 1) / 2 + c2 * (c2 - 1) / 2 + 1);
                assert!(b.is_connected());
                if c1 == c2 {
                    assert!(isomorphic(&b, &make_clique_chain(c1, 2).unwrap()));
                }
            }
        }
        assert!(make_clique_chain(1, 1).is_err());
        assert!(make_bridged_cliques(0, 2).is_err());
    }

    #[test]
    fn ieee14_shape() {
        let t = ieee14_topology();
        assert_eq!(t.bus_count(), 14);
        assert_eq!(t.edge_count(), 20);
        assert!(t.is_connected());
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..20 {
            let t = make_random_tree(13, seed).unwrap();
            assert_eq!(t.edge_count(), 12);
            assert!(t.is_connected());
        }
        assert_eq!(make_random_tree(3, 7).unwrap(), make_random_tree(3, 7).unwrap());
        assert_eq!(make_random_tree(2, 99).unwrap(), make_path(2).unwrap());
    }

    #[test]
    fn random_trees_are_uniform() {
        let samples = 10_000;
        let mut counts: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..samples {
            let t = make_random_tree(4, rng.gen()).unwrap();
            *counts.entry(edges(&t)).or_default() += 1;
        }
        assert_eq!(counts.len(), 16);
        let expected = samples as f64 / 16.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 15 degrees of freedom; 37.7 is the 0.001 upper quantile.
        assert!(chi2 < 37.7, "chi-square {chi2}");
        for &c in counts.values() {
            assert!((c as f64 / samples as f64 - 1.0 / 16.0).abs() < 0.02);
        }
    }
}
