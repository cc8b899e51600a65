#![allow(dead_code)]

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use topoflow::algebra::{ap_bound, bblsy_bound, bkk_bound, build_supports, build_system, cb_bound};
use topoflow::geometry::{
    adjacency_polytope, mixed_volume, normalized_volume_seeded, Constraint, LinearProgram, LpOutcome, PointConfiguration,
};
use topoflow::homotopy::{solve, TrackerSettings};
use topoflow::network::{
    make_bridged_cliques, make_clique_chain, make_complete, make_glued_cliques, make_path, make_random_tree, make_ring,
    sample_case, CoefficientMode, Topology,
};

/// `Ok(summary)` on success, `Err(first failure)` otherwise.
pub type Check = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected topology: a random tree plus each missing edge with probability 0.3.
pub fn random_topology(buses: usize, seed: u64) -> Topology {
    let tree = make_random_tree(buses, seed).unwrap();
    let mut r = rng(seed ^ 0x5eed);
    let mut t = tree;
    for i in 0..buses {
        for j in i + 1..buses {
            if !t.has_edge(i, j) && r.gen_bool(0.3) {
                t = t.with_edge(i, j).unwrap();
            }
        }
    }
    t
}

/// Every named family with at most `max_buses` buses.
pub fn family_members(max_buses: usize, tree_seed: u64) -> Vec<(String, Topology)> {
    let mut out = Vec::new();
    for b in 2..=max_buses {
        out.push((format!("path({b})"), make_path(b).unwrap()));
        if b >= 3 {
            out.push((format!("ring({b})"), make_ring(b).unwrap()));
            out.push((format!("complete({b})"), make_complete(b).unwrap()));
            out.push((format!("tree({b})"), make_random_tree(b, tree_seed ^ b as u64).unwrap()));
        }
    }
    for c1 in 2..=max_buses {
        for c2 in c1..=max_buses {
            for shared in 1..c1 {
                if c1 + c2 - shared <= max_buses {
                    out.push((format!("glued({c1},{c2},{shared})"), make_glued_cliques(c1, c2, shared).unwrap()));
                }
            }
        }
    }
    for c in 1..=max_buses {
        for m in 2..=max_buses {
            if c * m <= max_buses {
                out.push((format!("chain({c},{m})"), make_clique_chain(c, m).unwrap()));
            }
        }
    }
    for c1 in 1..=max_buses {
        for c2 in c1..=max_buses {
            if c1 + c2 <= max_buses {
                out.push((format!("bridged({c1},{c2})"), make_bridged_cliques(c1, c2).unwrap()));
            }
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn connected(n: usize, mask: u32, pairs: &[(usize, usize)]) -> bool {
    let mut seen = 1u32;
    loop {
        let before = seen;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && ((seen >> i) & 1 == 1 || (seen >> j) & 1 == 1) {
                seen |= 1 << i | 1 << j;
            }
        }
        if seen == before {
            return seen.count_ones() as usize == n;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Edge masks of the connected graphs on `n` nodes, one per isomorphism class.
pub fn connected_graph_classes(n: usize) -> Vec<u32> {
    let ps = pairs(n);
    let index: HashMap<(usize, usize), usize> = ps.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for mask in 0..(1u32 << ps.len()) {
        if !connected(n, mask, &ps) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                ps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0u32, |m, (_, &(i, j))| {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    m | 1 << index[&(a, b)]
                })
            })
            .min()
            .unwrap();
        classes.insert(canon);
    }
    classes.into_iter().collect()
}

pub fn topology_of(n: usize, mask: u32) -> Topology {
    let ps = pairs(n);
    Topology::new(n, ps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p)).unwrap()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Whether `point` lies in the convex hull of `pts`, decided by an exact LP.
pub fn in_hull(pts: &[Vec<i64>], point: &[i64]) -> bool {
    let m = pts.len();
    let mut constraints = Vec::new();
    for k in 0..point.len() {
        constraints.push(Constraint::equal(pts.iter().map(|p| q(p[k])).collect(), q(point[k])));
    }
    constraints.push(Constraint::equal(vec![q(1); m], q(1)));
    for k in 0..m {
        let mut row = vec![q(0); m];
        row[k] = q(-1);
        constraints.push(Constraint::less_eq(row, q(0)));
    }
    let lp = LinearProgram { objective: vec![q(0); m], constraints };
    matches!(lp.solve().unwrap(), LpOutcome::Optimal { .. })
}

/// Bound chain `solved <= BKK <= AP <= BBLSY <= CB` on random topologies with 2..=6 buses.
pub fn bound_chain_suite(count: usize) -> Check {
    let settings = TrackerSettings::default();
    for k in 0..count {
        let buses = 2 + k % 5;
        let t = random_topology(buses, 1000 + k as u64);
        let n = t.n();
        let mode = if k % 2 == 0 { CoefficientMode::ConjugatePaired } else { CoefficientMode::Independent };
        let case = sample_case(&t, k as u64, mode);
        let solved = BigUint::from(solve(&case, mode, &settings, k as u64).map_err(|e| e.to_string())?.counts.nondeficient);
        let bkk = bkk_bound(&t, k as u64).map_err(|e| e.to_string())?.total;
        let ap = ap_bound(&t).map_err(|e| e.to_string())?;
        let chain = [solved, bkk, ap, bblsy_bound(n), cb_bound(n)];
        if chain.windows(2).any(|w| w[0] > w[1]) {
            return Err(format!("chain broken on {:?}: {:?}", t.edges().collect::<Vec<_>>(), chain));
        }
    }
    Ok(format!("{count} random topologies"))
}

/// AP never drops when an edge is added, and stays put when both new points already lie
/// in the old polytope. Checked on every connected graph with at most `max_buses` buses,
/// one representative per isomorphism class.
pub fn monotonicity_suite(max_buses: usize) -> Check {
    let mut additions = 0;
    let mut equalities = 0;
    for n in 2..=max_buses {
        let ps = pairs(n);
        for mask in connected_graph_classes(n) {
            let g = topology_of(n, mask);
            let before = ap_bound(&g).map_err(|e| e.to_string())?;
            let old = adjacency_polytope(&g);
            for (k, &(i, j)) in ps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    continue;
                }
                let h = topology_of(n, mask | 1 << k);
                let after = ap_bound(&h).map_err(|e| e.to_string())?;
                additions += 1;
                if after < before {
                    return Err(format!("adding {i}-{j} to {:?} lowers AP {before} -> {after}", g.edges().collect::<Vec<_>>()));
                }
                let grown = adjacency_polytope(&h);
                let new_pts: Vec<&Vec<i64>> = grown.points().iter().filter(|p| !old.points().contains(p)).collect();
                if new_pts.iter().all(|p| in_hull(old.points(), p)) {
                    equalities += 1;
                    if after != before {
                        return Err(format!("adding {i}-{j} to {:?} should keep AP at {before}", g.edges().collect::<Vec<_>>()));
                    }
                }
            }
        }
    }
    Ok(format!("{additions} edge additions, {equalities} absorbed by the old polytope"))
}

/// `AP <= C(2n, n)` on every connected graph class, with equality on complete graphs.
pub fn cap_suite(max_buses: usize) -> Check {
    let mut graphs = 0;
    for n in 2..=max_buses {
        let full = (1u32 << pairs(n).len()) - 1;
        for mask in connected_graph_classes(n) {
            let t = topology_of(n, mask);
            let ap = ap_bound(&t).map_err(|e| e.to_string())?;
            let cap = bblsy_bound(t.n());
            graphs += 1;
            if ap > cap || (mask == full && ap != cap) {
                return Err(format!("|B|={n} mask {mask:b}: AP {ap} vs cap {cap}"));
            }
        }
        let k = make_complete(n).unwrap();
        if ap_bound(&k).map_err(|e| e.to_string())? != bblsy_bound(n - 1) {
            return Err(format!("complete({n}) misses the cap"));
        }
    }
    Ok(format!("{graphs} graph classes"))
}

/// Mixed-volume totals agree across five lifting seeds and under support permutation.
pub fn lifting_independence_suite() -> Check {
    let mut tops = vec![
        make_ring(5).unwrap(),
        make_complete(4).unwrap(),
        make_glued_cliques(3, 3, 2).unwrap(),
        make_bridged_cliques(3, 3).unwrap(),
    ];
    tops.extend((0..4).map(|s| random_topology(5, 77 + s)));
    for t in &tops {
        let supports = build_supports(t);
        let totals: Vec<BigUint> =
            (0..5).map(|s| mixed_volume(&supports, 31 * s + 7).map(|d| d.total)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let mut reversed = supports.clone();
        reversed.reverse();
        let permuted = mixed_volume(&reversed, 3).map_err(|e| e.to_string())?.total;
        if totals.iter().any(|v| *v != totals[0]) || permuted != totals[0] {
            return Err(format!("{:?}: totals {:?}, permuted {permuted}", t.edges().collect::<Vec<_>>(), totals));
        }
    }
    let mut r = rng(4242);
    for _ in 0..30 {
        let d = r.gen_range(2..=3);
        let supports: Vec<PointConfiguration> = (0..d)
            .map(|_| {
                let m = r.gen_range(2..=5);
                PointConfiguration::from_unsorted(d, (0..m).map(|_| (0..d).map(|_| r.gen_range(0..=3)).collect())).unwrap()
            })
            .collect();
        let totals: Vec<BigUint> =
            (0..5).map(|s| mixed_volume(&supports, s).map(|dc| dc.total)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        if totals.iter().any(|v| *v != totals[0]) {
            return Err(format!("random supports {supports:?}: totals {totals:?}"));
        }
    }
    Ok(format!("{} load-flow systems and 30 random supports, 5 seeds each", tops.len()))
}

/// Analytic Jacobians against central differences on random systems and points.
pub fn jacobian_suite(cases: usize) -> Check {
    let mut r = rng(9001);
    let mut worst = 0.0f64;
    for k in 0..cases {
        let t = random_topology(r.gen_range(2..=6), k as u64);
        let mode = if r.gen_bool(0.5) { CoefficientMode::ConjugatePaired } else { CoefficientMode::Independent };
        let system = build_system(&sample_case(&t, k as u64, mode), mode, k as u64);
        let dim = system.variable_count();
        let x: Vec<Complex64> = (0..dim).map(|_| Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))).collect();
        let jac = system.jacobian(&x).map_err(|e| e.to_string())?;
        let h = 1e-6;
        for col in 0..dim {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[col] += h;
            minus[col] -= h;
            let fp = system.evaluate(&plus).map_err(|e| e.to_string())?;
            let fm = system.evaluate(&minus).map_err(|e| e.to_string())?;
            for row in 0..dim {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                let exact = jac[(row, col)];
                let err = (fd - exact).norm() / exact.norm().max(1.0);
                worst = worst.max(err);
                if err >= 1e-5 {
                    return Err(format!("case {k}: entry ({row},{col}) analytic {exact} vs difference {fd}"));
                }
            }
        }
    }
    Ok(format!("{cases} cases, worst relative error {worst:.1e}"))
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Counter-clockwise hull of planar points (monotone chain), no collinear vertices.
pub fn hull2(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let turn = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &x in &p {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], x) <= 0 {
            lower.pop();
        }
        lower.push(x);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &x in p.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], x) <= 0 {
            upper.pop();
        }
        upper.push(x);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn twice_area(poly: &[(i64, i64)]) -> i64 {
    let m = poly.len();
    (0..m).map(|i| poly[i].0 * poly[(i + 1) % m].1 - poly[(i + 1) % m].0 * poly[i].1).sum::<i64>().abs()
}

/// `d!` times the hull volume for `d <= 3`, by facet enumeration and fan triangulation.
pub fn brute_force_volume(points: &[Vec<i64>], d: usize) -> u64 {
    match d {
        0 => 1,
        1 => (points.iter().map(|p| p[0]).max().unwrap() - points.iter().map(|p| p[0]).min().unwrap()) as u64,
        2 => twice_area(&hull2(&points.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())) as u64,
        3 => {
            let apex = &points[0];
            let mut facets = BTreeSet::new();
            let mut six_v = 0i64;
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    for k in j + 1..points.len() {
                        let nrm = cross(&sub(&points[j], &points[i]), &sub(&points[k], &points[i]));
                        if nrm == [0, 0, 0] {
                            continue;
                        }
                        let side: Vec<i64> = points.iter().map(|p| dot(&nrm, &sub(p, &points[i]))).collect();
                        if side.iter().any(|&s| s > 0) && side.iter().any(|&s| s < 0) {
                            continue;
                        }
                        let on: Vec<usize> = (0..points.len()).filter(|&m| side[m] == 0).collect();
                        if !facets.insert(on.clone()) {
                            continue;
                        }
                        // project along the dominant normal axis, order by the planar hull, fan
                        let axis = (0..3).max_by_key(|&a| nrm[a].abs()).unwrap();
                        let keep: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
                        let proj: Vec<(i64, i64)> = on.iter().map(|&m| (points[m][keep[0]], points[m][keep[1]])).collect();
                        let ring: Vec<&Vec<i64>> = hull2(&proj)
                            .iter()
                            .map(|v| &points[on[proj.iter().position(|w| w == v).unwrap()]])
                            .collect();
                        for w in 1..ring.len().saturating_sub(1) {
                            let (a, b, c) = (sub(ring[0], apex), sub(ring[w], apex), sub(ring[w + 1], apex));
                            six_v += dot(&a, &cross(&b, &c)).abs();
                        }
                    }
                }
            }
            six_v as u64
        }
        _ => panic!("oracle only covers d <= 3"),
    }
}

/// The triangulation volume against the facet oracle on random small configurations.
pub fn volume_oracle_suite(cases: usize) -> Check {
    let mut r = rng(31337);
    for k in 0..cases {
        let d = 1 + k % 3;
        let m = r.gen_range(1..=9);
        let pts = (0..m).map(|_| (0..d).map(|_| r.gen_range(-3..=3)).collect::<Vec<i64>>());
        let config = PointConfiguration::from_unsorted(d, pts).unwrap();
        let got = normalized_volume_seeded(&config, k as u64).map_err(|e| e.to_string())?;
        let want = BigUint::from(brute_force_volume(config.points(), d));
        if got != want {
            return Err(format!("{:?}: got {got}, oracle {want}", config.points()));
        }
    }
    Ok(format!("{cases} configurations in dimensions 1..3"))
}

/// Two independent solver seeds on the same case find the same number of solutions.
pub fn count_stability_suite(max_buses: usize, seed_pairs: u64) -> Check {
    let settings = TrackerSettings::default();
    let members = family_members(max_buses, 5);
    for (name, t) in &members {
        for p in 0..seed_pairs {
            let mode = CoefficientMode::ConjugatePaired;
            let case = sample_case(t, 100 + p, mode);
            let a = solve(&case, mode, &settings, 2 * p + 1).map_err(|e| e.to_string())?.counts;
            let b = solve(&case, mode, &settings, 2 * p + 2).map_err(|e| e.to_string())?.counts;
            if a.nondeficient != b.nondeficient {
                return Err(format!("{name}, case {p}: {} vs {} solutions", a.nondeficient, b.nondeficient));
            }
        }
    }
    Ok(format!("{} topologies, {seed_pairs} seed pairs each", members.len()))
}

/// Conjugate-paired and independent coefficients give the same count.
pub fn mode_agreement_suite(max_buses: usize) -> Check {
    let settings = TrackerSettings::default();
    let members = family_members(max_buses, 9);
    for (k, (name, t)) in members.iter().enumerate() {
        let counts: Vec<u64> = [CoefficientMode::ConjugatePaired, CoefficientMode::Independent]
            .into_iter()
            .map(|mode| solve(&sample_case(t, k as u64, mode), mode, &settings, k as u64).map(|s| s.counts.nondeficient))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if counts[0] != counts[1] {
            return Err(format!("{name}: conjugate {} vs independent {}", counts[0], counts[1]));
        }
    }
    Ok(format!("{} topologies", members.len()))
}
