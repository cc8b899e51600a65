use super::{PolynomialSystem, Term};
use crate::geometry::PointConfiguration;
use crate::network::{sample_second_block, CoefficientMode, NetworkCase, Topology};
use num_complex::Complex64;

/// Exponent of `v_i^a u_k^b` style monomials: `v` indices then `u` indices, node `i`
/// mapping to coordinate `i - 1` of its block.
fn exponent(n: usize, v: Option<usize>, u: Option<usize>) -> Vec<u32> {
    let mut e = vec![0; 2 * n];
    if let Some(i) = v.filter(|&i| i > 0) {
        e[i - 1] += 1;
    }
    if let Some(k) = u.filter(|&k| k > 0) {
        e[n + k - 1] += 1;
    }
    e
}

/// Monomials of equation `i` of the first block: `v_i u_k` for each neighbor `k`
/// (the `k = 0` term becomes `v_i`) plus the constant.
fn first_block_exponents(t: &Topology, i: usize) -> Vec<(usize, Vec<u32>)> {
    let n = t.n();
    t.neighbors(i).into_iter().map(|k| (k, exponent(n, Some(i), Some(k)))).collect()
}

fn mirror(e: &[u32]) -> Vec<u32> {
    let n = e.len() / 2;
    e[n..].iter().chain(&e[..n]).copied().collect()
}

/// The supports of the `2n` load-flow equations, each sorted lexicographically.
pub fn build_supports(topology: &Topology) -> Vec<PointConfiguration> {
    let n = topology.n();
    let first: Vec<PointConfiguration> = (1..=n)
        .map(|i| {
            let pts = first_block_exponents(topology, i)
                .into_iter()
                .map(|(_, e)| e)
                .chain(std::iter::once(vec![0; 2 * n]))
                .map(|e| e.into_iter().map(i64::from).collect());
            PointConfiguration::from_unsorted(2 * n, pts).expect("consistent dimension")
        })
        .collect();
    let second: Vec<PointConfiguration> = first
        .iter()
        .map(|s| {
            let pts = s.points().iter().map(|p| {
                let e: Vec<u32> = p.iter().map(|&x| x as u32).collect();
                mirror(&e).into_iter().map(i64::from).collect()
            });
            PointConfiguration::from_unsorted(2 * n, pts).expect("consistent dimension")
        })
        .collect();
    first.into_iter().chain(second).collect()
}

/// The algebraic load-flow system in `(v_1..v_n, u_1..u_n)`:
///
/// `Σ_k conj(Y_ik) v_i u_k - S_i` and `Σ_k Y_ik u_i v_k - conj(S_i)`,
/// with `u_0 = v_0` folded into the coefficients. In independent mode the second block
/// uses the case's second-block data, drawn from `seed` when the case has none.
pub fn build_system(case: &NetworkCase, mode: CoefficientMode, seed: u64) -> PolynomialSystem {
    let t = &case.topology;
    let n = t.n();
    let v0 = Complex64::new(case.v0, 0.0);
    let drawn;
    let second = match mode {
        CoefficientMode::ConjugatePaired => None,
        CoefficientMode::Independent => Some(match &case.second_block {
            Some(b) => b,
            None => {
                drawn = sample_second_block(t, seed);
                &drawn
            }
        }),
    };
    let mut equations = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let mut eq: Vec<Term> = first_block_exponents(t, i)
            .into_iter()
            .map(|(k, e)| {
                let c = case.y[&(i, k)].conj();
                Term { exponent: e, coefficient: if k == 0 { c * v0 } else { c } }
            })
            .collect();
        eq.push(Term { exponent: vec![0; 2 * n], coefficient: -case.s[i - 1] });
        equations.push(eq);
    }
    for i in 1..=n {
        let mut eq: Vec<Term> = first_block_exponents(t, i)
            .into_iter()
            .map(|(k, e)| {
                let c = match second {
                    None => case.y[&(i, k)],
                    Some(b) => b.y[&(i, k)],
                };
                Term { exponent: mirror(&e), coefficient: if k == 0 { c * v0 } else { c } }
            })
            .collect();
        let s = match second {
            None => case.s[i - 1].conj(),
            Some(b) => b.s[i - 1],
        };
        eq.push(Term { exponent: vec![0; 2 * n], coefficient: -s });
        equations.push(eq);
    }
    PolynomialSystem::new(2 * n, equations).expect("consistent exponent lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::adjacency_polytope;
    use crate::network::{make_complete, make_path, make_random_tree, make_ring, sample_case};
    use std::collections::BTreeSet;

    fn pts(s: &PointConfiguration) -> BTreeSet<Vec<i64>> {
        s.points().iter().cloned().collect()
    }

    #[test]
    fn path3_first_equation() {
        // n = 2, variables (v1, v2, u1, u2); node 1 neighbors 0, 1, 2
        let sup = build_supports(&make_path(3).unwrap());
        assert_eq!(sup.len(), 4);
        let expected: BTreeSet<Vec<i64>> =
            [vec![1, 0, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 0, 0, 0]].into_iter().collect();
        assert_eq!(pts(&sup[0]), expected);
        // node 2 is not adjacent to the reference, so no pure v2 term
        let expected: BTreeSet<Vec<i64>> = [vec![0, 1, 1, 0], vec![0, 1, 0, 1], vec![0, 0, 0, 0]].into_iter().collect();
        assert_eq!(pts(&sup[1]), expected);
    }

    #[test]
    fn path2_supports_and_system() {
        let t = make_path(2).unwrap();
        let sup = build_supports(&t);
        assert_eq!(sup[0].points(), &[vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(sup[1].points(), &[vec![0, 0], vec![0, 1], vec![1, 1]]);
        let case = sample_case(&t, 5, CoefficientMode::ConjugatePaired);
        let sys = build_system(&case, CoefficientMode::ConjugatePaired, 0);
        let eq0 = &sys.equations()[0];
        assert_eq!(eq0[0].coefficient, -case.s[0]);
        assert_eq!(eq0[1].coefficient, case.y[&(1, 0)].conj() * case.v0);
        assert_eq!(eq0[2].coefficient, case.y[&(1, 1)].conj());
        let eq1 = &sys.equations()[1];
        assert_eq!(eq1[0].coefficient, -case.s[0].conj());
        assert_eq!(eq1[1].coefficient, case.y[&(1, 0)] * case.v0);
        assert_eq!(eq1[2].coefficient, case.y[&(1, 1)]);
    }

    #[test]
    fn supports_match_system_terms_and_mirror() {
        for t in [make_ring(5).unwrap(), make_complete(4).unwrap(), make_random_tree(6, 3).unwrap()] {
            let sup = build_supports(&t);
            let n = t.n();
            let sys = build_system(&sample_case(&t, 1, CoefficientMode::Independent), CoefficientMode::Independent, 1);
            for (s, eq) in sup.iter().zip(sys.equations()) {
                let terms: Vec<Vec<i64>> = eq.iter().map(|t| t.exponent.iter().map(|&x| x as i64).collect()).collect();
                assert_eq!(terms, s.points());
            }
            for i in 0..n {
                let mirrored: BTreeSet<Vec<i64>> = sup[i]
                    .points()
                    .iter()
                    .map(|p| p[n..].iter().chain(&p[..n]).copied().collect())
                    .collect();
                assert_eq!(mirrored, pts(&sup[n + i]));
                assert_eq!(sup[i].len(), t.neighbors(i + 1).len() + 1);
            }
        }
    }

    #[test]
    fn quadratic_points_cover_the_adjacency_polytope() {
        for t in [make_path(4).unwrap(), make_ring(5).unwrap(), make_complete(4).unwrap()] {
            let n = t.n();
            let ap: BTreeSet<Vec<i64>> = adjacency_polytope(&t)
                .points()
                .iter()
                .filter(|p| p[..n].iter().any(|&x| x != 0) && p[n..].iter().any(|&x| x != 0))
                .cloned()
                .collect();
            let quad: BTreeSet<Vec<i64>> = build_supports(&t)
                .iter()
                .flat_map(|s| s.points().to_vec())
                .filter(|p| p.iter().sum::<i64>() == 2)
                .collect();
            assert_eq!(quad, ap);
        }
    }

    #[test]
    fn independent_mode_is_reproducible() {
        let t = make_path(3).unwrap();
        let case = sample_case(&t, 1, CoefficientMode::ConjugatePaired);
        let a = build_system(&case, CoefficientMode::Independent, 4);
        assert_eq!(a, build_system(&case, CoefficientMode::Independent, 4));
        assert_ne!(a, build_system(&case, CoefficientMode::Independent, 5));
        assert_ne!(a, build_system(&case, CoefficientMode::ConjugatePaired, 4));
    }
}
