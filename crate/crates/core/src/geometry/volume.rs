//! Normalized volume through a regular triangulation.
//!
//! A random lifting makes the lower hull of the lifted points a triangulation. One lower
//! facet is found by linear programming, then neighbors are discovered by walking across
//! facets: the replacement vertex across a face is the point whose lifted height lies
//! lowest relative to the current facet's hyperplane in the direction of that face.
//! Every simplex is stored with its fraction-free inverse, which a rank-one update carries
//! to the neighbor.

use super::exact::{scaled_inverse, with_fallback, ExactInt, ExactResult};
use super::lifting::{attempt_seed, Lifting, MAX_ATTEMPTS};
use super::lp::{IntLp, IntOutcome};
use super::PointConfiguration;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use std::collections::{HashSet, VecDeque};

/// A regular triangulation of a full-dimensional configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub lifting: Lifting,
    /// Vertex indices of each simplex, sorted, in discovery order.
    pub simplices: Vec<Vec<usize>>,
    /// Sum of the normalized volumes of the simplices.
    pub total: BigUint,
}

struct Simplex<T> {
    verts: Vec<usize>,
    det: T,
    adj: Vec<Vec<T>>,
}

enum Walk<T> {
    Done(Vec<(Vec<usize>, T)>),
    Degenerate,
}

/// Barycentric coordinates scaled by `det`: `adj · (1, q)`.
fn scaled_barycentric<T: ExactInt>(adj: &[Vec<T>], q: &[T]) -> ExactResult<Vec<T>> {
    adj.iter()
        .map(|row| {
            let mut acc = row[0].clone();
            for (a, x) in row[1..].iter().zip(q) {
                if !x.is_zero() {
                    acc = acc.add(&a.mul(x)?)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn walk<T: ExactInt>(points: &[Vec<T>], omega: &[T], start: Vec<usize>) -> ExactResult<Walk<T>> {
    let d = points[0].len();
    let matrix: Vec<Vec<T>> = (0..=d)
        .map(|r| {
            start
                .iter()
                .map(|&v| if r == 0 { T::one() } else { points[v][r - 1].clone() })
                .collect()
        })
        .collect();
    let Some(inv) = scaled_inverse(&matrix)? else {
        return Ok(Walk::Degenerate);
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut key = start.clone();
    key.sort_unstable();
    seen.insert(key);
    let mut queue = VecDeque::from([Simplex { verts: start, det: inv.det, adj: inv.adj }]);
    let mut out = Vec::new();

    while let Some(simplex) = queue.pop_front() {
        let in_simplex = |q: usize| simplex.verts.contains(&q);
        // Scaled barycentric coordinates and lifted gaps of every other point.
        let mut lambdas: Vec<(usize, Vec<T>, T)> = Vec::with_capacity(points.len());
        for (q, p) in points.iter().enumerate() {
            if in_simplex(q) {
                continue;
            }
            let lam = scaled_barycentric(&simplex.adj, p)?;
            let mut h = T::zero();
            for (l, &v) in lam.iter().zip(&simplex.verts) {
                h = h.add(&l.mul(&omega[v])?)?;
            }
            let gap = simplex.det.mul(&omega[q])?.sub(&h)?;
            if !gap.is_positive() {
                return Ok(Walk::Degenerate);
            }
            lambdas.push((q, lam, gap));
        }
        for i in 0..=d {
            // argmin gap / -lambda_i over points beyond face i
            let mut best: Option<(usize, &Vec<T>, &T)> = None;
            let mut tie = false;
            for (q, lam, gap) in &lambdas {
                if !lam[i].is_negative() {
                    continue;
                }
                match best {
                    None => best = Some((*q, lam, gap)),
                    Some((_, blam, bgap)) => {
                        let lhs = gap.mul(&blam[i].neg()?)?;
                        let rhs = bgap.mul(&lam[i].neg()?)?;
                        match lhs.cmp(&rhs) {
                            std::cmp::Ordering::Less => {
                                best = Some((*q, lam, gap));
                                tie = false;
                            }
                            std::cmp::Ordering::Equal => tie = true,
                            std::cmp::Ordering::Greater => {}
                        }
                    }
                }
            }
            let Some((q, lam, _)) = best else {
                continue;
            };
            if tie {
                return Ok(Walk::Degenerate);
            }
            let mut verts = simplex.verts.clone();
            verts[i] = q;
            let mut key = verts.clone();
            key.sort_unstable();
            if !seen.insert(key) {
                continue;
            }
            let pivot = lam[i].clone();
            let det = pivot.neg()?;
            let adj = (0..=d)
                .map(|k| {
                    if k == i {
                        simplex.adj[i].iter().map(|v| v.neg()).collect::<ExactResult<Vec<T>>>()
                    } else {
                        simplex.adj[k]
                            .iter()
                            .zip(&simplex.adj[i])
                            .map(|(ak, ai)| T::cross_div(&det, ak, &lam[k].neg()?, ai, &simplex.det))
                            .collect()
                    }
                })
                .collect::<ExactResult<Vec<_>>>()?;
            queue.push_back(Simplex { verts, det, adj });
        }
        let mut key = simplex.verts;
        key.sort_unstable();
        out.push((key, simplex.det));
    }
    Ok(Walk::Done(out))
}

/// Finds a lower facet of the lifted points; `None` when the lifting is not generic.
fn initial_simplex(points: &[Vec<i64>], omega: &[i64]) -> Option<Vec<usize>> {
    let d = points[0].len();
    let n = points.len() as i128;
    let mut objective: Vec<i128> = vec![0; d + 1];
    for p in points {
        for (o, &x) in objective.iter_mut().zip(p) {
            *o += x as i128;
        }
    }
    objective[d] = n;
    let lp = IntLp {
        vars: d + 1,
        objective,
        equalities: Vec::new(),
        inequalities: points
            .iter()
            .zip(omega)
            .map(|(p, &w)| {
                let mut row: Vec<i128> = p.iter().map(|&x| x as i128).collect();
                row.push(1);
                (row, w as i128)
            })
            .collect(),
    };
    let IntOutcome::Optimal { point, den, .. } = lp.solve_exact(false) else {
        return None;
    };
    let tight: Vec<usize> = points
        .iter()
        .zip(omega)
        .enumerate()
        .filter(|(_, (p, &w))| {
            let mut lhs = point[d].clone();
            for (x, a) in p.iter().zip(&point) {
                lhs += a * BigInt::from(*x);
            }
            lhs == &den * BigInt::from(w)
        })
        .map(|(k, _)| k)
        .collect();
    (tight.len() == d + 1).then_some(tight)
}

/// Regular triangulation induced by a lifting drawn from `seed` (retrying with derived
/// seeds while the lifting is not generic).
pub fn regular_triangulation(config: &PointConfiguration, seed: u64) -> Result<Triangulation> {
    let d = config.dimension();
    if config.is_empty() || config.affine_rank() < d {
        return Err(Error::contract("configuration does not span its ambient space"));
    }
    let points = config.points();
    if d == 0 {
        return Ok(Triangulation {
            lifting: Lifting::random(&[1], seed),
            simplices: vec![vec![0]],
            total: BigUint::from(1u8),
        });
    }
    for attempt in 0..MAX_ATTEMPTS {
        let lifting = Lifting::random(&[points.len()], attempt_seed(seed, attempt));
        let omega = &lifting.values[0];
        let Some(start) = initial_simplex(points, omega) else {
            continue;
        };
        let walked = with_fallback(
            || {
                let pts: Vec<Vec<i128>> = points.iter().map(|p| p.iter().map(|&x| x as i128).collect()).collect();
                let om: Vec<i128> = omega.iter().map(|&w| w as i128).collect();
                walk(&pts, &om, start.clone()).map(|w| match w {
                    Walk::Done(s) => Some(s.into_iter().map(|(v, det)| (v, det.to_bigint())).collect::<Vec<_>>()),
                    Walk::Degenerate => None,
                })
            },
            || {
                let pts: Vec<Vec<BigInt>> = points.iter().map(|p| p.iter().map(|&x| BigInt::from(x)).collect()).collect();
                let om: Vec<BigInt> = omega.iter().map(|&w| BigInt::from(w)).collect();
                match walk(&pts, &om, start.clone()).expect("BigInt never overflows") {
                    Walk::Done(s) => Some(s),
                    Walk::Degenerate => None,
                }
            },
        );
        if let Some(simplices) = walked {
            let total = simplices
                .iter()
                .map(|(_, det)| det.to_biguint().expect("volumes are positive"))
                .sum();
            return Ok(Triangulation {
                lifting,
                simplices: simplices.into_iter().map(|(v, _)| v).collect(),
                total,
            });
        }
    }
    Err(Error::Genericity { attempts: MAX_ATTEMPTS })
}

/// `d!` times the Euclidean volume of the convex hull; zero when the points do not span.
pub fn normalized_volume(config: &PointConfiguration) -> Result<BigUint> {
    normalized_volume_seeded(config, 0)
}

pub fn normalized_volume_seeded(config: &PointConfiguration, seed: u64) -> Result<BigUint> {
    if config.is_empty() || config.affine_rank() < config.dimension() {
        return Ok(BigUint::default());
    }
    Ok(regular_triangulation(config, seed)?.total)
}
