use super::tracker::{track_cell, EndpointStatus, TrackedEndpoint, TrackerSettings, RESIDUAL_TOL};
use super::{build_homotopy, HomotopyInstance};
use crate::algebra::{build_supports, build_system, PolynomialSystem};
use crate::error::Result;
use crate::geometry::mixed_volume;
use crate::network::{CoefficientMode, NetworkCase};
use num_bigint::BigUint;
use num_complex::Complex64;
use rayon::prelude::*;
use std::cmp::Ordering;

pub const ZERO_TOL: f64 = 1e-8;
pub const DEDUP_TOL: f64 = 1e-6;
/// Rounds of retracking with smaller steps for paths that failed or collided.
pub const RETRACK_ROUNDS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolutionCounts {
    pub nondeficient: u64,
    pub deficient: u64,
    pub failures: u64,
    pub paths_tracked: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    /// Distinct converged endpoints, sorted lexicographically by `(re, im)`.
    pub solutions: Vec<Vec<Complex64>>,
    pub counts: SolutionCounts,
    pub bkk: BigUint,
}

fn max_norm(x: &[Complex64]) -> f64 {
    x.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Max-norm distance relative to `1 + ‖a‖∞`.
pub fn relative_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let gap = a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    gap / (1.0 + max_norm(a))
}

fn lex(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (p, q) in a.iter().zip(b) {
        let o = p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Groups the indices of converged endpoints into clusters of coinciding points.
fn clusters(endpoints: &[TrackedEndpoint]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, e) in endpoints.iter().enumerate() {
        if e.status != EndpointStatus::Converged {
            continue;
        }
        match groups.iter_mut().find(|g| relative_distance(&endpoints[g[0]].point, &e.point) < DEDUP_TOL) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

fn is_good(e: &TrackedEndpoint, target: &PolynomialSystem) -> bool {
    e.status == EndpointStatus::Converged
        && target
            .evaluate(&e.point)
            .map(|v| max_norm(&v) < RESIDUAL_TOL)
            .unwrap_or(false)
}

/// Deduplicates converged endpoints and counts them; an endpoint is deficient when some
/// coordinate is below `zero_tol` in magnitude. Endpoints that did not converge or fail
/// the residual check on `target` count as failures.
pub fn classify(endpoints: &[TrackedEndpoint], target: &PolynomialSystem, zero_tol: f64) -> (Vec<Vec<Complex64>>, SolutionCounts) {
    let verified: Vec<TrackedEndpoint> = endpoints
        .iter()
        .map(|e| {
            let mut e = e.clone();
            if !is_good(&e, target) && e.status == EndpointStatus::Converged {
                e.status = EndpointStatus::StepFailure;
            }
            e
        })
        .collect();
    let mut counts = SolutionCounts { paths_tracked: endpoints.len() as u64, ..Default::default() };
    counts.failures = verified.iter().filter(|e| e.status != EndpointStatus::Converged).count() as u64;
    let mut solutions: Vec<Vec<Complex64>> = clusters(&verified).into_iter().map(|g| verified[g[0]].point.clone()).collect();
    for s in &solutions {
        if s.iter().any(|z| z.norm() < zero_tol) {
            counts.deficient += 1;
        } else {
            counts.nondeficient += 1;
        }
    }
    solutions.sort_by(|a, b| lex(a, b));
    (solutions, counts)
}

/// Start solutions of every cell, with their cell index, in cell order.
fn tasks(instance: &HomotopyInstance) -> Result<Vec<(usize, Vec<Complex64>)>> {
    let mut out = Vec::new();
    for (k, cell) in instance.cells.cells.iter().enumerate() {
        out.extend(instance.start_solutions(cell)?.into_iter().map(|y| (k, y)));
    }
    Ok(out)
}

/// Tracks every path of `instance`. Paths that fail, or whose endpoints coincide with
/// another path's, are tracked again with smaller steps.
pub fn track_all(instance: &HomotopyInstance, settings: &TrackerSettings) -> Result<Vec<TrackedEndpoint>> {
    settings.validate()?;
    let cells = instance
        .cells
        .cells
        .iter()
        .map(|c| instance.cell_homotopy(c))
        .collect::<Result<Vec<_>>>()?;
    let tasks = tasks(instance)?;
    let run = |idx: &[usize], s: &TrackerSettings| -> Vec<TrackedEndpoint> {
        idx.par_iter()
            .map(|&i| {
                let (k, y) = &tasks[i];
                track_cell(&instance.target, &cells[*k], y, s)
            })
            .collect()
    };
    let all: Vec<usize> = (0..tasks.len()).collect();
    let mut endpoints = run(&all, settings);
    for round in 1..=RETRACK_ROUNDS {
        let mut redo: Vec<usize> = (0..endpoints.len()).filter(|&i| !is_good(&endpoints[i], &instance.target)).collect();
        for g in clusters(&endpoints) {
            if g.len() > 1 {
                redo.extend(g);
            }
        }
        if redo.is_empty() {
            break;
        }
        redo.sort_unstable();
        redo.dedup();
        let finer = settings.refined(4f64.powi(round as i32));
        for (i, e) in redo.iter().zip(run(&redo, &finer)) {
            endpoints[*i] = e;
        }
    }
    Ok(endpoints)
}

/// The full pipeline: system, supports, mixed cells, homotopy, tracking, counting.
pub fn solve(case: &NetworkCase, mode: CoefficientMode, settings: &TrackerSettings, seed: u64) -> Result<SolutionSet> {
    let system = build_system(case, mode, seed);
    let decomposition = mixed_volume(&build_supports(&case.topology), seed)?;
    let instance = build_homotopy(&system, decomposition, seed)?;
    solve_instance(&instance, settings)
}

pub fn solve_instance(instance: &HomotopyInstance, settings: &TrackerSettings) -> Result<SolutionSet> {
    let endpoints = track_all(instance, settings)?;
    let (solutions, counts) = classify(&endpoints, &instance.target, ZERO_TOL);
    Ok(SolutionSet { solutions, counts, bkk: instance.cells.total.clone() })
}
