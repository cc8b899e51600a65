use super::instance::CellHomotopy;
use super::HomotopyInstance;
use crate::algebra::PolynomialSystem;
use crate::error::{Error, Result};
use crate::geometry::MixedCell;
use nalgebra::DVector;
use num_complex::Complex64;

/// Step sizes are measured in the tracking parameter `u = ln(-ln t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackerSettings {
    pub initial_step: f64,
    pub min_step: f64,
    /// Upper limit on the step after repeated successes.
    pub max_step: f64,
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub max_steps: usize,
    /// Tracking stops once every power of `t` is within `1 - end_t` of 1; a Newton polish
    /// on the target system follows.
    pub end_t: f64,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        TrackerSettings {
            initial_step: 0.05,
            min_step: 1e-7,
            max_step: 0.5,
            newton_tol: 1e-10,
            max_newton_iters: 6,
            max_steps: 100_000,
            end_t: 1.0 - 1e-12,
        }
    }
}

impl TrackerSettings {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.initial_step, self.min_step, self.max_step, self.newton_tol]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite());
        if !positive
            || self.max_newton_iters == 0
            || self.max_steps == 0
            || self.min_step >= self.initial_step
            || self.initial_step > self.max_step
            || !(self.end_t > 0.0 && self.end_t < 1.0)
        {
            return Err(Error::contract(format!("invalid tracker settings {self:?}")));
        }
        Ok(())
    }

    /// Same tolerances with every step size divided by `factor`.
    pub fn refined(&self, factor: f64) -> Self {
        TrackerSettings {
            initial_step: self.initial_step / factor,
            max_step: self.max_step / factor,
            min_step: self.min_step.min(self.initial_step / factor / 2.0),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndpointStatus {
    Converged,
    Diverged,
    Singular,
    StepFailure,
}

impl EndpointStatus {
    pub fn name(self) -> &'static str {
        match self {
            EndpointStatus::Converged => "converged",
            EndpointStatus::Diverged => "diverged",
            EndpointStatus::Singular => "singular",
            EndpointStatus::StepFailure => "step-failure",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrackedEndpoint {
    pub point: Vec<Complex64>,
    pub status: EndpointStatus,
    /// `‖F(x)‖∞` on the target system.
    pub residual: f64,
    /// Ratio of extreme singular values of the target Jacobian at the endpoint.
    pub condition_estimate: f64,
}

pub const DIVERGENCE_NORM: f64 = 1e10;
pub const SINGULAR_CONDITION: f64 = 1e12;
pub const RESIDUAL_TOL: f64 = 1e-8;

fn amax(v: &DVector<Complex64>) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

fn tangent(ch: &CellHomotopy, y: &DVector<Complex64>, u: f64) -> Option<DVector<Complex64>> {
    let e = ch.evaluate(y, u);
    e.jac.lu().solve(&(-e.du))
}

/// Classical RK4 step of `dy/du = -H_y^{-1} H_u`.
fn predict(ch: &CellHomotopy, y: &DVector<Complex64>, u: f64, h: f64) -> Option<DVector<Complex64>> {
    let hc = Complex64::new(h, 0.0);
    let half = Complex64::new(h / 2.0, 0.0);
    let k1 = tangent(ch, y, u)?;
    let k2 = tangent(ch, &(y + &k1 * half), u + h / 2.0)?;
    let k3 = tangent(ch, &(y + &k2 * half), u + h / 2.0)?;
    let k4 = tangent(ch, &(y + &k3 * hc), u + h)?;
    let sum = k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4;
    Some(y + sum * Complex64::new(h / 6.0, 0.0))
}

/// Newton at fixed `u`; fails unless the corrections shrink steadily to the tolerance.
fn correct(ch: &CellHomotopy, mut y: DVector<Complex64>, u: f64, s: &TrackerSettings) -> Option<DVector<Complex64>> {
    let mut last = f64::INFINITY;
    for _ in 0..s.max_newton_iters {
        let e = ch.evaluate(&y, u);
        let dy = e.jac.lu().solve(&(-e.h))?;
        let size = amax(&dy);
        if !size.is_finite() || size > 0.5 * last {
            return None;
        }
        y += dy;
        if size <= s.newton_tol * (1.0 + amax(&y)) {
            return Some(y);
        }
        last = size;
    }
    None
}

fn residual(target: &PolynomialSystem, x: &[Complex64]) -> f64 {
    target
        .evaluate(x)
        .map(|v| v.iter().fold(0.0f64, |m, z| m.max(z.norm())))
        .unwrap_or(f64::INFINITY)
}

fn condition(target: &PolynomialSystem, x: &[Complex64]) -> f64 {
    let Ok(jac) = target.jacobian(x) else { return f64::INFINITY };
    if jac.iter().any(|z| !z.is_finite()) {
        return f64::INFINITY;
    }
    // the SVD iteration never terminates on some inputs without a cap
    let Some(svd) = jac.try_svd(false, false, f64::EPSILON, 1000) else { return f64::INFINITY };
    let sv = svd.singular_values;
    let hi = sv.iter().fold(0.0f64, |m, &v| m.max(v));
    let lo = sv.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

/// Newton on the target system; returns the polished point.
fn polish(target: &PolynomialSystem, x: Vec<Complex64>, s: &TrackerSettings) -> Vec<Complex64> {
    let mut x = DVector::from_vec(x);
    for _ in 0..2 * s.max_newton_iters {
        let (Ok(f), Ok(jac)) = (target.evaluate(x.as_slice()), target.jacobian(x.as_slice())) else {
            break;
        };
        let Some(dx) = jac.lu().solve(&(-DVector::from_vec(f))) else { break };
        let size = amax(&dx);
        if !size.is_finite() {
            break;
        }
        x += dx;
        if size <= 1e-2 * s.newton_tol * (1.0 + amax(&x)) {
            break;
        }
    }
    x.data.into()
}

fn finish(target: &PolynomialSystem, point: Vec<Complex64>, status: EndpointStatus) -> TrackedEndpoint {
    let residual = residual(target, &point);
    let condition_estimate = condition(target, &point);
    TrackedEndpoint { point, status, residual, condition_estimate }
}

/// Follows one path of a cell homotopy from `u_start` down to `u_end`, then polishes at
/// `t = 1`.
pub(crate) fn track_cell(target: &PolynomialSystem, ch: &CellHomotopy, start: &[Complex64], s: &TrackerSettings) -> TrackedEndpoint {
    let mut u = ch.u_start();
    let u_end = ch.u_end(1.0 - s.end_t);
    let mut y = DVector::from_column_slice(start);
    if let Some(c) = correct(ch, y.clone(), u, s) {
        y = c;
    }
    let mut h = s.initial_step;
    let mut streak = 0;
    let mut steps = 0;
    while u > u_end {
        if steps >= s.max_steps {
            return finish(target, ch.to_original(y.as_slice(), u), EndpointStatus::StepFailure);
        }
        steps += 1;
        let step = h.min(u - u_end);
        let next = predict(ch, &y, u, -step).and_then(|p| correct(ch, p, u - step, s));
        match next {
            Some(n) => {
                y = n;
                u -= step;
                streak += 1;
                if streak >= 5 {
                    h = (2.0 * h).min(s.max_step);
                    streak = 0;
                }
                if amax(&y) > DIVERGENCE_NORM {
                    return finish(target, ch.to_original(y.as_slice(), u), EndpointStatus::Diverged);
                }
            }
            None => {
                h /= 2.0;
                streak = 0;
                if h < s.min_step {
                    return finish(target, ch.to_original(y.as_slice(), u), EndpointStatus::StepFailure);
                }
            }
        }
    }
    let x = polish(target, ch.to_original(y.as_slice(), u), s);
    let mut end = finish(target, x, EndpointStatus::Converged);
    if end.point.iter().any(|z| !z.is_finite()) || end.point.iter().fold(0.0, |m: f64, z| m.max(z.norm())) > DIVERGENCE_NORM {
        end.status = EndpointStatus::Diverged;
    } else if end.condition_estimate > SINGULAR_CONDITION {
        end.status = EndpointStatus::Singular;
    } else if end.residual >= RESIDUAL_TOL {
        end.status = EndpointStatus::StepFailure;
    }
    end
}

/// Tracks the path of `cell` starting at the start solution `start`.
pub fn track(instance: &HomotopyInstance, cell: &MixedCell, start: &[Complex64], settings: &TrackerSettings) -> Result<TrackedEndpoint> {
    settings.validate()?;
    if start.len() != instance.dimension() {
        return Err(Error::contract("start point dimension does not match the system"));
    }
    let ch = instance.cell_homotopy(cell)?;
    Ok(track_cell(&instance.target, &ch, start, settings))
}
