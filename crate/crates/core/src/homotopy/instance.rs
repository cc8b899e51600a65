use crate::algebra::PolynomialSystem;
use crate::error::{Error, Result};
use crate::geometry::{MixedCell, MixedCellDecomposition};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// `H(x, t) = Σ ((1 - t) z_p + t c_p) t^{ω_p} x^p` per equation, with random unit-modulus
/// start coefficients `z` and the target coefficients `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyInstance {
    pub target: PolynomialSystem,
    /// One per target term, in term order.
    pub start_coefficients: Vec<Vec<Complex64>>,
    /// The lifting values of the cell decomposition.
    pub t_exponents: Vec<Vec<i64>>,
    pub cells: MixedCellDecomposition,
}

const START_SALT: u64 = 0x6a09_e667_f3bc_c908;

pub fn build_homotopy(system: &PolynomialSystem, decomposition: MixedCellDecomposition, seed: u64) -> Result<HomotopyInstance> {
    let eqs = system.equations();
    let supports = &decomposition.supports;
    if eqs.len() != supports.len() || decomposition.lifting.values.len() != supports.len() {
        return Err(Error::contract(format!(
            "{} equations against {} supports",
            eqs.len(),
            supports.len()
        )));
    }
    for (j, (eq, sup)) in eqs.iter().zip(supports).enumerate() {
        let same = eq.len() == sup.len()
            && eq
                .iter()
                .zip(sup.points())
                .all(|(t, p)| t.exponent.iter().zip(p).all(|(&a, &b)| i64::from(a) == b));
        if !same || decomposition.lifting.values[j].len() != sup.len() {
            return Err(Error::contract(format!("equation {j} does not match its support")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ START_SALT);
    let start_coefficients = eqs
        .iter()
        .map(|eq| eq.iter().map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))).collect())
        .collect();
    Ok(HomotopyInstance {
        target: system.clone(),
        start_coefficients,
        t_exponents: decomposition.lifting.values.clone(),
        cells: decomposition,
    })
}

impl HomotopyInstance {
    pub fn dimension(&self) -> usize {
        self.target.variable_count()
    }

    /// `H(x, t)` for `t` in `[0, 1]`.
    pub fn evaluate(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
        if x.len() != self.dimension() {
            return Err(Error::contract("point dimension does not match the system"));
        }
        Ok(self
            .target
            .equations()
            .iter()
            .zip(&self.start_coefficients)
            .zip(&self.t_exponents)
            .map(|((eq, zs), ws)| {
                eq.iter()
                    .zip(zs)
                    .zip(ws)
                    .map(|((term, z), &w)| {
                        let c = z * (1.0 - t) + term.coefficient * t;
                        let mono = term
                            .exponent
                            .iter()
                            .zip(x)
                            .fold(Complex64::new(1.0, 0.0), |acc, (&e, xi)| acc * xi.powu(e));
                        c * t.powf(w as f64) * mono
                    })
                    .sum()
            })
            .collect())
    }

    /// The homotopy in the coordinates `x = y t^α` of `cell`, divided through by the
    /// lowest power of `t` in each equation.
    pub fn cell_homotopy(&self, cell: &MixedCell) -> Result<CellHomotopy> {
        let d = self.dimension();
        let normal = &cell.inner_normal;
        if cell.selection.len() != d || normal.numerators.len() != d || !normal.denominator.is_positive() {
            return Err(Error::contract("cell does not belong to this instance"));
        }
        let den = &normal.denominator;
        let den_f = den.to_f64().unwrap_or(f64::INFINITY);
        let alpha: Vec<f64> = normal
            .numerators
            .iter()
            .map(|a| a.to_f64().unwrap_or(f64::NAN) / den_f)
            .collect();
        let mut equations = Vec::with_capacity(d);
        for (j, eq) in self.target.equations().iter().enumerate() {
            // D·(p·α + ω_p), exact
            let height = |k: usize| -> BigInt {
                let dot: BigInt = eq[k]
                    .exponent
                    .iter()
                    .zip(&normal.numerators)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, a)| a * BigInt::from(e))
                    .sum();
                dot + den * BigInt::from(self.t_exponents[j][k])
            };
            let [a, b] = cell.selection[j];
            if a >= eq.len() || b >= eq.len() {
                return Err(Error::contract("cell does not belong to this instance"));
            }
            let base = height(a);
            if height(b) != base {
                return Err(Error::contract(format!("cell pair {j} is not on a common lower face")));
            }
            let mut terms = Vec::with_capacity(eq.len());
            for (k, term) in eq.iter().enumerate() {
                let scaled = height(k) - &base;
                if scaled.is_negative() || (scaled.is_zero() && k != a && k != b) {
                    return Err(Error::contract(format!("cell normal is not lowest on support {j}")));
                }
                let gamma = if scaled.is_zero() { 0.0 } else { scaled.to_f64().unwrap_or(f64::INFINITY) / den_f };
                terms.push(CellTerm {
                    factors: term
                        .exponent
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| (v, e))
                        .collect(),
                    start: self.start_coefficients[j][k],
                    target: term.coefficient,
                    gamma,
                });
            }
            equations.push(terms);
        }
        Ok(CellHomotopy { dimension: d, alpha, equations })
    }
}

#[derive(Debug, Clone)]
struct CellTerm {
    factors: Vec<(usize, u32)>,
    start: Complex64,
    target: Complex64,
    gamma: f64,
}

/// A cell-rescaled homotopy in the tracking parameter `u`, where `t = exp(-e^u)`.
/// Large `u` is the start (`t → 0`), `u → -∞` is the target.
#[derive(Debug, Clone)]
pub struct CellHomotopy {
    dimension: usize,
    alpha: Vec<f64>,
    equations: Vec<Vec<CellTerm>>,
}

/// Values at one point: `H`, `∂H/∂y` and `∂H/∂u`.
pub(crate) struct Evaluation {
    pub h: DVector<Complex64>,
    pub jac: DMatrix<Complex64>,
    pub du: DVector<Complex64>,
}

impl CellHomotopy {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Number of terms without a positive power of `t`, per equation.
    pub fn surviving_terms(&self) -> Vec<usize> {
        self.equations.iter().map(|eq| eq.iter().filter(|t| t.gamma == 0.0).count()).collect()
    }

    fn gamma_range(&self) -> (f64, f64) {
        let pos = self.equations.iter().flatten().map(|t| t.gamma).filter(|&g| g > 0.0);
        pos.fold((f64::INFINITY, 0.0), |(lo, hi), g| (lo.min(g), hi.max(g)))
    }

    /// Parameter at which every non-cell term and the target blend are below `e^-40`.
    pub fn u_start(&self) -> f64 {
        let (lo, _) = self.gamma_range();
        let scale = if lo.is_finite() { (1.0 / lo).max(1.0) } else { 1.0 };
        (40.0 * scale).ln()
    }

    /// Parameter at which every `t` power is within `gap` of 1.
    pub fn u_end(&self, gap: f64) -> f64 {
        let (_, hi) = self.gamma_range();
        let amax = self.alpha.iter().fold(1.0f64, |m, a| m.max(a.abs()));
        (gap / hi.max(amax).max(1.0)).ln()
    }

    /// The binomial start system at `t = 0`: for each equation the exponent difference
    /// `a - b` of the two surviving terms and `-z_b / z_a`.
    pub fn binomials(&self) -> Vec<(Vec<i64>, Complex64)> {
        self.equations
            .iter()
            .map(|eq| {
                let live: Vec<&CellTerm> = eq.iter().filter(|t| t.gamma == 0.0).collect();
                let mut row = vec![0i64; self.dimension];
                for &(v, e) in &live[0].factors {
                    row[v] += i64::from(e);
                }
                for &(v, e) in &live[1].factors {
                    row[v] -= i64::from(e);
                }
                (row, -live[1].start / live[0].start)
            })
            .collect()
    }

    /// Maps cell coordinates at parameter `u` back to `x`.
    pub fn to_original(&self, y: &[Complex64], u: f64) -> Vec<Complex64> {
        let w = u.exp();
        y.iter().zip(&self.alpha).map(|(yi, a)| yi * (-w * a).exp()).collect()
    }

    pub(crate) fn evaluate(&self, y: &DVector<Complex64>, u: f64) -> Evaluation {
        let d = self.dimension;
        let w = u.exp();
        let t = (-w).exp();
        let mut h = DVector::zeros(d);
        let mut jac = DMatrix::zeros(d, d);
        let mut du = DVector::zeros(d);
        for (j, eq) in self.equations.iter().enumerate() {
            for term in eq {
                let decay = if term.gamma == 0.0 { 1.0 } else { (-term.gamma * w).exp() };
                if decay == 0.0 {
                    continue;
                }
                let diff = term.target - term.start;
                let blend = term.start + diff * t;
                let coef = blend * decay;
                let dcoef = -(diff * t + blend * term.gamma) * (w * decay);
                let mut mono = Complex64::new(1.0, 0.0);
                for &(v, e) in &term.factors {
                    mono *= y[v].powu(e);
                }
                h[j] += coef * mono;
                du[j] += dcoef * mono;
                for (idx, &(v, e)) in term.factors.iter().enumerate() {
                    let mut part = coef * e as f64 * y[v].powu(e - 1);
                    for (other, &(v2, e2)) in term.factors.iter().enumerate() {
                        if other != idx {
                            part *= y[v2].powu(e2);
                        }
                    }
                    jac[(j, v)] += part;
                }
            }
        }
        Evaluation { h, jac, du }
    }
}
