use crate::error::{Error, Result};
use crate::network::to_pretty_json;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// A monomial `coefficient · x^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub exponent: Vec<u32>,
    pub coefficient: Complex64,
}

/// Square polynomial system with terms kept in lexicographic exponent order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    variable_count: usize,
    equations: Vec<Vec<Term>>,
}

fn pow(x: Complex64, e: u32) -> Complex64 {
    match e {
        0 => Complex64::new(1.0, 0.0),
        1 => x,
        2 => x * x,
        _ => x.powu(e),
    }
}

fn monomial(exponent: &[u32], x: &[Complex64]) -> Complex64 {
    exponent
        .iter()
        .zip(x)
        .filter(|(&e, _)| e > 0)
        .fold(Complex64::new(1.0, 0.0), |acc, (&e, &xi)| acc * pow(xi, e))
}

impl PolynomialSystem {
    /// Sorts the terms of each equation, merges repeated exponents by summation and drops
    /// zero coefficients.
    pub fn new(variable_count: usize, equations: Vec<Vec<Term>>) -> Result<Self> {
        let mut merged = Vec::with_capacity(equations.len());
        for (i, eq) in equations.into_iter().enumerate() {
            let mut acc: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
            for t in eq {
                if t.exponent.len() != variable_count {
                    return Err(Error::contract(format!(
                        "equation {i} has a term with {} exponents, expected {variable_count}",
                        t.exponent.len()
                    )));
                }
                *acc.entry(t.exponent).or_default() += t.coefficient;
            }
            merged.push(
                acc.into_iter()
                    .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                    .map(|(exponent, coefficient)| Term { exponent, coefficient })
                    .collect(),
            );
        }
        Ok(PolynomialSystem { variable_count, equations: merged })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn equations(&self) -> &[Vec<Term>] {
        &self.equations
    }

    fn check(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.variable_count {
            return Err(Error::contract(format!(
                "point has {} coordinates, system has {} variables",
                x.len(),
                self.variable_count
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(x)?;
        Ok(self
            .equations
            .iter()
            .map(|eq| eq.iter().map(|t| t.coefficient * monomial(&t.exponent, x)).sum())
            .collect())
    }

    /// `J[i][j] = ∂ f_i / ∂ x_j`.
    pub fn jacobian(&self, x: &[Complex64]) -> Result<DMatrix<Complex64>> {
        self.check(x)?;
        let mut jac = DMatrix::zeros(self.equations.len(), self.variable_count);
        for (i, eq) in self.equations.iter().enumerate() {
            for t in eq {
                for (j, &e) in t.exponent.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let mut d = t.coefficient * e as f64 * pow(x[j], e - 1);
                    for (k, &ek) in t.exponent.iter().enumerate() {
                        if k != j && ek > 0 {
                            d *= pow(x[k], ek);
                        }
                    }
                    jac[(i, j)] += d;
                }
            }
        }
        Ok(jac)
    }

    /// `{"n": <buses>, "variables": <2n>, "equations": [[[exp...], [re, im]], ...]}`.
    pub fn to_json(&self) -> String {
        let equations: Vec<Value> = self
            .equations
            .iter()
            .map(|eq| {
                Value::Array(
                    eq.iter()
                        .map(|t| json!([t.exponent, [t.coefficient.re, t.coefficient.im]]))
                        .collect(),
                )
            })
            .collect();
        to_pretty_json(&json!({
            "n": self.variable_count / 2,
            "variables": self.variable_count,
            "equations": equations,
        }))
    }
}
