//! Exact simplex method.
//!
//! The engine works on an integer dictionary kept in fraction-free form: every entry is
//! an integer and the represented rational dictionary is `entry / det`, where `det` is the
//! last pivot element (the determinant of the current basis up to sign). Pivots use the
//! Edmonds/Bareiss update so divisions are always exact. Entering and leaving variables
//! follow Bland's rule, which guarantees termination.
//!
//! Variables are free (unrestricted in sign). Free variables are pivoted into the basis
//! first and never leave it; equality rows are eliminated the same way.

use super::exact::{with_fallback, ExactInt, ExactResult};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;

/// An integer linear program: maximize `objective · x` subject to the rows.
#[derive(Debug, Clone)]
pub(crate) struct IntLp<T> {
    pub vars: usize,
    pub objective: Vec<T>,
    /// `a · x = b`
    pub equalities: Vec<(Vec<T>, T)>,
    /// `a · x <= b`
    pub inequalities: Vec<(Vec<T>, T)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum IntOutcome<T> {
    /// `x_i = point[i] / den`, objective value `value / den`.
    Optimal { point: Vec<T>, den: T, value: T },
    /// A feasible basis with strictly positive objective was reached (early exit).
    Positive,
    Infeasible,
    Unbounded,
}

struct Dictionary<T> {
    // `det * x_basic[r] = rows[r][0] + sum_c rows[r][c + 1] * x_cols[c]`
    rows: Vec<Vec<T>>,
    basic: Vec<usize>,
    frozen: Vec<bool>,
    cols: Vec<usize>,
    obj: Vec<T>,
    aux: Option<Vec<T>>,
    det: T,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

enum Run {
    Optimal,
    Positive,
    Unbounded,
}

impl<T: ExactInt> Dictionary<T> {
    fn pivot(&mut self, r: usize, c: usize) -> ExactResult<()> {
        let pc = c + 1;
        let p = self.rows[r][pc].clone();
        debug_assert!(!p.is_zero());
        let d = self.det.clone();
        let pivot_row = self.rows[r].clone();
        let update = |row: &mut Vec<T>| -> ExactResult<()> {
            let f = row[pc].clone();
            for j in 0..row.len() {
                if j != pc {
                    row[j] = T::cross_div(&row[j], &p, &f, &pivot_row[j], &d)?;
                }
            }
            Ok(())
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update(row)?;
            }
        }
        update(&mut self.obj)?;
        if let Some(aux) = self.aux.as_mut() {
            update(aux)?;
        }
        let row = &mut self.rows[r];
        for (j, v) in row.iter_mut().enumerate() {
            if j == pc {
                *v = d.clone();
            } else {
                *v = v.neg()?;
            }
        }
        std::mem::swap(&mut self.basic[r], &mut self.cols[c]);
        self.det = p;
        if self.det.is_negative() {
            self.det = self.det.neg()?;
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.obj)) {
                for v in row.iter_mut() {
                    *v = v.neg()?;
                }
            }
            if let Some(aux) = self.aux.as_mut() {
                for v in aux.iter_mut() {
                    *v = v.neg()?;
                }
            }
        }
        Ok(())
    }

    fn remove_col(&mut self, c: usize) {
        self.cols.remove(c);
        for row in self.rows.iter_mut() {
            row.remove(c + 1);
        }
        self.obj.remove(c + 1);
        if let Some(aux) = self.aux.as_mut() {
            aux.remove(c + 1);
        }
    }

    fn remove_row(&mut self, r: usize) {
        self.rows.remove(r);
        self.basic.remove(r);
        self.frozen.remove(r);
    }

    /// Bland's-rule simplex on the selected objective row.
    fn run(&mut self, phase: Phase, stop_when_positive: bool) -> ExactResult<Run> {
        loop {
            let objrow = match phase {
                Phase::One => self.aux.as_ref().expect("phase one needs the auxiliary row"),
                Phase::Two => &self.obj,
            };
            if stop_when_positive && phase == Phase::Two && objrow[0].is_positive() {
                return Ok(Run::Positive);
            }
            let entering = (0..self.cols.len())
                .filter(|&c| objrow[c + 1].is_positive())
                .min_by_key(|&c| self.cols[c]);
            let Some(c) = entering else {
                return Ok(Run::Optimal);
            };
            let mut leaving: Option<usize> = None;
            for r in 0..self.rows.len() {
                if self.frozen[r] || !self.rows[r][c + 1].is_negative() {
                    continue;
                }
                leaving = Some(match leaving {
                    None => r,
                    Some(best) => {
                        // ratio rows[r][0] / -rows[r][c+1] against the incumbent
                        let lhs = self.rows[r][0].mul(&self.rows[best][c + 1].neg()?)?;
                        let rhs = self.rows[best][0].mul(&self.rows[r][c + 1].neg()?)?;
                        match lhs.cmp(&rhs) {
                            Ordering::Less => r,
                            Ordering::Greater => best,
                            Ordering::Equal => {
                                if self.basic[r] < self.basic[best] {
                                    r
                                } else {
                                    best
                                }
                            }
                        }
                    }
                });
            }
            let Some(r) = leaving else {
                return Ok(Run::Unbounded);
            };
            self.pivot(r, c)?;
        }
    }
}

impl<T: ExactInt> IntLp<T> {
    pub fn solve(&self, stop_when_positive: bool) -> ExactResult<IntOutcome<T>> {
        let n = self.vars;
        let m_eq = self.equalities.len();
        let rows: Vec<Vec<T>> = self
            .equalities
            .iter()
            .chain(self.inequalities.iter())
            .map(|(a, b)| {
                debug_assert_eq!(a.len(), n);
                let mut row = Vec::with_capacity(n + 1);
                row.push(b.clone());
                for v in a {
                    row.push(v.neg()?);
                }
                Ok(row)
            })
            .collect::<ExactResult<_>>()?;
        let m = rows.len();
        let mut obj = Vec::with_capacity(n + 1);
        obj.push(T::zero());
        obj.extend(self.objective.iter().cloned());
        let mut dict = Dictionary {
            rows,
            basic: (n..n + m).collect(),
            frozen: vec![false; m],
            cols: (0..n).collect(),
            obj,
            aux: None,
            det: T::one(),
        };
        let x0_id = n + m;

        // Equality rows: their slack must stay at zero.
        for eq in 0..m_eq {
            let slack_id = n + eq;
            let Some(r) = dict.basic.iter().position(|&b| b == slack_id) else {
                continue;
            };
            let col = (0..dict.cols.len())
                .filter(|&c| dict.cols[c] < n && !dict.rows[r][c + 1].is_zero())
                .min_by_key(|&c| dict.cols[c]);
            match col {
                None => {
                    if !dict.rows[r][0].is_zero() {
                        return Ok(IntOutcome::Infeasible);
                    }
                    dict.remove_row(r);
                }
                Some(c) => {
                    dict.pivot(r, c)?;
                    dict.frozen[r] = true;
                    dict.remove_col(c);
                }
            }
        }

        // Remaining free variables enter the basis and stay there.
        let mut unbounded_if_feasible = false;
        for var in 0..n {
            let Some(c) = dict.cols.iter().position(|&v| v == var) else {
                continue;
            };
            let row = (0..dict.rows.len()).find(|&r| !dict.frozen[r] && !dict.rows[r][c + 1].is_zero());
            match row {
                Some(r) => {
                    dict.pivot(r, c)?;
                    dict.frozen[r] = true;
                }
                None => {
                    if !dict.obj[c + 1].is_zero() {
                        unbounded_if_feasible = true;
                    }
                    dict.remove_col(c);
                }
            }
        }

        // Phase one with a single auxiliary variable when the basis is infeasible.
        let most_negative = (0..dict.rows.len())
            .filter(|&r| !dict.frozen[r] && dict.rows[r][0].is_negative())
            .min_by(|&a, &b| {
                dict.rows[a][0]
                    .cmp(&dict.rows[b][0])
                    .then(dict.basic[a].cmp(&dict.basic[b]))
            });
        if let Some(r0) = most_negative {
            let det = dict.det.clone();
            for (row, frozen) in dict.rows.iter_mut().zip(&dict.frozen) {
                row.push(if *frozen { T::zero() } else { det.clone() });
            }
            dict.obj.push(T::zero());
            let mut aux = vec![T::zero(); dict.cols.len() + 1];
            aux.push(det.neg()?);
            dict.aux = Some(aux);
            dict.cols.push(x0_id);
            dict.pivot(r0, dict.cols.len() - 1)?;
            match dict.run(Phase::One, false)? {
                Run::Optimal => {}
                Run::Positive | Run::Unbounded => unreachable!("auxiliary objective is bounded by zero"),
            }
            if dict.aux.as_ref().unwrap()[0].is_negative() {
                return Ok(IntOutcome::Infeasible);
            }
            if let Some(r) = dict.basic.iter().position(|&b| b == x0_id) {
                match (0..dict.cols.len()).find(|&c| !dict.rows[r][c + 1].is_zero()) {
                    Some(c) => dict.pivot(r, c)?,
                    None => dict.remove_row(r),
                }
            }
            dict.aux = None;
            let c = dict.cols.iter().position(|&v| v == x0_id).expect("x0 is nonbasic");
            dict.remove_col(c);
        }

        if unbounded_if_feasible {
            return Ok(IntOutcome::Unbounded);
        }
        match dict.run(Phase::Two, stop_when_positive)? {
            Run::Positive => return Ok(IntOutcome::Positive),
            Run::Unbounded => return Ok(IntOutcome::Unbounded),
            Run::Optimal => {}
        }
        let mut point = vec![T::zero(); n];
        for (r, &b) in dict.basic.iter().enumerate() {
            if b < n {
                point[b] = dict.rows[r][0].clone();
            }
        }
        Ok(IntOutcome::Optimal {
            point,
            den: dict.det.clone(),
            value: dict.obj[0].clone(),
        })
    }

    fn map<U: ExactInt>(&self, f: impl Fn(&T) -> ExactResult<U>) -> ExactResult<IntLp<U>> {
        let rows = |rs: &[(Vec<T>, T)]| -> ExactResult<Vec<(Vec<U>, U)>> {
            rs.iter()
                .map(|(a, b)| Ok((a.iter().map(&f).collect::<ExactResult<_>>()?, f(b)?)))
                .collect()
        };
        Ok(IntLp {
            vars: self.vars,
            objective: self.objective.iter().map(&f).collect::<ExactResult<_>>()?,
            equalities: rows(&self.equalities)?,
            inequalities: rows(&self.inequalities)?,
        })
    }
}

fn outcome_to_bigint<T: ExactInt>(o: IntOutcome<T>) -> IntOutcome<BigInt> {
    match o {
        IntOutcome::Optimal { point, den, value } => IntOutcome::Optimal {
            point: point.iter().map(|v| v.to_bigint()).collect(),
            den: den.to_bigint(),
            value: value.to_bigint(),
        },
        IntOutcome::Positive => IntOutcome::Positive,
        IntOutcome::Infeasible => IntOutcome::Infeasible,
        IntOutcome::Unbounded => IntOutcome::Unbounded,
    }
}

impl IntLp<i128> {
    /// Solves on `i64`, then `i128`, then `BigInt`, moving up whenever an intermediate
    /// value overflows.
    pub fn solve_exact(&self, stop_when_positive: bool) -> IntOutcome<BigInt> {
        let narrow = self
            .map(|v| i64::try_from(*v).map_err(|_| super::exact::Overflow))
            .and_then(|lp| lp.solve(stop_when_positive));
        if let Ok(o) = narrow {
            return outcome_to_bigint(o);
        }
        with_fallback(
            || self.solve(stop_when_positive).map(outcome_to_bigint),
            || {
                self.map(|v| Ok(v.to_bigint()))
                    .and_then(|lp| lp.solve(stop_when_positive))
                    .expect("BigInt never overflows")
            },
        )
    }
}

/// Constraint sense for [`LinearProgram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coefficients: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn less_eq(coefficients: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coefficients, relation: Relation::LessEq, rhs }
    }

    pub fn equal(coefficients: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coefficients, relation: Relation::Equal, rhs }
    }
}

/// Maximize `objective · x` over free variables `x` subject to the constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

fn scale_to_integers(values: &[&BigRational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

impl LinearProgram {
    pub fn solve(&self) -> Result<LpOutcome> {
        let n = self.objective.len();
        let mut lp = IntLp::<BigInt> {
            vars: n,
            objective: scale_to_integers(&self.objective.iter().collect::<Vec<_>>()),
            equalities: Vec::new(),
            inequalities: Vec::new(),
        };
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::contract(format!(
                    "constraint {i} has {} coefficients, objective has {n}",
                    c.coefficients.len()
                )));
            }
            let mut all: Vec<&BigRational> = c.coefficients.iter().collect();
            all.push(&c.rhs);
            let mut scaled = scale_to_integers(&all);
            let rhs = scaled.pop().expect("rhs present");
            match c.relation {
                Relation::LessEq => lp.inequalities.push((scaled, rhs)),
                Relation::Equal => lp.equalities.push((scaled, rhs)),
            }
        }
        // Try the fixed-width engine first; BigInt data that does not fit skips it.
        let outcome = match lp.map(i128::from_bigint) {
            Ok(small) => small.solve_exact(false),
            Err(_) => lp.solve(false).expect("BigInt never overflows"),
        };
        Ok(match outcome {
            IntOutcome::Optimal { point, den, .. } => {
                let point: Vec<BigRational> = point
                    .into_iter()
                    .map(|p| BigRational::new(p, den.clone()))
                    .collect();
                let value = point
                    .iter()
                    .zip(&self.objective)
                    .fold(BigRational::zero(), |acc, (x, c)| acc + x * c);
                LpOutcome::Optimal { point, value }
            }
            IntOutcome::Infeasible => LpOutcome::Infeasible,
            IntOutcome::Unbounded => LpOutcome::Unbounded,
            IntOutcome::Positive => unreachable!("early exit was not requested"),
        })
    }
}

/// Maximize `objective · x` subject to `a · x <= b` for every `(a, b)` in `constraints`.
pub fn solve_lp(objective: &[BigRational], constraints: &[(Vec<BigRational>, BigRational)]) -> Result<LpOutcome> {
    LinearProgram {
        objective: objective.to_vec(),
        constraints: constraints
            .iter()
            .map(|(a, b)| Constraint::less_eq(a.clone(), b.clone()))
            .collect(),
    }
    .solve()
}
