//! Incremental fraction-free elimination for the mixed-cell search.
//!
//! The equalities `(p_a - p_b)·α = ω_b - ω_a` of the chosen edges are kept in reduced
//! row echelon form scaled by a common positive denominator `det`: every equality row has
//! `det` in its pivot column and zeros in the other pivot columns. Inequality rows are
//! reduced the same way, so they only mention free columns, the slack `s` and the
//! right-hand side. Adding an edge costs one pass over the rows instead of a fresh
//! elimination.

use super::exact::{ExactInt, ExactResult};
use super::lp::IntLp;

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub coeffs: Vec<i128>,
    pub slack: i128,
    pub rhs: i128,
}

#[derive(Clone, Debug)]
pub(crate) struct Tableau {
    /// Coordinate of each column.
    pub cols: Vec<usize>,
    slot: Vec<usize>,
    pub det: i128,
    /// Equality rows with their pivot columns.
    pub equalities: Vec<(Row, usize)>,
    pub inequalities: Vec<Row>,
    is_pivot: Vec<bool>,
    /// An equality turned out to be a combination of the earlier ones.
    pub rank_deficient: bool,
}

pub(crate) enum Extended {
    Consistent(Tableau),
    Inconsistent,
}

impl Tableau {
    pub fn new(dimension: usize) -> Self {
        Tableau {
            cols: Vec::new(),
            slot: vec![usize::MAX; dimension],
            det: 1,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            is_pivot: Vec::new(),
            rank_deficient: false,
        }
    }

    fn add_column(&mut self, coord: usize) {
        self.slot[coord] = self.cols.len();
        self.cols.push(coord);
        self.is_pivot.push(false);
        for (row, _) in self.equalities.iter_mut() {
            row.coeffs.push(0);
        }
        for row in self.inequalities.iter_mut() {
            row.coeffs.push(0);
        }
    }

    /// Scales a raw row by `det` and eliminates the pivot columns.
    fn reduce(&self, raw: Row) -> ExactResult<Row> {
        let mut out = Row {
            coeffs: raw.coeffs.iter().map(|v| v.mul(&self.det)).collect::<ExactResult<_>>()?,
            slack: raw.slack.mul(&self.det)?,
            rhs: raw.rhs.mul(&self.det)?,
        };
        for (eq, pc) in &self.equalities {
            let f = raw.coeffs[*pc];
            if f == 0 {
                continue;
            }
            for (o, e) in out.coeffs.iter_mut().zip(&eq.coeffs) {
                if *e != 0 {
                    *o = o.sub(&f.mul(e)?)?;
                }
            }
            out.slack = out.slack.sub(&f.mul(&eq.slack)?)?;
            out.rhs = out.rhs.sub(&f.mul(&eq.rhs)?)?;
        }
        Ok(out)
    }

    /// Adds the equality and inequalities of edge `(a, b)` of a support with points
    /// `pts`, lifting `omega` and non-constant coordinates `coords`.
    pub fn extend(&self, pts: &[Vec<i128>], omega: &[i64], coords: &[usize], (a, b): (usize, usize)) -> ExactResult<Extended> {
        let mut t = self.clone();
        for &c in coords {
            if t.slot[c] == usize::MAX {
                t.add_column(c);
            }
        }
        let raw = |p: &[i128], q: &[i128], slack: i128, rhs: i128| Row {
            coeffs: t.cols.iter().map(|&c| p[c] - q[c]).collect(),
            slack,
            rhs,
        };
        let eq = t.reduce(raw(&pts[a], &pts[b], 0, (omega[b] - omega[a]) as i128))?;
        let pivot = (0..t.cols.len())
            .filter(|&c| !t.is_pivot[c] && eq.coeffs[c] != 0)
            .min_by_key(|&c| eq.coeffs[c].unsigned_abs());
        match pivot {
            None if eq.rhs != 0 => return Ok(Extended::Inconsistent),
            None => t.rank_deficient = true,
            Some(c) => {
                let mut w = eq;
                if w.coeffs[c] < 0 {
                    w.coeffs.iter_mut().for_each(|v| *v = -*v);
                    w.rhs = -w.rhs;
                }
                let p = w.coeffs[c];
                let old = t.det;
                let update = |row: &mut Row| -> ExactResult<()> {
                    let f = row.coeffs[c];
                    if f == 0 {
                        if p != old {
                            for v in row.coeffs.iter_mut() {
                                *v = i128::cross_div(&p, v, &0, &0, &old)?;
                            }
                            row.slack = i128::cross_div(&p, &row.slack, &0, &0, &old)?;
                            row.rhs = i128::cross_div(&p, &row.rhs, &0, &0, &old)?;
                        }
                        return Ok(());
                    }
                    for (v, wv) in row.coeffs.iter_mut().zip(&w.coeffs) {
                        *v = i128::cross_div(&p, v, &f, wv, &old)?;
                    }
                    row.slack = i128::cross_div(&p, &row.slack, &f, &w.slack, &old)?;
                    row.rhs = i128::cross_div(&p, &row.rhs, &f, &w.rhs, &old)?;
                    Ok(())
                };
                for (row, _) in t.equalities.iter_mut() {
                    update(row)?;
                }
                for row in t.inequalities.iter_mut() {
                    update(row)?;
                }
                t.det = p;
                t.is_pivot[c] = true;
                t.equalities.push((w, c));
            }
        }
        for (k, q) in pts.iter().enumerate() {
            if k == a || k == b {
                continue;
            }
            let row = t.reduce(raw(&pts[a], q, 1, (omega[k] - omega[a]) as i128))?;
            t.inequalities.push(row);
        }
        Ok(Extended::Consistent(t))
    }

    /// Maximize `s` over the free columns subject to the reduced inequalities and `s <= 1`.
    pub fn lp(&self) -> IntLp<i128> {
        let free: Vec<usize> = (0..self.cols.len()).filter(|&c| !self.is_pivot[c]).collect();
        let vars = free.len() + 1;
        let mut inequalities: Vec<(Vec<i128>, i128)> = self
            .inequalities
            .iter()
            .map(|r| {
                let mut row: Vec<i128> = free.iter().map(|&c| r.coeffs[c]).collect();
                row.push(r.slack);
                (row, r.rhs)
            })
            .collect();
        let mut cap = vec![0; vars];
        cap[vars - 1] = 1;
        inequalities.push((cap.clone(), 1));
        IntLp { vars, objective: cap, equalities: Vec::new(), inequalities }
    }

    /// All coordinates are pivots: the normal is determined.
    pub fn is_complete(&self, dimension: usize) -> bool {
        !self.rank_deficient && self.equalities.len() == dimension
    }

    /// Scaled normal `det · α` indexed by coordinate, for a complete tableau.
    pub fn scaled_normal(&self, dimension: usize) -> Vec<i128> {
        let mut alpha = vec![0; dimension];
        for (row, c) in &self.equalities {
            alpha[self.cols[*c]] = row.rhs;
        }
        alpha
    }
}
