use super::HomotopyInstance;
use crate::error::{Error, Result};
use crate::geometry::MixedCell;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// All solutions in `(C*)^d` of `y^{m_j} = c_j`, `j = 0..d`, for a nonsingular integer
/// matrix with rows `m_j`.
///
/// Row operations bring the exponent matrix to upper triangular form while the same
/// operations act on the logarithms of the right-hand sides. Back substitution then runs
/// over every branch of each diagonal root.
pub fn solve_binomial(rows: &[Vec<i64>], rhs: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let d = rows.len();
    if rhs.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::contract("binomial system is not square"));
    }
    if rhs.iter().any(|c| c.norm() == 0.0 || !c.is_finite()) {
        return Err(Error::contract("binomial right-hand side must be nonzero"));
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut logs: Vec<Complex64> = rhs.iter().map(|c| c.ln()).collect();
    let overflow = || Error::contract("exponent matrix entries overflow during reduction");
    for c in 0..d {
        loop {
            let pivot = (c..d).filter(|&r| m[r][c] != 0).min_by_key(|&r| m[r][c].unsigned_abs());
            let Some(p) = pivot else {
                return Err(Error::contract("singular exponent matrix"));
            };
            m.swap(c, p);
            logs.swap(c, p);
            let mut done = true;
            for r in c + 1..d {
                if m[r][c] == 0 {
                    continue;
                }
                let q = m[r][c] / m[c][c];
                for k in c..d {
                    m[r][k] = m[r][k].checked_sub(q.checked_mul(m[c][k]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
                logs[r] = logs[r] - logs[c] * q as f64;
                done &= m[r][c] == 0;
            }
            if done {
                break;
            }
        }
    }
    let mut partial: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); d]];
    for j in (0..d).rev() {
        let diag = m[j][j];
        let branches = diag.unsigned_abs() as u64;
        let mut next = Vec::with_capacity(partial.len() * branches as usize);
        for z in &partial {
            let mut r = logs[j];
            for k in j + 1..d {
                r -= z[k] * m[j][k] as f64;
            }
            for b in 0..branches {
                let mut z2 = z.clone();
                z2[j] = (r + Complex64::new(0.0, TAU * b as f64)) / diag as f64;
                next.push(z2);
            }
        }
        partial = next;
    }
    Ok(partial.into_iter().map(|z| z.into_iter().map(|v| v.exp()).collect()).collect())
}

impl HomotopyInstance {
    /// Roots of the binomial start system of `cell`, one per unit of cell volume.
    pub fn start_solutions(&self, cell: &MixedCell) -> Result<Vec<Vec<Complex64>>> {
        let ch = self.cell_homotopy(cell)?;
        let (rows, rhs): (Vec<Vec<i64>>, Vec<Complex64>) = ch.binomials().into_iter().unzip();
        let sols = solve_binomial(&rows, &rhs)?;
        if sols.len() as u64 != cell.volume {
            return Err(Error::contract(format!(
                "cell volume {} but {} binomial roots",
                cell.volume,
                sols.len()
            )));
        }
        Ok(sols)
    }
}

/// `max_j |y^{m_j} - c_j| / |c_j|`.
pub fn binomial_residual(rows: &[Vec<i64>], rhs: &[Complex64], y: &[Complex64]) -> f64 {
    rows.iter()
        .zip(rhs)
        .map(|(row, c)| {
            let v = row
                .iter()
                .zip(y)
                .fold(Complex64::new(1.0, 0.0), |acc, (&e, yi)| acc * yi.powi(e as i32));
            (v - c).norm() / c.norm()
        })
        .fold(0.0, f64::max)
}
