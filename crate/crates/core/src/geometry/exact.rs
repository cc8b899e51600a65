//! Exact integer arithmetic used by the linear-programming engine, determinants and
//! fraction-free elimination.
//!
//! Everything here is generic over [`ExactInt`] so the hot paths can run on checked
//! `i128` and fall back to `BigInt` when an intermediate value overflows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt::Debug;

/// An intermediate value did not fit the fixed-width representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type ExactResult<T> = std::result::Result<T, Overflow>;

pub trait ExactInt: Clone + Ord + Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> ExactResult<Self>;
    fn to_bigint(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn sign(&self) -> Ordering;
    fn add(&self, other: &Self) -> ExactResult<Self>;
    fn sub(&self, other: &Self) -> ExactResult<Self>;
    fn mul(&self, other: &Self) -> ExactResult<Self>;
    /// Division where the caller guarantees the remainder is zero.
    fn div_exact(&self, other: &Self) -> ExactResult<Self>;
    fn neg(&self) -> ExactResult<Self>;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// `(a * b - c * d) / den`, exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> ExactResult<Self> {
        a.mul(b)?.sub(&c.mul(d)?)?.div_exact(den)
    }
}

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn from_bigint(v: &BigInt) -> ExactResult<Self> {
        num_traits::ToPrimitive::to_i64(v).ok_or(Overflow)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }

    fn add(&self, other: &Self) -> ExactResult<Self> {
        self.checked_add(*other).ok_or(Overflow)
    }

    fn sub(&self, other: &Self) -> ExactResult<Self> {
        self.checked_sub(*other).ok_or(Overflow)
    }

    fn mul(&self, other: &Self) -> ExactResult<Self> {
        self.checked_mul(*other).ok_or(Overflow)
    }

    fn div_exact(&self, other: &Self) -> ExactResult<Self> {
        self.checked_div(*other).ok_or(Overflow)
    }

    fn neg(&self) -> ExactResult<Self> {
        self.checked_neg().ok_or(Overflow)
    }

    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> ExactResult<Self> {
        // The products may overflow even when the quotient fits, so widen once.
        let num = (*a as i128) * (*b as i128) - (*c as i128) * (*d as i128);
        match i64::try_from(num) {
            Ok(n) => Ok(n / den),
            Err(_) => i64::try_from(num / (*den as i128)).map_err(|_| Overflow),
        }
    }
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn from_bigint(v: &BigInt) -> ExactResult<Self> {
        num_traits::ToPrimitive::to_i128(v).ok_or(Overflow)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }

    fn add(&self, other: &Self) -> ExactResult<Self> {
        self.checked_add(*other).ok_or(Overflow)
    }

    fn sub(&self, other: &Self) -> ExactResult<Self> {
        self.checked_sub(*other).ok_or(Overflow)
    }

    fn mul(&self, other: &Self) -> ExactResult<Self> {
        self.checked_mul(*other).ok_or(Overflow)
    }

    fn div_exact(&self, other: &Self) -> ExactResult<Self> {
        // i64 division is much cheaper than the 128-bit routine, and values usually fit.
        if let (Ok(a), Ok(b)) = (i64::try_from(*self), i64::try_from(*other)) {
            if let Some(q) = a.checked_div(b) {
                return Ok(q as i128);
            }
        }
        self.checked_div(*other).ok_or(Overflow)
    }

    fn neg(&self) -> ExactResult<Self> {
        self.checked_neg().ok_or(Overflow)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_bigint(v: &BigInt) -> ExactResult<Self> {
        Ok(v.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sign(&self) -> Ordering {
        if Signed::is_positive(self) {
            Ordering::Greater
        } else if Signed::is_negative(self) {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn add(&self, other: &Self) -> ExactResult<Self> {
        Ok(self + other)
    }

    fn sub(&self, other: &Self) -> ExactResult<Self> {
        Ok(self - other)
    }

    fn mul(&self, other: &Self) -> ExactResult<Self> {
        Ok(self * other)
    }

    fn div_exact(&self, other: &Self) -> ExactResult<Self> {
        Ok(self / other)
    }

    fn neg(&self) -> ExactResult<Self> {
        Ok(-self)
    }
}

/// Runs `f` on `i128`; if any intermediate overflows, reruns it on `BigInt`.
pub fn with_fallback<R>(
    f_small: impl FnOnce() -> ExactResult<R>,
    f_big: impl FnOnce() -> R,
) -> R {
    match f_small() {
        Ok(r) => r,
        Err(Overflow) => f_big(),
    }
}

fn convert<T: ExactInt>(rows: &[Vec<i64>]) -> Vec<Vec<T>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn bareiss_det<T: ExactInt>(mut m: Vec<Vec<T>>) -> ExactResult<T> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = T::cross_div(&m[k][k], &m[i][j], &m[i][k], &m[k][j], &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        Ok(det)
    }
}

/// Exact determinant of a small integer matrix.
pub fn det_i64(rows: &[Vec<i64>]) -> BigInt {
    with_fallback(
        || bareiss_det::<i128>(convert(rows)).map(|d| d.to_bigint()),
        || bareiss_det::<BigInt>(convert(rows)).expect("BigInt never overflows"),
    )
}

fn bareiss_rank<T: ExactInt>(mut m: Vec<Vec<T>>) -> ExactResult<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                m[i][j] = T::cross_div(&m[rank][c], &m[i][j], &m[i][c], &m[rank][j], &prev)?;
            }
            m[i][c] = T::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Rank of an integer matrix (rows may have any common length).
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    with_fallback(
        || bareiss_rank::<i128>(convert(rows)),
        || bareiss_rank::<BigInt>(convert(rows)).expect("BigInt never overflows"),
    )
}

/// `det` and `adj` with `M^{-1} = adj / det` and `det > 0`; `None` when singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledInverse<T> {
    pub det: T,
    pub adj: Vec<Vec<T>>,
}

/// Fraction-free Gauss–Jordan inverse. The returned `det` is `|det M|` and `adj` is
/// scaled to match, so `adj[i][j] / det` is exactly `(M^{-1})[i][j]`.
pub fn scaled_inverse<T: ExactInt>(m: &[Vec<T>]) -> ExactResult<Option<ScaledInverse<T>>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(None);
        };
        a.swap(p, k);
        let pivot_row = a[k].clone();
        let piv = pivot_row[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..2 * n {
                row[j] = T::cross_div(&piv, &row[j], &factor, &pivot_row[j], &prev)?;
            }
        }
        prev = piv;
    }
    // Every diagonal entry of the left block now equals `prev`.
    let mut det = prev;
    let mut adj: Vec<Vec<T>> = a.into_iter().map(|r| r[n..].to_vec()).collect();
    if det.is_negative() {
        det = det.neg()?;
        for row in adj.iter_mut() {
            for v in row.iter_mut() {
                *v = v.neg()?;
            }
        }
    }
    Ok(Some(ScaledInverse { det, adj }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn rational_det(rows: &[Vec<i64>]) -> BigRational {
        let n = rows.len();
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                m.swap(p, k);
                det = -det;
            }
            det *= m[k][k].clone();
            for i in k + 1..n {
                let f = m[i][k].clone() / m[k][k].clone();
                for j in k..n {
                    let v = m[k][j].clone() * f.clone();
                    m[i][j] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_i64(&[vec![1, 0], vec![0, 1]]), BigInt::from(1));
        assert_eq!(det_i64(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
        assert_eq!(det_i64(&[]), BigInt::from(1));
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_i64(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }

    #[test]
    fn scaled_inverse_matches_identity() {
        let m: Vec<Vec<i128>> = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        let inv = scaled_inverse(&m).unwrap().unwrap();
        assert_eq!(inv.det, 18);
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|k| m[i][k] * inv.adj[k][j]).sum();
                assert_eq!(s, if i == j { inv.det } else { 0 });
            }
        }
    }

    #[test]
    fn scaled_inverse_of_singular_is_none() {
        let m: Vec<Vec<i128>> = vec![vec![1, 2], vec![2, 4]];
        assert!(scaled_inverse(&m).unwrap().is_none());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let rows = vec![vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big]];
        let expected = rational_det(&rows);
        assert_eq!(BigRational::from_integer(det_i64(&rows)), expected);
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            n in 1usize..6,
            data in proptest::collection::vec(-9i64..=9, 36),
        ) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| data[i * n..i * n + n].to_vec()).collect();
            proptest::prop_assert_eq!(
                BigRational::from_integer(det_i64(&rows)),
                rational_det(&rows)
            );
        }
    }
}
