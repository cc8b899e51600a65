use num_bigint::BigUint;

/// Exact nonnegative bound value.
pub type BoundValue = BigUint;

/// Bézout number of the load-flow system: `4^n`.
pub fn cb_bound(n: usize) -> BoundValue {
    BigUint::from(4u8).pow(n as u32)
}

/// `C(2n, n)`.
pub fn bblsy_bound(n: usize) -> BoundValue {
    let mut acc = BigUint::from(1u8);
    for k in 1..=n {
        acc = acc * BigUint::from(n + k) / BigUint::from(k);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(cb_bound(0), 1u8.into());
        assert_eq!(cb_bound(1), 4u8.into());
        assert_eq!(cb_bound(3), 64u8.into());
        assert_eq!(cb_bound(13), 67108864u32.into());
        assert_eq!(bblsy_bound(0), 1u8.into());
        assert_eq!(bblsy_bound(1), 2u8.into());
        assert_eq!(bblsy_bound(4), 70u8.into());
        assert_eq!(bblsy_bound(13), 10400600u32.into());
    }

    #[test]
    fn binomial_recurrence_up_to_64() {
        // C(2n, n) from Pascal's triangle
        let mut row = vec![BigUint::from(1u8)];
        for m in 1..=128usize {
            let mut next = vec![BigUint::from(1u8); m + 1];
            for k in 1..m {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            if m % 2 == 0 {
                assert_eq!(bblsy_bound(m / 2), row[m / 2]);
            }
        }
    }
}
