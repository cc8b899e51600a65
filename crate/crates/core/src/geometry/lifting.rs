use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lifting values are drawn from `0..LIFTING_RANGE`.
pub const LIFTING_RANGE: i64 = 1 << 20;

/// Number of liftings tried before giving up on genericity.
pub const MAX_ATTEMPTS: usize = 16;

/// Integer heights, one per point of each support, drawn from a seeded generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifting {
    pub seed: u64,
    pub values: Vec<Vec<i64>>,
}

impl Lifting {
    pub fn random(sizes: &[usize], seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = sizes
            .iter()
            .map(|&len| (0..len).map(|_| rng.gen_range(0..LIFTING_RANGE)).collect())
            .collect();
        Lifting { seed, values }
    }
}

/// Seed of the `attempt`-th retry; attempt 0 uses `seed` itself.
pub fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let a = Lifting::random(&[3, 5], 11);
        assert_eq!(a, Lifting::random(&[3, 5], 11));
        assert_ne!(a, Lifting::random(&[3, 5], 12));
        assert!(a.values.iter().flatten().all(|&v| (0..LIFTING_RANGE).contains(&v)));
        assert_eq!(attempt_seed(5, 0), 5);
        assert_ne!(attempt_seed(5, 1), 5);
    }
}
