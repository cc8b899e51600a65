use super::Topology;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// How the coefficients of the second equation block relate to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CoefficientMode {
    /// The second block uses the complex conjugates of the first block's data.
    #[default]
    ConjugatePaired,
    /// Both blocks get independently drawn coefficients.
    Independent,
}

impl CoefficientMode {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientMode::ConjugatePaired => "conjugate",
            CoefficientMode::Independent => "independent",
        }
    }
}

/// Independently drawn replacements for `Y` and `S` in the second equation block.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondBlock {
    pub y: BTreeMap<(usize, usize), Complex64>,
    pub s: Vec<Complex64>,
}

/// A topology with admittances, injections and reference voltage.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkCase {
    pub topology: Topology,
    /// One entry per ordered pair `(i, j)` with `{i, j}` an edge or loop.
    pub y: BTreeMap<(usize, usize), Complex64>,
    /// Injections at buses `1..=n`.
    pub s: Vec<Complex64>,
    pub v0: f64,
    pub second_block: Option<SecondBlock>,
}

const MIN_MAGNITUDE: f64 = 1e-3;

fn draw(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if z.norm() >= MIN_MAGNITUDE {
            return z;
        }
    }
}

fn draw_block(topology: &Topology, rng: &mut ChaCha8Rng) -> (BTreeMap<(usize, usize), Complex64>, Vec<Complex64>) {
    let y = topology.directed_edges().into_iter().map(|e| (e, draw(rng))).collect();
    let s = (0..topology.n()).map(|_| draw(rng)).collect();
    (y, s)
}

/// Random case: every coefficient uniform in the box `[-1, 1]^2`, tiny magnitudes
/// rejected, `v0 = 1`. Entries are drawn in sorted key order.
pub fn sample_case(topology: &Topology, seed: u64, mode: CoefficientMode) -> NetworkCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (y, s) = draw_block(topology, &mut rng);
    let second_block = match mode {
        CoefficientMode::ConjugatePaired => None,
        CoefficientMode::Independent => {
            let (y, s) = draw_block(topology, &mut rng);
            Some(SecondBlock { y, s })
        }
    };
    NetworkCase { topology: topology.clone(), y, s, v0: 1.0, second_block }
}

/// Fresh independent second-block coefficients for `topology`.
pub fn sample_second_block(topology: &Topology, seed: u64) -> SecondBlock {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (y, s) = draw_block(topology, &mut rng);
    SecondBlock { y, s }
}

impl NetworkCase {
    pub fn mode(&self) -> CoefficientMode {
        if self.second_block.is_some() {
            CoefficientMode::Independent
        } else {
            CoefficientMode::ConjugatePaired
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::make_path;

    #[test]
    fn sparsity_and_determinism() {
        let t = make_path(3).unwrap();
        let c = sample_case(&t, 1, CoefficientMode::ConjugatePaired);
        assert_eq!(c.y.len(), 7);
        for &(i, j) in c.y.keys() {
            assert!(t.has_edge(i, j));
        }
        assert!(c.y.values().chain(&c.s).all(|z| z.norm() >= MIN_MAGNITUDE));
        assert_eq!(c.s.len(), 2);
        assert_eq!(c, sample_case(&t, 1, CoefficientMode::ConjugatePaired));
        assert_ne!(c, sample_case(&t, 2, CoefficientMode::ConjugatePaired));
    }

    #[test]
    fn independent_mode_draws_a_second_block() {
        let t = make_path(3).unwrap();
        let c = sample_case(&t, 1, CoefficientMode::Independent);
        let b = c.second_block.as_ref().unwrap();
        assert_eq!(c.y.len() + b.y.len(), 14);
        assert_eq!(c.mode(), CoefficientMode::Independent);
        // the first block matches the paired draw from the same seed
        assert_eq!(c.y, sample_case(&t, 1, CoefficientMode::ConjugatePaired).y);
    }
}
