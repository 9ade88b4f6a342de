//! Seeded random distributions for property checks and sampled certification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::Distribution;

/// Deterministic generator of random distributions and pairs.
pub struct PairSampler {
    rng: ChaCha8Rng,
}

impl PairSampler {
    pub fn new(seed: u64) -> PairSampler {
        PairSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform on the simplex (normalized exponentials), all weights positive.
    pub fn full_support(&mut self, atoms: usize) -> Distribution {
        let w: Vec<f64> = (0..atoms).map(|_| -(1.0 - self.rng.gen::<f64>()).ln() + 1e-300).collect();
        Distribution::renormalized(w).expect("positive weights")
    }

    /// Like [`full_support`](Self::full_support) but each atom is zeroed with
    /// probability `zero_prob` (at least one atom keeps mass).
    pub fn sparse(&mut self, atoms: usize, zero_prob: f64) -> Distribution {
        let keep = self.rng.gen_range(0..atoms);
        let w: Vec<f64> = (0..atoms)
            .map(|i| {
                if i != keep && self.rng.gen::<f64>() < zero_prob {
                    0.0
                } else {
                    -(1.0 - self.rng.gen::<f64>()).ln() + 1e-300
                }
            })
            .collect();
        Distribution::renormalized(w).expect("one positive weight")
    }

    pub fn full_support_pair(&mut self, atoms: usize) -> (Distribution, Distribution) {
        (self.full_support(atoms), self.full_support(atoms))
    }

    /// Random size in `2..=max_atoms`, full support.
    pub fn pair(&mut self, max_atoms: usize) -> (Distribution, Distribution) {
        let n = self.rng.gen_range(2..=max_atoms.max(2));
        self.full_support_pair(n)
    }

    /// `P = (p, 1 − p)`, `Q = (q, 1 − q)` with `p, q` uniform in `(0, 1)`.
    pub fn binary_pair(&mut self) -> (Distribution, Distribution) {
        let draw = |rng: &mut ChaCha8Rng| {
            let x: f64 = rng.gen_range(f64::EPSILON..1.0);
            Distribution::new(vec![x, 1.0 - x]).expect("binary")
        };
        let p = draw(&mut self.rng);
        let q = draw(&mut self.rng);
        (p, q)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_valid() {
        let mut a = PairSampler::new(1);
        let mut b = PairSampler::new(1);
        for _ in 0..100 {
            let (p, q) = a.pair(6);
            assert_eq!((p.clone(), q.clone()), b.pair(6));
            assert!(p.weights().iter().all(|w| *w > 0.0));
            assert!((p.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let s = a.sparse(8, 0.5);
        assert!(s.weights().iter().any(|w| *w > 0.0));
    }
}
