use super::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded generator of small-height rational scalars for randomized exact
/// identity checks (numerators in [-9, 9], denominators in [1, 9]).
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Scalar {
        let num = self.rng.gen_range(-9i64..=9);
        let den = self.rng.gen_range(1i64..=9);
        Scalar::rat(num, den)
    }

    /// A vector of small rationals.
    pub fn rational_vec(&mut self, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.rational()).collect()
    }

    /// A uniform integer in 0..n.
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A nonzero small rational.
    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let s = self.rational();
            if !s.is_zero() {
                return s;
            }
        }
    }
}
