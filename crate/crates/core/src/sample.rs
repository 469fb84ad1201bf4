//! Seeded random instances.
//!
//! The stream is ChaCha8 seeded with `seed_from_u64`, which is portable
//! across platforms. Each instance is drawn as follows:
//!
//! 1. draw `q` uniformly in `[qmin, qmax]` until `q` and `2q + 1` are both
//!    prime (rejection sampling, so uniform over valid `q`);
//! 2. take `a₀` = smallest primitive root of `p` that is a unit mod `q`;
//! 3. draw `n` uniformly in `[0, p - 2]` and set `b₀ = a₀ⁿ mod p`;
//! 4. if `gcd(b₀, q) != 1`, discard and start again from step 1.

use num_bigint::RandBigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_coprime, Natural};
use crate::numtheory::{is_prime, SafePrimeParams};
use crate::reduction::DlogInstance;
use crate::{Error, Result};

const MAX_DRAWS: u32 = 1_000_000;

pub struct InstanceSampler {
    rng: ChaCha8Rng,
    qmin: Natural,
    qmax: Natural,
}

impl InstanceSampler {
    pub fn new(seed: u64, qmin: Natural, qmax: Natural) -> Result<Self> {
        if qmin > qmax {
            return Err(Error::InvalidInput(format!(
                "qmin {qmin} exceeds qmax {qmax}"
            )));
        }
        Ok(InstanceSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            qmin: qmin.max(Natural::from(3u8)),
            qmax,
        })
    }

    pub fn from_u64(seed: u64, qmin: u64, qmax: u64) -> Result<Self> {
        Self::new(seed, Natural::from(qmin), Natural::from(qmax))
    }

    pub fn next_params(&mut self) -> Result<SafePrimeParams> {
        let upper = &self.qmax + 1u8;
        if self.qmin >= upper {
            return Err(Error::InvalidInput("no q >= 3 in range".into()));
        }
        for _ in 0..MAX_DRAWS {
            let q = self.rng.gen_biguint_range(&self.qmin, &upper);
            if is_prime(&q) && is_prime(&(&q * 2u8 + 1u8)) {
                return SafePrimeParams::new(&q * 2u8 + 1u8, q);
            }
        }
        Err(Error::NoSolution(format!(
            "no safe prime with q in [{}, {}] after {MAX_DRAWS} draws",
            self.qmin, self.qmax
        )))
    }

    pub fn next_instance(&mut self) -> Result<DlogInstance> {
        loop {
            let params = self.next_params()?;
            let a0 = params.generator()?;
            let n = self.rng.gen_biguint_below(&(params.p() - Natural::one()));
            let b0 = a0.modpow(&n, params.p());
            if !is_coprime(&b0, params.q()) {
                continue;
            }
            return DlogInstance::new(params, a0, b0, Some(n));
        }
    }
}

impl Iterator for InstanceSampler {
    type Item = Result<DlogInstance>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_instance())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_seed() {
        let a: Vec<_> = InstanceSampler::from_u64(7, 5, 499)
            .unwrap()
            .take(20)
            .collect::<Result<_>>()
            .unwrap();
        let b: Vec<_> = InstanceSampler::from_u64(7, 5, 499)
            .unwrap()
            .take(20)
            .collect::<Result<_>>()
            .unwrap();
        assert_eq!(a, b);
        let c: Vec<_> = InstanceSampler::from_u64(8, 5, 499)
            .unwrap()
            .take(20)
            .collect::<Result<_>>()
            .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn instances_are_valid_and_in_range() {
        let mut s = InstanceSampler::from_u64(1, 3, 60).unwrap();
        for _ in 0..200 {
            let inst = s.next_instance().unwrap();
            let q = inst.params.q();
            assert!(*q >= Natural::from(3u8) && *q <= Natural::from(60u8));
            let n = inst.known_n.as_ref().unwrap();
            assert!(*n <= inst.params.p() - 2u8);
            assert!(is_coprime(&inst.b0, inst.params.m1()));
        }
    }

    #[test]
    fn empty_range_errors() {
        assert!(InstanceSampler::from_u64(0, 10, 5).is_err());
        let mut s = InstanceSampler::from_u64(0, 24, 28).unwrap();
        assert!(s.next_params().is_err());
    }
}
