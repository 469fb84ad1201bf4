//! Primality, safe primes, primitive roots, and the totient functions.

use num_bigint::RandBigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Natural;
use crate::{Error, Result};

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

// Bases 2..=41 make Miller-Rabin exact below this bound.
const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
const DETERMINISTIC_BASES: usize = 13;
const RANDOM_ROUNDS: usize = 64;
const WITNESS_SEED: u64 = 0x6c6d_6372_745f_6d72;

/// Miller-Rabin primality test.
///
/// Exact for `n < 3.3e24`. Above that the fixed bases are followed by 64
/// pseudo-random bases from a fixed-seed ChaCha8 stream, so the answer is
/// reproducible and the error probability stays below `4^-64`.
pub fn is_prime(n: &Natural) -> bool {
    if *n < Natural::from(2u8) {
        return false;
    }
    for &sp in &SMALL_PRIMES {
        let sp = Natural::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    if *n < Natural::from(97u32 * 97) {
        return true;
    }

    let n_minus_1 = n - 1u8;
    let twos = n_minus_1.trailing_zeros().expect("n - 1 is nonzero");
    let odd = &n_minus_1 >> twos;

    let is_witness = |base: &Natural| -> bool {
        let mut x = base.modpow(&odd, n);
        if x.is_one() || x == n_minus_1 {
            return false;
        }
        for _ in 1..twos {
            x = &x * &x % n;
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };

    if SMALL_PRIMES[..DETERMINISTIC_BASES]
        .iter()
        .any(|&b| is_witness(&Natural::from(b)))
    {
        return false;
    }
    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_BOUND) {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    let low = Natural::from(2u8);
    let high = n - 1u8;
    (0..RANDOM_ROUNDS).all(|_| !is_witness(&rng.gen_biguint_range(&low, &high)))
}

/// Prime factorization with strictly increasing primes and positive
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    pub fn new(mut factors: Vec<(Natural, u32)>) -> Result<Self> {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidInput(format!("repeated prime {}", w[0].0)));
            }
        }
        for (prime, exp) in &factors {
            if *exp == 0 {
                return Err(Error::InvalidInput(format!("zero exponent on {prime}")));
            }
            if !is_prime(prime) {
                return Err(Error::InvalidInput(format!("{prime} is not prime")));
            }
        }
        Ok(Factorization { factors })
    }

    /// The empty factorization, representing 1.
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
        }
    }

    /// Factors a machine-sized integer by trial division.
    pub fn trial_division(mut n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cannot factor 0".into()));
        }
        let mut factors = Vec::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= n {
            if n.is_multiple_of(d) {
                let mut e = 0;
                while n.is_multiple_of(d) {
                    n /= d;
                    e += 1;
                }
                factors.push((Natural::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            factors.push((Natural::from(n), 1));
        }
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn value(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Euler's totient, multiplicative over the prime-power parts.
pub fn euler_phi(f: &Factorization) -> Natural {
    f.factors
        .iter()
        .fold(Natural::one(), |acc, (p, e)| acc * p.pow(e - 1) * (p - 1u8))
}

/// Carmichael's λ: `φ(p^r)` on odd prime powers, `1, 2, 2^(r-2)` on
/// `2, 4, 2^r (r >= 3)`, and the lcm over the parts.
pub fn carmichael_lambda(f: &Factorization) -> Natural {
    f.factors.iter().fold(Natural::one(), |acc, (p, e)| {
        let part = if *p == Natural::from(2u8) {
            match e {
                1 => Natural::one(),
                2 => Natural::from(2u8),
                _ => Natural::one() << (e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1u8)
        };
        acc.lcm(&part)
    })
}

/// Smallest primitive root of the prime `p`, given the factorization of
/// `p - 1`.
pub fn primitive_root(p: &Natural, p_minus_1: &Factorization) -> Result<Natural> {
    if *p == Natural::from(2u8) {
        return Err(Error::DegenerateModulus(p.clone()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let order = p - 1u8;
    if p_minus_1.value() != order {
        return Err(Error::InvalidInput(format!(
            "factorization does not multiply to {order}"
        )));
    }
    let cofactors: Vec<Natural> = p_minus_1.primes().map(|r| &order / r).collect();
    let mut g = Natural::from(2u8);
    while g < *p {
        if cofactors.iter().all(|e| !g.modpow(e, p).is_one()) {
            return Ok(g);
        }
        g += 1u8;
    }
    Err(Error::NoSolution(format!(
        "no primitive root found for {p}"
    )))
}

/// A validated safe prime `p = 2q + 1` together with the moduli derived
/// from it: `pq`, `p²q²`, `p³q³` and the exponent `E = pq(q - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SafePrimeParams {
    #[serde(with = "crate::serde_dec")]
    p: Natural,
    #[serde(with = "crate::serde_dec")]
    q: Natural,
    #[serde(with = "crate::serde_dec")]
    m1: Natural,
    #[serde(with = "crate::serde_dec")]
    m2: Natural,
    #[serde(with = "crate::serde_dec")]
    m3: Natural,
    #[serde(with = "crate::serde_dec")]
    e: Natural,
}

impl SafePrimeParams {
    pub fn new(p: Natural, q: Natural) -> Result<Self> {
        if q < Natural::from(3u8) {
            return Err(Error::InvalidParams(format!("q = {q} is below 3")));
        }
        if p != &q * 2u8 + 1u8 {
            return Err(Error::InvalidParams(format!("{p} != 2*{q} + 1")));
        }
        if !is_prime(&q) {
            return Err(Error::InvalidParams(format!("q = {q} is not prime")));
        }
        if !is_prime(&p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        let m1 = &p * &q;
        let m2 = &m1 * &m1;
        let m3 = &m2 * &m1;
        let e = &m1 * (&q - 1u8);
        let lambda = carmichael_lambda(&Factorization {
            factors: vec![(q.clone(), 2), (p.clone(), 2)],
        });
        if lambda != e {
            return Err(Error::InvalidParams(format!(
                "lambda(p^2 q^2) = {lambda} differs from pq(q-1) = {e}"
            )));
        }
        Ok(SafePrimeParams {
            p,
            q,
            m1,
            m2,
            m3,
            e,
        })
    }

    /// Builds parameters from `p` alone, with `q = (p - 1) / 2`.
    pub fn from_p(p: Natural) -> Result<Self> {
        if p.is_even() || p < Natural::from(7u8) {
            return Err(Error::InvalidParams(format!("{p} cannot be a safe prime")));
        }
        let q = (&p - 1u8) >> 1;
        Self::new(p, q)
    }

    pub fn from_u64(p: u64, q: u64) -> Result<Self> {
        Self::new(Natural::from(p), Natural::from(q))
    }

    pub fn p(&self) -> &Natural {
        &self.p
    }

    pub fn q(&self) -> &Natural {
        &self.q
    }

    /// `pq`
    pub fn m1(&self) -> &Natural {
        &self.m1
    }

    /// `p²q²`
    pub fn m2(&self) -> &Natural {
        &self.m2
    }

    /// `p³q³`
    pub fn m3(&self) -> &Natural {
        &self.m3
    }

    /// `pq(q - 1) = λ(p²q²)`
    pub fn exponent(&self) -> &Natural {
        &self.e
    }

    /// `q - 1 = φ(q)`
    pub fn phi_q(&self) -> Natural {
        &self.q - 1u8
    }

    /// `p - 1 = 2q`
    pub fn group_order(&self) -> Natural {
        &self.p - 1u8
    }

    pub fn p_minus_1_factorization(&self) -> Factorization {
        Factorization {
            factors: vec![(Natural::from(2u8), 1), (self.q.clone(), 1)],
        }
    }

    /// Smallest primitive root of `p` that is also a unit modulo `q`.
    /// This differs from [`primitive_root`] only for `p = 7`, whose
    /// smallest root is `q = 3` itself.
    pub fn generator(&self) -> Result<Natural> {
        let two = Natural::from(2u8);
        let mut g = two.clone();
        while g < self.p {
            if !(&g % &self.q).is_zero()
                && !g.modpow(&self.q, &self.p).is_one()
                && !g.modpow(&two, &self.p).is_one()
            {
                return Ok(g);
            }
            g += 1u8;
        }
        Err(Error::NoSolution(format!(
            "no primitive root of {} coprime to {}",
            self.p, self.q
        )))
    }
}

const MAX_CANDIDATES: u64 = 1 << 22;

/// Deterministic safe-prime search: starts at a seeded point among the
/// `(bits - 1)`-bit values of `q` and scans upward, wrapping around, until
/// `q` and `2q + 1` are both prime.
pub fn gen_safe_prime(bits: u32, seed: u64) -> Result<SafePrimeParams> {
    if bits < 3 {
        return Err(Error::InvalidInput(format!(
            "no safe prime with q >= 3 has {bits} bits"
        )));
    }
    let low = Natural::one() << (bits - 2);
    let high = Natural::one() << (bits - 1);
    let span = &high - &low;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset = rng.gen_biguint_below(&span);
    let budget = span
        .to_u64()
        .map_or(MAX_CANDIDATES, |s| s.min(MAX_CANDIDATES));

    let three = Natural::from(3u8);
    let mut q = &low + offset;
    for _ in 0..budget {
        if q >= three && is_prime(&q) {
            let p = &q * 2u8 + 1u8;
            if is_prime(&p) {
                return SafePrimeParams::new(p, q);
            }
        }
        q += 1u8;
        if q == high {
            q = low.clone();
        }
    }
    Err(Error::SearchExhausted {
        bits,
        seed,
        candidates: budget,
    })
}
