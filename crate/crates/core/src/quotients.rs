//! Fermat quotients modulo `p` and the generalized quotient modulo `pq`.
//!
//! The generalized quotient `q(x)` is defined by
//! `x^E = 1 + q(x) p²q² (mod p³q³)` with `E = λ(p²q²) = pq(q - 1)`.
//! It depends on the integer `x` (equivalently on `x mod p³q³`), not on
//! `x mod pq`, so every function here takes the base as a [`Natural`].

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{carry, is_coprime, mod_pow, Natural, Residue};
use crate::numtheory::SafePrimeParams;
use crate::{Error, Result};

fn require_unit(x: &Natural, m: &Natural) -> Result<()> {
    if !is_coprime(x, m) {
        return Err(Error::NotAUnit {
            value: x.clone(),
            modulus: m.clone(),
        });
    }
    Ok(())
}

/// Classical Fermat quotient `((x^(p-1) mod p²) - 1) / p mod p`.
pub fn fermat_quotient_p(p: &Natural, x: &Natural) -> Result<Residue> {
    require_unit(x, p)?;
    let p2 = p * p;
    let power = mod_pow(x, &(p - 1u8), &p2)?;
    let quot = carry(power.value(), &Natural::from(1u8), p, "fermat quotient")?;
    Residue::new(quot, p.clone())
}

/// Generalized quotient `q(x) mod pq`.
pub fn lerch_quotient(params: &SafePrimeParams, x: &Natural) -> Result<Residue> {
    require_unit(x, params.m1())?;
    let power = mod_pow(x, params.exponent(), params.m3())?;
    let quot = carry(
        power.value(),
        &Natural::from(1u8),
        params.m2(),
        "lerch quotient",
    )?;
    Residue::new(quot, params.m1().clone())
}

/// `q(x^j)`, with the power taken as an integer reduced mod `p³q³`.
pub fn lerch_quotient_of_power(
    params: &SafePrimeParams,
    x: &Natural,
    j: &Natural,
) -> Result<Residue> {
    require_unit(x, params.m1())?;
    let power = mod_pow(x, j, params.m3())?;
    lerch_quotient(params, power.value())
}

/// `A = x^(q-1) mod pq` and the carry `k` with
/// `x^(q-1) mod p²q² = A + k pq`.
pub fn base_power_digits(params: &SafePrimeParams, x: &Natural) -> Result<(Residue, Residue)> {
    require_unit(x, params.m1())?;
    let wide = mod_pow(x, &params.phi_q(), params.m2())?;
    let low = wide.reduce_to(params.m1())?;
    let k = carry(wide.value(), low.value(), params.m1(), "base power carry")?;
    Ok((low, Residue::new(k, params.m1().clone())?))
}

/// Everything the composite lift needs to know about one base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftProfile {
    #[serde(with = "crate::serde_dec")]
    pub base: Natural,
    /// `x^(q-1) mod pq`
    pub power: Residue,
    /// Carry of `x^(q-1)` from `pq` to `p²q²`.
    pub carry: Residue,
    pub lerch: Residue,
    /// `k - A q(x) mod pq`
    pub digit: Residue,
    /// `-A q(x) mod pq`, the carry-free form. Differs from `digit` by `k`.
    pub digit_literal: Residue,
}

impl LiftProfile {
    /// `A + digit * pq`, a residue mod `p²q²`.
    pub fn lifted(&self, params: &SafePrimeParams) -> Residue {
        lift_value(params, &self.power, &self.digit)
    }

    pub fn lifted_literal(&self, params: &SafePrimeParams) -> Residue {
        lift_value(params, &self.power, &self.digit_literal)
    }
}

fn lift_value(params: &SafePrimeParams, low: &Residue, digit: &Residue) -> Residue {
    Residue::new(
        low.value() + digit.value() * params.m1(),
        params.m2().clone(),
    )
    .expect("p²q² is at least 2")
}

pub fn lift_profile(params: &SafePrimeParams, x: &Natural) -> Result<LiftProfile> {
    let (power, carry) = base_power_digits(params, x)?;
    let lerch = lerch_quotient(params, x)?;
    let digit_literal = power.mul(&lerch).neg();
    let digit = carry.add(&digit_literal);
    Ok(LiftProfile {
        base: x.clone(),
        power,
        carry,
        lerch,
        digit,
        digit_literal,
    })
}

/// `x mod m` for a signed integer, as a residue. Convenience for tests and
/// callers working with signed differences.
pub fn signed_residue(value: i64, m: &Natural) -> Result<Residue> {
    Residue::from_signed(&BigInt::from(value), m)
}
