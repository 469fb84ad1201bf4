//! Hensel lifts of discrete-log equations.
//!
//! Two settings live here. Modulo `p²`, a unit `x < p` lifts to the root
//! `x + x₁p` of `X^p - X`; raising `a₀ⁿ = b₀` to that level gives one
//! linear equation in the carry `β` and the index `n`, which determines
//! `n mod p` when `a₀ⁿ mod p²` is known.
//!
//! Modulo `p²q²` for a safe prime `p = 2q + 1`, the base powers
//! `a₀^(q-1)` and `b₀^(q-1)` are lifted from `pq` using the generalized
//! quotient, with the integer carry `k` of each base power included in
//! the digit.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{carry, is_coprime, mod_pow, Natural, Residue};
use crate::numtheory::{is_prime, SafePrimeParams};
use crate::quotients::{fermat_quotient_p, lift_profile, LiftProfile};
use crate::reduction::transform_coefficients;
use crate::{Error, Result};

/// First Teichmüller digit of a unit modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSquaredLift {
    pub p: Natural,
    pub base: Natural,
    pub digit: Residue,
}

impl PrimeSquaredLift {
    pub fn new(p: &Natural, base: &Natural) -> Result<Self> {
        Ok(PrimeSquaredLift {
            p: p.clone(),
            base: base.clone(),
            digit: teichmuller_digit(p, base)?,
        })
    }

    /// `base + digit * p`, a residue mod `p²`.
    pub fn lifted(&self) -> Residue {
        Residue::new(&self.base + self.digit.value() * &self.p, &self.p * &self.p)
            .expect("p² is at least 4")
    }
}

/// `((x^p mod p²) - x) / p`, so that `x + x₁p = x^p (mod p²)`.
pub fn teichmuller_digit(p: &Natural, x: &Natural) -> Result<Residue> {
    if x >= p {
        return Err(Error::InvalidInput(format!(
            "base {x} is not reduced modulo {p}"
        )));
    }
    if !is_coprime(x, p) {
        return Err(Error::NotAUnit {
            value: x.clone(),
            modulus: p.clone(),
        });
    }
    let power = mod_pow(x, p, &(p * p))?;
    let digit = carry(power.value(), x, p, "teichmuller digit")?;
    Residue::new(digit, p.clone())
}

/// `β = (X - b₀) / p` where `X` is known mod `p²` and `b₀ = X mod p`.
pub fn carry_beta_p2(p: &Natural, b0: &Natural, x: &Natural) -> Result<Residue> {
    let p2 = p * p;
    if x >= &p2 {
        return Err(Error::InvalidInput(format!(
            "{x} is not reduced modulo {p2}"
        )));
    }
    if b0 >= p || &(x % p) != b0 {
        return Err(Error::InconsistentInputs(format!(
            "{x} mod {p} is not {b0}"
        )));
    }
    Residue::new(carry(x, b0, p, "carry mod p²")?, p.clone())
}

/// Recovers `n mod p` from `X = a₀ⁿ mod p²` by solving
/// `β + n (b₀/a₀) a₁ = b₁ (mod p)`, with `a₁, b₁` the Teichmüller digits of
/// `a₀` and `b₀ = X mod p`.
pub fn recover_index_mod_p2(p: &Natural, a0: &Natural, x: &Natural) -> Result<Residue> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let a0 = a0 % p;
    let a1 = teichmuller_digit(p, &a0)?;
    if a1.is_zero() {
        return Err(Error::ZeroDigit {
            base: a0,
            p: p.clone(),
        });
    }
    let b0 = x % p;
    if b0.is_zero() {
        return Err(Error::NotAUnit {
            value: x.clone(),
            modulus: p * p,
        });
    }
    let beta = carry_beta_p2(p, &b0, x)?;
    let b1 = teichmuller_digit(p, &b0)?;

    let a0 = Residue::new(a0, p.clone())?;
    let ratio = Residue::new(b0, p.clone())?.mul(&a0.inv()?);
    let coefficient = ratio.mul(&a1);
    Ok(b1.sub(&beta).mul(&coefficient.inv()?))
}

/// `β_n`, the carry of `a₀^(n(q-1)) mod p²q²` above `B = b₀^(q-1) mod pq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositeCarry {
    pub beta: Residue,
}

fn require_units(params: &SafePrimeParams, a0: &Natural, b0: &Natural) -> Result<()> {
    for x in [a0, b0] {
        if !is_coprime(x, params.m1()) {
            return Err(Error::NotAUnit {
                value: x.clone(),
                modulus: params.m1().clone(),
            });
        }
    }
    Ok(())
}

fn power_matches_mod_p(params: &SafePrimeParams, a0: &Natural, b0: &Natural, n: &Natural) -> bool {
    a0.modpow(n, params.p()) == b0 % params.p()
}

pub fn carry_beta_pq(
    params: &SafePrimeParams,
    a0: &Natural,
    b0: &Natural,
    n: &Natural,
) -> Result<CompositeCarry> {
    require_units(params, a0, b0)?;
    if !power_matches_mod_p(params, a0, b0, n) {
        return Err(Error::Lemma1Violated(format!(
            "{a0}^{n} mod {} != {b0} mod {}",
            params.p(),
            params.p()
        )));
    }
    let wide = mod_pow(a0, &(n * params.phi_q()), params.m2())?;
    let target = mod_pow(b0, &params.phi_q(), params.m1())?;
    if &(wide.value() % params.m1()) != target.value() {
        return Err(Error::Lemma1Violated(format!(
            "{a0}^({n}(q-1)) and {b0}^(q-1) differ mod {}",
            params.m1()
        )));
    }
    let beta = carry(wide.value(), target.value(), params.m1(), "composite carry")?;
    Ok(CompositeCarry {
        beta: Residue::new(beta, params.m1().clone())?,
    })
}

/// Checks `a₀^(n(q-1)) = b₀^(q-1) (mod pq)`.
pub fn check_lemma1(
    params: &SafePrimeParams,
    a0: &Natural,
    b0: &Natural,
    n: &Natural,
) -> Result<bool> {
    for x in [a0, b0] {
        if !is_coprime(x, params.q()) {
            return Err(Error::PreconditionViolated(format!(
                "{x} is not a unit modulo q = {}",
                params.q()
            )));
        }
    }
    if !power_matches_mod_p(params, a0, b0, n) {
        return Err(Error::PreconditionViolated(format!(
            "{a0}^{n} != {b0} (mod {})",
            params.p()
        )));
    }
    let lhs = mod_pow(a0, &(n * params.phi_q()), params.m1())?;
    let rhs = mod_pow(b0, &params.phi_q(), params.m1())?;
    Ok(lhs == rhs)
}

/// Outcome of every composite-lift identity for one instance, with both
/// the carry-corrected digits and the carry-free ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub profile_a: LiftProfile,
    pub profile_b: LiftProfile,
    pub beta: Residue,
    /// Coefficient of `n` in `β + c n = d (mod pq)`.
    pub c: Residue,
    pub d: Residue,
    /// `(A + a₁pq)ⁿ = B + b₁pq (mod p²q²)` with corrected digits.
    pub lift_corrected_ok: bool,
    /// Same identity with the carry-free digits.
    pub lift_literal_ok: bool,
    /// `β + c n = d (mod pq)`.
    pub linearized_ok: bool,
    /// `n q(a₀) = q(b₀) + (β - k_b) B⁻¹ (mod pq)`.
    pub quotient_relation_corrected_ok: bool,
    /// `n q(a₀) = q(b₀) + β B⁻¹ (mod pq)`, dropping the carry of `b₀`.
    pub quotient_relation_literal_ok: bool,
    /// `β + n (B/A) a₁ = b₁ (mod pq)` with carry-free digits.
    pub linear_literal_ok: bool,
}

impl Lemma2Report {
    pub fn corrected_ok(&self) -> bool {
        self.lift_corrected_ok && self.linearized_ok && self.quotient_relation_corrected_ok
    }

    pub fn literal_ok(&self) -> bool {
        self.lift_literal_ok && self.linear_literal_ok
    }
}

pub fn check_lemma2(
    params: &SafePrimeParams,
    a0: &Natural,
    b0: &Natural,
    n: &Natural,
) -> Result<Lemma2Report> {
    let beta = carry_beta_pq(params, a0, b0, n)?.beta;
    let profile_a = lift_profile(params, a0)?;
    let profile_b = lift_profile(params, b0)?;
    let m1 = params.m1();
    let n_mod = Residue::new(n.clone(), m1.clone())?;

    let lift_holds = |a_lift: Residue, b_lift: Residue| -> Result<bool> {
        Ok(mod_pow(a_lift.value(), n, params.m2())? == b_lift)
    };
    let lift_corrected_ok = lift_holds(profile_a.lifted(params), profile_b.lifted(params))?;
    let lift_literal_ok = lift_holds(
        profile_a.lifted_literal(params),
        profile_b.lifted_literal(params),
    )?;

    let (c, d) = transform_coefficients(&profile_a, &profile_b);
    let linearized_ok = beta.add(&c.mul(&n_mod)) == d;

    let b_inv = profile_b.power.inv()?;
    let lhs = n_mod.mul(&profile_a.lerch);
    let quotient_relation_corrected_ok =
        lhs == profile_b.lerch.add(&beta.sub(&profile_b.carry).mul(&b_inv));
    let quotient_relation_literal_ok = lhs == profile_b.lerch.add(&beta.mul(&b_inv));

    let ratio = profile_b.power.mul(&profile_a.power.inv()?);
    let linear_literal_ok =
        beta.add(&n_mod.mul(&ratio).mul(&profile_a.digit_literal)) == profile_b.digit_literal;

    Ok(Lemma2Report {
        profile_a,
        profile_b,
        beta,
        c,
        d,
        lift_corrected_ok,
        lift_literal_ok,
        linearized_ok,
        quotient_relation_corrected_ok,
        quotient_relation_literal_ok,
        linear_literal_ok,
    })
}

/// Fermat-quotient form of the first Teichmüller digit: `x₁ = x q_p(x)`.
pub fn teichmuller_digit_from_quotient(p: &Natural, x: &Natural) -> Result<Residue> {
    let qp = fermat_quotient_p(p, x)?;
    Ok(qp.mul(&Residue::new(x.clone(), p.clone())?))
}
