//! The transform from a discrete-log instance `a₀ⁿ = b₀ (mod p)` to one
//! linear congruence `β + c n = d (mod pq)` in the unknowns `(β, n)`,
//! split by the CRT into equations mod `p` and mod `q`.
//!
//! The congruence has about `pq` solutions, so it does not pin down `n`
//! on its own. [`solve_small`] instead recovers `n mod q` in the order-`q`
//! subgroup generated by `a₀^(q-1) mod pq`, and decides between the two
//! candidates mod `p - 1` by direct exponentiation.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{is_coprime, mod_pow, Natural, Residue};
use crate::lift::{check_lemma1, check_lemma2};
use crate::mcrt::{self, LinearEquation, LinearSystem, SolutionSet};
use crate::numtheory::SafePrimeParams;
use crate::oracle::{dlog_bsgs, CyclicContext};
use crate::quotients::{lift_profile, LiftProfile};
use crate::{Error, Result};

/// A discrete-log instance over a safe prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DlogInstance {
    pub params: SafePrimeParams,
    #[serde(with = "crate::serde_dec")]
    pub a0: Natural,
    #[serde(with = "crate::serde_dec")]
    pub b0: Natural,
    #[serde(with = "crate::serde_dec::option")]
    pub known_n: Option<Natural>,
}

impl DlogInstance {
    pub fn new(
        params: SafePrimeParams,
        a0: Natural,
        b0: Natural,
        known_n: Option<Natural>,
    ) -> Result<Self> {
        for (name, x) in [("a0", &a0), ("b0", &b0)] {
            if !is_coprime(x, params.m1()) {
                return Err(Error::InvalidInstance(format!(
                    "{name} = {x} is not a unit modulo pq = {}",
                    params.m1()
                )));
            }
        }
        let p = params.p();
        let two = Natural::from(2u8);
        if a0.modpow(params.q(), p).is_one() || a0.modpow(&two, p).is_one() {
            return Err(Error::InvalidInstance(format!(
                "a0 = {a0} is not a primitive root of {p}"
            )));
        }
        if let Some(n) = &known_n {
            if a0.modpow(n, p) != &b0 % p {
                return Err(Error::InvalidInstance(format!(
                    "{a0}^{n} != {b0} (mod {p})"
                )));
            }
        }
        Ok(DlogInstance {
            params,
            a0,
            b0,
            known_n,
        })
    }

    pub fn from_u64(p: u64, a0: u64, b0: u64, known_n: Option<u64>) -> Result<Self> {
        Self::new(
            SafePrimeParams::from_p(Natural::from(p))?,
            Natural::from(a0),
            Natural::from(b0),
            known_n.map(Natural::from),
        )
    }
}

/// `u β + v n = w (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearCongruence {
    #[serde(with = "crate::serde_dec")]
    pub u: Natural,
    #[serde(with = "crate::serde_dec")]
    pub v: Natural,
    #[serde(with = "crate::serde_dec")]
    pub w: Natural,
    #[serde(with = "crate::serde_dec")]
    pub m: Natural,
}

impl LinearCongruence {
    pub fn new(u: Natural, v: Natural, w: Natural, m: Natural) -> Result<Self> {
        if m < Natural::from(2u8) {
            return Err(Error::InvalidInput(format!("modulus {m} is below 2")));
        }
        Ok(LinearCongruence {
            u: u % &m,
            v: v % &m,
            w: w % &m,
            m,
        })
    }

    pub fn is_satisfied(&self, beta: &Natural, n: &Natural) -> bool {
        (&self.u * beta + &self.v * n) % &self.m == self.w
    }

    /// The same congruence read modulo a divisor of `m`.
    pub fn reduce(&self, m: &Natural) -> Result<Self> {
        if !(&self.m % m).is_zero() {
            return Err(Error::InvalidInput(format!(
                "{m} does not divide {}",
                self.m
            )));
        }
        Self::new(self.u.clone(), self.v.clone(), self.w.clone(), m.clone())
    }

    pub fn to_equation(&self) -> LinearEquation {
        LinearEquation::new(
            vec![self.u.clone(), self.v.clone()],
            self.w.clone(),
            self.m.clone(),
        )
        .expect("modulus checked at construction")
    }

    pub fn solutions(&self) -> Result<SolutionSet> {
        mcrt::solve_system(&LinearSystem::new(vec![self.to_equation()])?)
    }
}

/// The congruence mod `pq` and its projections mod `p` and mod `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceSystem {
    pub master: LinearCongruence,
    pub parts: Vec<LinearCongruence>,
}

impl CongruenceSystem {
    pub fn is_satisfied(&self, beta: &Natural, n: &Natural) -> bool {
        self.master.is_satisfied(beta, n) && self.parts.iter().all(|c| c.is_satisfied(beta, n))
    }

    pub fn to_linear_system(&self) -> Result<LinearSystem> {
        LinearSystem::new(
            self.parts
                .iter()
                .map(LinearCongruence::to_equation)
                .collect(),
        )
    }

    /// Solution set of the split system in the unknowns `(β, n)`.
    pub fn solutions(&self) -> Result<SolutionSet> {
        mcrt::solve_system(&self.to_linear_system()?)
    }
}

/// `c = -B q(a₀)` and `d = k_b - B q(b₀)` (mod pq).
pub fn transform_coefficients(
    profile_a: &LiftProfile,
    profile_b: &LiftProfile,
) -> (Residue, Residue) {
    let c = profile_b.power.mul(&profile_a.lerch).neg();
    let d = profile_b.carry.sub(&profile_b.power.mul(&profile_b.lerch));
    (c, d)
}

/// The `(B/A) a₁` form of the coefficient of `n`; equal to `c` exactly
/// when `a₀^(q-1)` has no carry.
pub fn ratio_coefficient(profile_a: &LiftProfile, profile_b: &LiftProfile) -> Result<Residue> {
    Ok(profile_b
        .power
        .mul(&profile_a.power.inv()?)
        .mul(&profile_a.digit))
}

pub fn transform(inst: &DlogInstance) -> Result<CongruenceSystem> {
    let params = &inst.params;
    let profile_a = lift_profile(params, &inst.a0)?;
    let profile_b = lift_profile(params, &inst.b0)?;
    let (c, d) = transform_coefficients(&profile_a, &profile_b);
    let master = LinearCongruence::new(
        Natural::one(),
        c.into_value(),
        d.into_value(),
        params.m1().clone(),
    )?;
    let parts = [params.p(), params.q()]
        .into_iter()
        .map(|m| master.reduce(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(CongruenceSystem { master, parts })
}

/// `n mod q`, found in the order-`q` subgroup generated by
/// `A = a₀^(q-1) mod pq`.
pub fn subgroup_index_mod_q(inst: &DlogInstance) -> Result<Residue> {
    let params = &inst.params;
    let a = mod_pow(&inst.a0, &params.phi_q(), params.m1())?;
    let b = mod_pow(&inst.b0, &params.phi_q(), params.m1())?;
    let ctx = CyclicContext::new(a.into_value(), params.m1().clone(), params.q().clone())?;
    let n_q = dlog_bsgs(&ctx, b.value())?.ok_or_else(|| {
        Error::NoSolution(format!(
            "{} is not in the subgroup generated by {}",
            b.value(),
            ctx.generator
        ))
    })?;
    Residue::new(n_q, params.q().clone())
}

/// `{n_q, n_q + q}` as residues mod `p - 1 = 2q`.
pub fn candidates_mod_group_order(n_q: &Residue, params: &SafePrimeParams) -> [Residue; 2] {
    let order = params.group_order();
    let low = n_q.value() % params.q();
    let high = &low + params.q();
    [
        Residue::new(low, order.clone()).expect("p - 1 >= 6"),
        Residue::new(high, order).expect("p - 1 >= 6"),
    ]
}

/// Desk-scale solver: subgroup index mod `q`, then pick the candidate
/// mod `p - 1` that satisfies `a₀ⁿ = b₀ (mod p)`.
pub fn solve_small(inst: &DlogInstance) -> Result<Residue> {
    let n_q = subgroup_index_mod_q(inst)?;
    let p = inst.params.p();
    let target = &inst.b0 % p;
    candidates_mod_group_order(&n_q, &inst.params)
        .into_iter()
        .find(|cand| inst.a0.modpow(cand.value(), p) == target)
        .ok_or_else(|| {
            Error::NoSolution(format!(
                "neither candidate for n_q = {} satisfies the instance",
                n_q.value()
            ))
        })
}

/// Every intermediate quantity and identity check for an instance with a
/// known index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub instance: DlogInstance,
    #[serde(with = "crate::serde_dec")]
    pub n: Natural,
    pub profile_a: LiftProfile,
    pub profile_b: LiftProfile,
    pub beta: Residue,
    pub c: Residue,
    pub d: Residue,
    /// `(B/A) a₁` with the corrected digit.
    pub c_ratio_form: Residue,
    pub system: CongruenceSystem,
    pub n_mod_q: Residue,
    pub solved_n: Residue,
    pub checks: Checks,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub lemma1: bool,
    pub lift_corrected: bool,
    pub lift_literal: bool,
    pub master_congruence: bool,
    pub part_congruences: bool,
    pub quotient_relation_corrected: bool,
    pub quotient_relation_literal: bool,
    pub linear_literal: bool,
    pub ratio_form_matches: bool,
    pub subgroup_index: bool,
    pub recovered_n: bool,
}

impl Checks {
    /// All checks that must hold for every valid instance.
    pub fn corrected_ok(&self) -> bool {
        self.lemma1
            && self.lift_corrected
            && self.master_congruence
            && self.part_congruences
            && self.quotient_relation_corrected
            && self.subgroup_index
            && self.recovered_n
    }

    pub fn literal_ok(&self) -> bool {
        self.lift_literal && self.linear_literal
    }
}

impl VerificationReport {
    pub fn all_corrected_ok(&self) -> bool {
        self.checks.corrected_ok()
    }
}

pub fn verify_instance(inst: &DlogInstance) -> Result<VerificationReport> {
    let n = inst
        .known_n
        .clone()
        .ok_or_else(|| Error::PreconditionViolated("verification needs a known index".into()))?;
    let params = &inst.params;
    let lemma1 = check_lemma1(params, &inst.a0, &inst.b0, &n)?;
    let lemma2 = check_lemma2(params, &inst.a0, &inst.b0, &n)?;
    let system = transform(inst)?;
    let beta = lemma2.beta.clone();

    let n_mod_q = subgroup_index_mod_q(inst)?;
    let solved_n = solve_small(inst)?;
    let c_ratio_form = ratio_coefficient(&lemma2.profile_a, &lemma2.profile_b)?;

    let checks = Checks {
        lemma1,
        lift_corrected: lemma2.lift_corrected_ok,
        lift_literal: lemma2.lift_literal_ok,
        master_congruence: system.master.is_satisfied(beta.value(), &n),
        part_congruences: system
            .parts
            .iter()
            .all(|c| c.is_satisfied(beta.value(), &n)),
        quotient_relation_corrected: lemma2.quotient_relation_corrected_ok,
        quotient_relation_literal: lemma2.quotient_relation_literal_ok,
        linear_literal: lemma2.linear_literal_ok,
        ratio_form_matches: c_ratio_form == lemma2.c,
        subgroup_index: n_mod_q.value() == &(&n % params.q()),
        recovered_n: solved_n.value() == &(&n % params.group_order()),
    };

    Ok(VerificationReport {
        instance: inst.clone(),
        n,
        profile_a: lemma2.profile_a,
        profile_b: lemma2.profile_b,
        beta,
        c: lemma2.c,
        d: lemma2.d,
        c_ratio_form,
        system,
        n_mod_q,
        solved_n,
        checks,
    })
}
