//! Generic discrete-log solvers used as ground truth: exhaustive search and
//! baby-step giant-step.

use std::collections::HashMap;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{mod_inv, mod_pow, Natural};
use crate::numtheory::Factorization;
use crate::{Error, Result};

/// Largest order the exhaustive solver accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// A cyclic subgroup `<g>` of `(Z/m)^*` with known order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicContext {
    pub generator: Natural,
    pub modulus: Natural,
    pub order: Natural,
}

impl CyclicContext {
    /// Requires `g^ord = 1 (mod m)`.
    pub fn new(generator: Natural, modulus: Natural, order: Natural) -> Result<Self> {
        if order.is_zero() {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        if !mod_pow(&generator, &order, &modulus)?.value().is_one() {
            return Err(Error::InvalidInput(format!(
                "{generator}^{order} != 1 (mod {modulus})"
            )));
        }
        Ok(CyclicContext {
            generator,
            modulus,
            order,
        })
    }

    /// Like [`CyclicContext::new`], and also checks that the order is exact
    /// using the factorization of `ord`.
    pub fn exact(
        generator: Natural,
        modulus: Natural,
        order: Natural,
        order_factors: &Factorization,
    ) -> Result<Self> {
        if order_factors.value() != order {
            return Err(Error::InvalidInput(format!(
                "factorization does not multiply to {order}"
            )));
        }
        let ctx = Self::new(generator, modulus, order)?;
        for r in order_factors.primes() {
            let e = &ctx.order / r;
            if mod_pow(&ctx.generator, &e, &ctx.modulus)?.value().is_one() {
                return Err(Error::InvalidInput(format!(
                    "order of {} is a proper divisor of {}",
                    ctx.generator, ctx.order
                )));
            }
        }
        Ok(ctx)
    }
}

/// Smallest `n >= 0` with `g^n = h (mod m)`, by walking the powers.
pub fn dlog_bruteforce(ctx: &CyclicContext, h: &Natural) -> Result<Option<Natural>> {
    let ord = match ctx.order.to_u64() {
        Some(o) if o <= BRUTE_FORCE_LIMIT => o,
        _ => return Err(Error::OrderTooLarge(ctx.order.clone())),
    };
    let target = h % &ctx.modulus;
    let g = &ctx.generator % &ctx.modulus;
    let mut acc = Natural::one() % &ctx.modulus;
    for k in 0..ord {
        if acc == target {
            return Ok(Some(Natural::from(k)));
        }
        acc = acc * &g % &ctx.modulus;
    }
    Ok(None)
}

/// Same contract as [`dlog_bruteforce`] in `O(sqrt(ord))` group operations.
pub fn dlog_bsgs(ctx: &CyclicContext, h: &Natural) -> Result<Option<Natural>> {
    let m = &ctx.modulus;
    let root = ctx.order.sqrt();
    let steps = if &root * &root == ctx.order {
        root
    } else {
        root + 1u8
    };
    let steps = steps
        .to_u64()
        .filter(|&s| s <= u32::MAX as u64)
        .ok_or_else(|| Error::OrderTooLarge(ctx.order.clone()))?;

    let g = &ctx.generator % m;
    let mut baby: HashMap<Natural, u64> = HashMap::with_capacity(steps as usize);
    let mut acc = Natural::one() % m;
    for j in 0..steps {
        baby.entry(acc.clone()).or_insert(j);
        acc = acc * &g % m;
    }

    let giant = mod_inv(&mod_pow(&g, &Natural::from(steps), m)?.into_value(), m)?.into_value();
    let mut gamma = h % m;
    for i in 0..steps {
        if let Some(&j) = baby.get(&gamma) {
            let n = Natural::from(i) * steps + j;
            return Ok((n < ctx.order).then_some(n));
        }
        gamma = gamma * &giant % m;
    }
    Ok(None)
}
