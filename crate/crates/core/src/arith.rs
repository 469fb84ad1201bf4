//! Exact modular arithmetic over arbitrary-precision integers.
//!
//! Every residue is kept in canonical form `0 <= value < modulus`. Signed
//! intermediates are reduced as soon as they are produced.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Unbounded nonnegative integer.
pub type Natural = BigUint;
/// Unbounded signed integer, used only for intermediates such as Bézout
/// coefficients.
pub type Integer = BigInt;

/// A canonical residue class `value mod modulus` with `modulus >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    #[serde(with = "crate::serde_dec")]
    value: Natural,
    #[serde(with = "crate::serde_dec")]
    modulus: Natural,
}

impl Residue {
    pub fn new(value: Natural, modulus: Natural) -> Result<Self> {
        check_modulus(&modulus)?;
        Ok(Residue {
            value: value % &modulus,
            modulus,
        })
    }

    /// Reduces a signed integer into `[0, modulus)`.
    pub fn from_signed(value: &Integer, modulus: &Natural) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Residue {
            value: reduce_signed(value, modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn from_u64(value: u64, modulus: u64) -> Result<Self> {
        Self::new(Natural::from(value), Natural::from(modulus))
    }

    pub fn zero(modulus: &Natural) -> Result<Self> {
        Self::new(Natural::zero(), modulus.clone())
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn into_value(self) -> Natural {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Projects onto a modulus dividing the current one.
    pub fn reduce_to(&self, modulus: &Natural) -> Result<Self> {
        check_modulus(modulus)?;
        if !(&self.modulus % modulus).is_zero() {
            return Err(Error::InvalidInput(format!(
                "{modulus} does not divide {}",
                self.modulus
            )));
        }
        Ok(Residue {
            value: &self.value % modulus,
            modulus: modulus.clone(),
        })
    }

    pub fn add(&self, other: &Residue) -> Residue {
        self.same_modulus(other);
        Residue {
            value: (&self.value + &other.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn sub(&self, other: &Residue) -> Residue {
        self.same_modulus(other);
        Residue {
            value: (&self.value + &self.modulus - &other.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        self.same_modulus(other);
        Residue {
            value: (&self.value * &other.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn neg(&self) -> Residue {
        Residue {
            value: (&self.modulus - &self.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn inv(&self) -> Result<Residue> {
        mod_inv(&self.value, &self.modulus)
    }

    fn same_modulus(&self, other: &Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic across different moduli"
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

fn check_modulus(modulus: &Natural) -> Result<()> {
    if *modulus < Natural::from(2u8) {
        return Err(Error::InvalidInput(format!("modulus {modulus} is below 2")));
    }
    Ok(())
}

/// Canonical representative of a signed integer modulo `m`.
pub fn reduce_signed(value: &Integer, m: &Natural) -> Natural {
    let m_signed = Integer::from_biguint(Sign::Plus, m.clone());
    let r = value.mod_floor(&m_signed);
    r.to_biguint()
        .expect("mod_floor by a positive modulus is nonnegative")
}

/// Extended Euclid: returns `(g, s, t)` with `g = gcd(a, b)` and
/// `s*a + t*b = g`.
pub fn egcd(a: &Natural, b: &Natural) -> Result<(Natural, Integer, Integer)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("egcd(0, 0) is undefined".into()));
    }
    let mut old_r = Integer::from(a.clone());
    let mut r = Integer::from(b.clone());
    let (mut old_s, mut s) = (Integer::one(), Integer::zero());
    let (mut old_t, mut t) = (Integer::zero(), Integer::one());
    while !r.is_zero() {
        let quot = &old_r / &r;
        let next_r = &old_r - &quot * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &quot * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &quot * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    debug_assert!(!old_r.is_negative());
    let g = old_r.to_biguint().expect("gcd is nonnegative");
    Ok((g, old_s, old_t))
}

/// Inverse of `a` modulo `m`.
pub fn mod_inv(a: &Natural, m: &Natural) -> Result<Residue> {
    check_modulus(m)?;
    let a_red = a % m;
    let (g, s, _) = if a_red.is_zero() {
        (m.clone(), Integer::zero(), Integer::one())
    } else {
        egcd(&a_red, m)?
    };
    if !g.is_one() {
        return Err(Error::NotInvertible {
            value: a.clone(),
            modulus: m.clone(),
            gcd: g,
        });
    }
    Residue::from_signed(&s, m)
}

/// `x^e mod m`.
pub fn mod_pow(x: &Natural, e: &Natural, m: &Natural) -> Result<Residue> {
    check_modulus(m)?;
    Ok(Residue {
        value: x.modpow(e, m),
        modulus: m.clone(),
    })
}

/// Recombines `x = r1 (mod m1)`, `x = r2 (mod m2)` into `x mod m1*m2`.
pub fn crt_pair(r1: &Residue, r2: &Residue) -> Result<Residue> {
    let (m1, m2) = (r1.modulus(), r2.modulus());
    if !m1.gcd(m2).is_one() {
        return Err(Error::InvalidModuli(m1.clone(), m2.clone()));
    }
    let m1_inv = mod_inv(m1, m2)?;
    let diff = Integer::from(r2.value().clone()) - Integer::from(r1.value().clone());
    let t = (reduce_signed(&diff, m2) * m1_inv.value()) % m2;
    Residue::new(r1.value() + m1 * t, m1 * m2)
}

/// Divides `numerator` by `denominator`, failing unless the division is
/// exact.
pub fn exact_div(
    numerator: &Natural,
    denominator: &Natural,
    context: &'static str,
) -> Result<Natural> {
    let (quot, rem) = numerator.div_rem(denominator);
    if !rem.is_zero() {
        return Err(Error::ExactnessViolation {
            context,
            numerator: numerator.to_string(),
            denominator: denominator.clone(),
        });
    }
    Ok(quot)
}

/// Exact quotient `(high - low) / m` where `high` is a residue mod a
/// multiple of `m` and `low = high mod m`. This is how every carry in the
/// crate is extracted.
pub fn carry(high: &Natural, low: &Natural, m: &Natural, context: &'static str) -> Result<Natural> {
    if high < low {
        return Err(Error::ExactnessViolation {
            context,
            numerator: format!("{high} - {low}"),
            denominator: m.clone(),
        });
    }
    exact_div(&(high - low), m, context)
}

pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

pub fn is_coprime(a: &Natural, b: &Natural) -> bool {
    a.gcd(b).is_one()
}
