//! Exact number-theory toolkit for rewriting a discrete logarithm over a
//! safe-prime field as a linear congruence in two unknowns over coprime
//! moduli.
//!
//! The pipeline, bottom-up:
//!
//! - [`arith`]: residues, extended gcd, inverses, exponentiation, CRT.
//! - [`numtheory`]: primality, safe primes, primitive roots, φ and λ.
//! - [`quotients`]: Fermat quotients mod `p` and the generalized quotient
//!   mod `pq` together with the carries of base powers.
//! - [`lift`]: the `p²` Teichmüller lift and index recovery, and the
//!   composite lift over `p²q²`.
//! - [`reduction`]: the transform of an instance into a congruence system,
//!   subgroup index recovery and a desk-scale solver.
//! - [`mcrt`]: solution sets of linear systems over pairwise-coprime moduli.
//! - [`oracle`]: brute-force and baby-step giant-step discrete logs.
//! - [`sample`]: seeded generation of random instances.

pub mod arith;
mod error;
pub mod lift;
pub mod mcrt;
pub mod numtheory;
pub mod oracle;
pub mod quotients;
pub mod reduction;
pub mod sample;
pub mod serde_dec;

pub use arith::{Integer, Natural, Residue};
pub use error::{Error, Result};
pub use numtheory::{Factorization, SafePrimeParams};
pub use reduction::{CongruenceSystem, DlogInstance, LinearCongruence, VerificationReport};
