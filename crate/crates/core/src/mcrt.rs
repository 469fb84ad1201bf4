//! Linear congruences in several unknowns over pairwise-coprime moduli.
//!
//! Solutions of one equation `c·x = w (mod m)` are stored as a particular
//! solution plus an echelon basis of the kernel `{x : c·x = 0 (mod m)}`:
//! basis vector `j` is zero before coordinate `j` and has the smallest
//! possible positive entry `s_j` there. Every solution is then written
//! uniquely as `particular + sum t_j v_j` with `0 <= t_j < m / s_j`.
//! A system over coprime moduli is solved per modulus and recombined
//! coordinatewise with the CRT.

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{crt_pair, mod_inv, Natural, Residue};
use crate::{Error, Result};

/// `coeffs · x = constant (mod modulus)`, all entries canonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearEquation {
    #[serde(with = "crate::serde_dec::vec")]
    pub coeffs: Vec<Natural>,
    #[serde(with = "crate::serde_dec")]
    pub constant: Natural,
    #[serde(with = "crate::serde_dec")]
    pub modulus: Natural,
}

impl LinearEquation {
    pub fn new(coeffs: Vec<Natural>, constant: Natural, modulus: Natural) -> Result<Self> {
        if modulus < Natural::from(2u8) {
            return Err(Error::InvalidSystem(format!(
                "modulus {modulus} is below 2"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidSystem("equation has no unknowns".into()));
        }
        Ok(LinearEquation {
            coeffs: coeffs.into_iter().map(|c| c % &modulus).collect(),
            constant: constant % &modulus,
            modulus,
        })
    }

    pub fn from_u64(coeffs: &[u64], constant: u64, modulus: u64) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| Natural::from(c)).collect(),
            Natural::from(constant),
            Natural::from(modulus),
        )
    }

    pub fn unknowns(&self) -> usize {
        self.coeffs.len()
    }

    /// Evaluates the equation at `x`; coordinates may be any integers.
    pub fn is_satisfied(&self, x: &[Natural]) -> bool {
        x.len() == self.coeffs.len() && {
            let lhs = self
                .coeffs
                .iter()
                .zip(x)
                .fold(Natural::zero(), |acc, (c, xi)| acc + c * xi);
            lhs % &self.modulus == self.constant
        }
    }
}

/// A set of equations in the same unknowns over pairwise-coprime moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    unknowns: usize,
    equations: Vec<LinearEquation>,
}

impl LinearSystem {
    pub fn new(equations: Vec<LinearEquation>) -> Result<Self> {
        let unknowns = equations
            .first()
            .map(LinearEquation::unknowns)
            .ok_or_else(|| Error::InvalidSystem("system has no equations".into()))?;
        if equations.iter().any(|e| e.unknowns() != unknowns) {
            return Err(Error::InvalidSystem(
                "equations disagree on the number of unknowns".into(),
            ));
        }
        for (i, a) in equations.iter().enumerate() {
            for b in &equations[i + 1..] {
                if !a.modulus.gcd(&b.modulus).is_one() {
                    return Err(Error::InvalidSystem(format!(
                        "moduli {} and {} are not coprime",
                        a.modulus, b.modulus
                    )));
                }
            }
        }
        Ok(LinearSystem {
            unknowns,
            equations,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> &[LinearEquation] {
        &self.equations
    }

    pub fn modulus(&self) -> Natural {
        self.equations
            .iter()
            .fold(Natural::one(), |acc, e| acc * &e.modulus)
    }

    pub fn is_satisfied(&self, x: &[Natural]) -> bool {
        self.equations.iter().all(|e| e.is_satisfied(x))
    }
}

/// Particular solution and echelon kernel basis for one modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameterization {
    #[serde(with = "crate::serde_dec::vec")]
    pub particular: Vec<Natural>,
    pub basis: Vec<BasisVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    #[serde(with = "crate::serde_dec::vec")]
    pub vector: Vec<Natural>,
    /// Leading entry `s_j`; the coefficient of this vector ranges over
    /// `[0, modulus / step)`.
    #[serde(with = "crate::serde_dec")]
    pub step: Natural,
}

/// Solutions of one equation, mod its modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularSolutions {
    pub equation: LinearEquation,
    /// `None` when the equation has no solution.
    pub parameterization: Option<Parameterization>,
}

impl ModularSolutions {
    pub fn modulus(&self) -> &Natural {
        &self.equation.modulus
    }

    pub fn count(&self) -> Natural {
        match &self.parameterization {
            None => Natural::zero(),
            Some(param) => param
                .basis
                .iter()
                .fold(Natural::one(), |acc, b| acc * (self.modulus() / &b.step)),
        }
    }

    /// Structural membership: reduces `x - particular` along the echelon
    /// basis and checks that nothing is left over.
    pub fn contains(&self, x: &[Natural]) -> bool {
        let Some(param) = &self.parameterization else {
            return false;
        };
        if x.len() != param.particular.len() {
            return false;
        }
        let m = self.modulus();
        let mut diff: Vec<Natural> = x
            .iter()
            .zip(&param.particular)
            .map(|(xi, pi)| (xi % m + m - pi) % m)
            .collect();
        for (j, b) in param.basis.iter().enumerate() {
            let (t, rem) = diff[j].div_rem(&b.step);
            if !rem.is_zero() {
                return false;
            }
            for (d, v) in diff.iter_mut().zip(&b.vector) {
                *d = (&*d + m - (&t * v) % m) % m;
            }
        }
        diff.iter().all(Zero::is_zero)
    }

    /// All solutions in `[0, m)^r`, unsorted.
    fn members(&self) -> Vec<Vec<Natural>> {
        let Some(param) = &self.parameterization else {
            return Vec::new();
        };
        let m = self.modulus();
        let mut out = vec![param.particular.clone()];
        for b in &param.basis {
            let range = (m / &b.step)
                .to_u64()
                .expect("enumeration is bounded by the caller's limit");
            let mut next = Vec::with_capacity(out.len() * range as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..range {
                    next.push(cur.clone());
                    for (c, v) in cur.iter_mut().zip(&b.vector) {
                        *c = (&*c + v) % m;
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// Solves `a x = b (mod n)` for one unknown, returning the least solution
/// in `[0, n / gcd(a, n))`, or `None`.
fn solve_univariate(a: &Natural, b: &Natural, n: &Natural) -> Option<Natural> {
    let g = a.gcd(n);
    if !(b % &g).is_zero() {
        return None;
    }
    let reduced = n / &g;
    if reduced.is_one() {
        return Some(Natural::zero());
    }
    let inv = mod_inv(&(a / &g), &reduced).expect("a/g is a unit mod n/g");
    Some((b / &g) * inv.value() % &reduced)
}

/// Greedy back-substitution: finds `x_start..x_r` with
/// `sum_{i>=start} c_i x_i = target (mod m)` given that `tails[start]`
/// divides `target`.
fn particular_from(
    coeffs: &[Natural],
    tails: &[Natural],
    start: usize,
    target: &Natural,
    m: &Natural,
) -> Vec<Natural> {
    let mut x = vec![Natural::zero(); coeffs.len()];
    let mut t = target % m;
    for j in start..coeffs.len() {
        let xj = solve_univariate(&coeffs[j], &t, &tails[j + 1])
            .expect("tail gcd divides the running target");
        t = (&t + m - (&coeffs[j] * &xj) % m) % m;
        x[j] = xj;
    }
    debug_assert!(t.is_zero());
    x
}

/// Solves one equation `coeffs · x = constant (mod m)`.
pub fn solve_single(
    coeffs: &[Natural],
    constant: &Natural,
    m: &Natural,
) -> Result<ModularSolutions> {
    let equation = LinearEquation::new(coeffs.to_vec(), constant.clone(), m.clone())?;
    Ok(solve_equation(equation))
}

fn solve_equation(equation: LinearEquation) -> ModularSolutions {
    let r = equation.unknowns();
    let m = equation.modulus.clone();
    let c = &equation.coeffs;

    // tails[j] = gcd(c_j, ..., c_{r-1}, m); tails[r] = m.
    let mut tails = vec![m.clone(); r + 1];
    for j in (0..r).rev() {
        tails[j] = c[j].gcd(&tails[j + 1]);
    }
    if !(&equation.constant % &tails[0]).is_zero() {
        return ModularSolutions {
            equation,
            parameterization: None,
        };
    }

    let particular = particular_from(c, &tails, 0, &equation.constant, &m);
    let basis = (0..r)
        .map(|j| {
            let step = &tails[j + 1] / &tails[j];
            let target = (&m - (&c[j] * &step) % &m) % &m;
            let mut vector = particular_from(c, &tails, j + 1, &target, &m);
            vector[j] = step.clone() % &m;
            BasisVector { vector, step }
        })
        .collect();

    ModularSolutions {
        equation,
        parameterization: Some(Parameterization { particular, basis }),
    }
}

/// Solution set of a [`LinearSystem`], kept per modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    #[serde(with = "crate::serde_dec")]
    pub modulus: Natural,
    pub unknowns: usize,
    pub parts: Vec<ModularSolutions>,
}

impl SolutionSet {
    pub fn count(&self) -> Natural {
        self.parts
            .iter()
            .fold(Natural::one(), |acc, p| acc * p.count())
    }

    pub fn is_empty(&self) -> bool {
        self.count().is_zero()
    }

    /// Membership through the per-modulus parameterizations.
    pub fn contains(&self, x: &[Natural]) -> bool {
        x.len() == self.unknowns
            && self.parts.iter().all(|part| {
                let reduced: Vec<Natural> = x.iter().map(|v| v % part.modulus()).collect();
                part.contains(&reduced)
            })
    }

    fn satisfies_system(&self, x: &[Natural]) -> bool {
        self.parts.iter().all(|p| p.equation.is_satisfied(x))
    }

    /// All solutions in `[0, M)^r`, sorted lexicographically. Each one is
    /// checked against the originating equations before it is returned.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<Vec<Natural>>> {
        let count = self.count();
        if count > Natural::from(limit) {
            return Err(Error::TooManySolutions { count, limit });
        }
        let mut acc: Option<(Natural, Vec<Vec<Natural>>)> = None;
        for part in &self.parts {
            let members = part.members();
            acc = Some(match acc {
                None => (part.modulus().clone(), members),
                Some((modulus, prev)) => {
                    let mut combined = Vec::with_capacity(prev.len() * members.len());
                    for left in &prev {
                        for right in &members {
                            let tuple = left
                                .iter()
                                .zip(right)
                                .map(|(a, b)| {
                                    let ra = Residue::new(a.clone(), modulus.clone())?;
                                    let rb = Residue::new(b.clone(), part.modulus().clone())?;
                                    Ok(crt_pair(&ra, &rb)?.into_value())
                                })
                                .collect::<Result<Vec<_>>>()?;
                            combined.push(tuple);
                        }
                    }
                    (modulus * part.modulus(), combined)
                }
            });
        }
        let mut out = acc.map(|(_, v)| v).unwrap_or_default();
        for x in &out {
            assert!(
                self.satisfies_system(x),
                "enumerated tuple {x:?} violates the system"
            );
        }
        out.sort();
        Ok(out)
    }
}

/// Solves each equation of the system and collects the per-modulus sets.
pub fn solve_system(system: &LinearSystem) -> Result<SolutionSet> {
    let parts = system
        .equations()
        .iter()
        .cloned()
        .map(solve_equation)
        .collect();
    Ok(SolutionSet {
        modulus: system.modulus(),
        unknowns: system.unknowns(),
        parts,
    })
}

pub fn enumerate(set: &SolutionSet, limit: u64) -> Result<Vec<Vec<Natural>>> {
    set.enumerate(limit)
}

pub fn count(set: &SolutionSet) -> Natural {
    set.count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn nv(v: &[u64]) -> Vec<Natural> {
        v.iter().map(|&x| n(x)).collect()
    }

    fn single(coeffs: &[u64], w: u64, m: u64) -> ModularSolutions {
        solve_single(&nv(coeffs), &n(w), &n(m)).unwrap()
    }

    fn system(eqs: &[(&[u64], u64, u64)]) -> LinearSystem {
        LinearSystem::new(
            eqs.iter()
                .map(|(c, w, m)| LinearEquation::from_u64(c, *w, *m).unwrap())
                .collect(),
        )
        .unwrap()
    }

    // Exhaustive scan of [0, m)^r.
    fn scan(eq: &LinearEquation) -> Vec<Vec<Natural>> {
        let m = eq.modulus.to_u64().unwrap();
        let r = eq.unknowns();
        let total = m.pow(r as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut rest = idx;
            let mut x = vec![0u64; r];
            for slot in x.iter_mut().rev() {
                *slot = rest % m;
                rest /= m;
            }
            let x = nv(&x);
            if eq.is_satisfied(&x) {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn solve_single_examples() {
        let s = single(&[1, 2], 3, 5);
        assert_eq!(s.count(), n(5));
        assert!(s.contains(&nv(&[4, 2])));
        let s = single(&[1, 1], 6, 11);
        assert_eq!(s.count(), n(11));
        assert!(s.contains(&nv(&[4, 2])));
        let s = single(&[0, 0], 1, 7);
        assert_eq!(s.count(), n(0));
        assert!(s.parameterization.is_none());
        assert!(!s.contains(&nv(&[0, 0])));
    }

    #[test]
    fn count_examples() {
        assert_eq!(single(&[2, 4], 6, 8).count(), n(16));
        assert_eq!(single(&[2, 4], 5, 8).count(), n(0));
        let empty = solve_system(&system(&[(&[0, 0], 1, 7)])).unwrap();
        assert_eq!(count(&empty), n(0));
        assert!(enumerate(&empty, 10).unwrap().is_empty());
    }

    #[test]
    fn worked_example_system() {
        let sys = system(&[(&[1, 1], 6, 11), (&[1, 2], 3, 5)]);
        let set = solve_system(&sys).unwrap();
        assert_eq!(set.count(), n(55));
        assert_eq!(set.modulus, n(55));
        assert!(set.contains(&nv(&[4, 2])));
        let all = enumerate(&set, 100).unwrap();
        assert_eq!(all.len(), 55);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let master = LinearEquation::from_u64(&[1, 12], 28, 55).unwrap();
        for x in &all {
            assert!(sys.is_satisfied(x));
            assert!(master.is_satisfied(x));
        }
        // brute force over all (β, n) in [0, 55)²
        let scanned: Vec<_> = scan(&master);
        assert_eq!(scanned, all);
    }

    #[test]
    fn single_equation_system_matches_solve_single() {
        let sys = system(&[(&[2, 4], 6, 8)]);
        let set = solve_system(&sys).unwrap();
        let s = single(&[2, 4], 6, 8);
        assert_eq!(set.count(), s.count());
        assert_eq!(set.parts[0], s);
        let mut members = s.members();
        members.sort();
        assert_eq!(set.enumerate(100).unwrap(), members);
    }

    #[test]
    fn classical_crt_as_one_unknown() {
        let set = solve_system(&system(&[(&[1], 6, 11), (&[1], 3, 5)])).unwrap();
        assert_eq!(set.enumerate(10).unwrap(), vec![nv(&[28])]);
    }

    #[test]
    fn enumeration_limit() {
        let set = solve_system(&system(&[(&[1, 2], 3, 5)])).unwrap();
        assert!(matches!(
            set.enumerate(3),
            Err(Error::TooManySolutions { .. })
        ));
    }

    #[test]
    fn invalid_systems() {
        let a = LinearEquation::from_u64(&[1, 1], 1, 6).unwrap();
        let b = LinearEquation::from_u64(&[1, 1], 1, 4).unwrap();
        assert!(matches!(
            LinearSystem::new(vec![a.clone(), b]),
            Err(Error::InvalidSystem(_))
        ));
        let c = LinearEquation::from_u64(&[1], 1, 5).unwrap();
        assert!(LinearSystem::new(vec![a, c]).is_err());
        assert!(LinearSystem::new(vec![]).is_err());
        assert!(LinearEquation::from_u64(&[], 1, 5).is_err());
        assert!(LinearEquation::from_u64(&[1], 1, 1).is_err());
    }

    #[test]
    fn matches_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for m in 2..=50u64 {
            for r in 1..=3usize {
                if m.pow(r as u32) > 50_000 {
                    continue;
                }
                for _ in 0..4 {
                    let coeffs: Vec<u64> = (0..r)
                        .map(|_| {
                            // bias towards coefficients sharing a factor with m
                            let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
                            let d = divisors[rng.gen_range(0..divisors.len())];
                            d * rng.gen_range(0..m / d) % m
                        })
                        .collect();
                    let w = rng.gen_range(0..m);
                    let s = single(&coeffs, w, m);
                    let scanned = scan(&s.equation);
                    assert_eq!(s.count(), n(scanned.len() as u64), "{:?}", s.equation);
                    let set = solve_system(&LinearSystem::new(vec![s.equation.clone()]).unwrap())
                        .unwrap();
                    assert_eq!(set.enumerate(u64::MAX).unwrap(), scanned);
                    for x in &scanned {
                        assert!(s.contains(x));
                    }
                    // membership is false off the solution set
                    let x: Vec<Natural> = (0..r).map(|_| n(rng.gen_range(0..m))).collect();
                    assert_eq!(s.contains(&x), s.equation.is_satisfied(&x));
                }
            }
        }
    }
}
