//! Finite commutative rings presented as products of residue rings
//! `Z_{n_1} x ... x Z_{n_k}`, with their ideals, idempotents and primes.
//!
//! Every ideal of such a ring is a product `d_1 Z_{n_1} x ... x d_k Z_{n_k}`
//! with `d_i | n_i`, so ideals are stored as divisor tuples and all lattice
//! operations reduce to gcd/lcm arithmetic.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iteration budget for [`Ring::lift_idempotent`].
pub const LIFT_ITERATION_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ring {
    moduli: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElem(Vec<u64>);

/// An ideal in canonical divisor form; `d_i = n_i` encodes a zero component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ideal(Vec<u64>);

/// `R/I` together with the components that survive the reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    ring: Option<Ring>,
    kept: Vec<usize>,
}

impl Ring {
    pub fn new(moduli: Vec<u64>) -> Result<Ring> {
        if moduli.is_empty() {
            return Err(Error::InvalidRing("at least one factor is required".into()));
        }
        if let Some(n) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidRing(format!("modulus {n} is smaller than 2")));
        }
        let mut order: u64 = 1;
        for &n in &moduli {
            order = order
                .checked_mul(n)
                .ok_or_else(|| Error::InvalidRing("ring order overflows u64".into()))?;
        }
        Ok(Ring { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Ring> {
        Ring::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn components(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn elem(&self, residues: &[u64]) -> Result<RingElem> {
        if residues.len() != self.moduli.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} residues, got {}",
                self.moduli.len(),
                residues.len()
            )));
        }
        Ok(RingElem(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(a, n)| a % n)
                .collect(),
        ))
    }

    /// Embeds an integer diagonally, reducing it modulo every factor.
    pub fn from_int(&self, a: i64) -> RingElem {
        RingElem(
            self.moduli
                .iter()
                .map(|&n| a.rem_euclid(n as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(&self) -> RingElem {
        RingElem(vec![0; self.moduli.len()])
    }

    pub fn one(&self) -> RingElem {
        RingElem(vec![1; self.moduli.len()])
    }

    /// The primitive idempotent that is 1 in factor `i` and 0 elsewhere.
    pub fn component_unit(&self, i: usize) -> RingElem {
        let mut r = vec![0; self.moduli.len()];
        r[i] = 1;
        RingElem(r)
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.zip(a, b, |x, y, n| (x + y) % n)
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.zip(a, b, |x, y, n| (x + n - y) % n)
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        RingElem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.zip(a, b, mulmod)
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn zip(&self, a: &RingElem, b: &RingElem, f: impl Fn(u64, u64, u64) -> u64) -> RingElem {
        RingElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| f(x, y, n))
                .collect(),
        )
    }

    /// All elements in lexicographic order of their residue tuples.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut res = vec![0; self.moduli.len()];
            for (slot, &n) in res.iter_mut().zip(&self.moduli).rev() {
                *slot = idx % n;
                idx /= n;
            }
            RingElem(res)
        })
    }

    pub fn is_nilpotent(&self, a: &RingElem) -> bool {
        // x is nilpotent in Z_n iff rad(n) | x
        a.0.iter()
            .zip(&self.moduli)
            .all(|(&x, &n)| x % radical_of(n) == 0)
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        a.0.iter().zip(&self.moduli).all(|(&x, &n)| x.gcd(&n) == 1)
    }

    pub fn is_idempotent(&self, a: &RingElem) -> bool {
        self.mul(a, a) == *a
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical() == self.zero_ideal()
    }

    // ---- ideals ----

    pub fn ideal(&self, divisors: &[u64]) -> Result<Ideal> {
        if divisors.len() != self.moduli.len() {
            return Err(Error::InvalidIdeal(format!(
                "expected {} divisors, got {}",
                self.moduli.len(),
                divisors.len()
            )));
        }
        for (&d, &n) in divisors.iter().zip(&self.moduli) {
            if d == 0 || n % d != 0 {
                return Err(Error::InvalidIdeal(format!("{d} does not divide {n}")));
            }
        }
        Ok(Ideal(divisors.to_vec()))
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal(self.moduli.clone())
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal(vec![1; self.moduli.len()])
    }

    pub fn principal_ideal(&self, a: &RingElem) -> Ideal {
        Ideal(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, n)| x.gcd(n))
                .collect(),
        )
    }

    /// The canonical generator of an ideal (the residue tuple of its divisors).
    pub fn generator(&self, ideal: &Ideal) -> RingElem {
        RingElem(
            ideal
                .0
                .iter()
                .zip(&self.moduli)
                .map(|(d, n)| d % n)
                .collect(),
        )
    }

    pub fn ideal_contains(&self, ideal: &Ideal, a: &RingElem) -> bool {
        ideal.0.iter().zip(&a.0).all(|(d, x)| x % d == 0)
    }

    pub fn ideal_product(&self, a: &Ideal, b: &Ideal) -> Ideal {
        Ideal(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), n)| (x * y).gcd(n))
                .collect(),
        )
    }

    /// Every ideal exactly once, sorted by divisor tuple.
    pub fn all_ideals(&self) -> Vec<Ideal> {
        let per_factor: Vec<Vec<u64>> = self.moduli.iter().map(|&n| divisors(n)).collect();
        let mut out = vec![Vec::new()];
        for divs in &per_factor {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    divs.iter().map(move |&d| {
                        let mut p = prefix.clone();
                        p.push(d);
                        p
                    })
                })
                .collect();
        }
        let mut ideals: Vec<Ideal> = out.into_iter().map(Ideal).collect();
        ideals.sort();
        ideals
    }

    /// All `e` with `e*e = e`, sorted.
    pub fn idempotents(&self) -> Vec<RingElem> {
        let per_factor: Vec<Vec<u64>> = self
            .moduli
            .iter()
            .map(|&n| (0..n).filter(|&x| mulmod(x, x, n) == x).collect())
            .collect();
        let mut out = vec![Vec::new()];
        for idem in &per_factor {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    idem.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        let mut v: Vec<RingElem> = out.into_iter().map(RingElem).collect();
        v.sort();
        v
    }

    pub fn nontrivial_idempotents(&self) -> Vec<RingElem> {
        let (zero, one) = (self.zero(), self.one());
        self.idempotents()
            .into_iter()
            .filter(|e| *e != zero && *e != one)
            .collect()
    }

    pub fn nilradical(&self) -> Ideal {
        Ideal(self.moduli.iter().map(|&n| radical_of(n)).collect())
    }

    pub fn is_nil(&self, ideal: &Ideal) -> bool {
        self.nilradical().contains(ideal)
    }

    /// Lifts an idempotent of `R/I` along a nil ideal `I` with the cubic
    /// iteration `e <- 3e^2 - 2e^3`.
    pub fn lift_idempotent(&self, u: &RingElem, nil: &Ideal) -> Result<RingElem> {
        if !self.is_nil(nil) {
            return Err(Error::NotNil(nil.to_string()));
        }
        let defect = self.sub(&self.mul(u, u), u);
        if !self.ideal_contains(nil, &defect) {
            return Err(Error::NotIdempotentModulo(u.to_string()));
        }
        let three = self.from_int(3);
        let two = self.from_int(2);
        let mut e = u.clone();
        for _ in 0..LIFT_ITERATION_CAP {
            let sq = self.mul(&e, &e);
            let cube = self.mul(&sq, &e);
            let next = self.sub(&self.mul(&three, &sq), &self.mul(&two, &cube));
            if next == e {
                return Ok(e);
            }
            e = next;
        }
        Err(Error::LiftDidNotConverge(LIFT_ITERATION_CAP))
    }

    /// Pullbacks of `pZ_{n_i}` for the primes `p | n_i`, sorted.
    pub fn prime_ideals(&self) -> Vec<Ideal> {
        let mut out = Vec::new();
        for (i, &n) in self.moduli.iter().enumerate() {
            for p in prime_factors(n) {
                let mut d = vec![1; self.moduli.len()];
                d[i] = p;
                out.push(Ideal(d));
            }
        }
        out.sort();
        out
    }

    /// Zero-dimensional: every prime is minimal.
    pub fn minimal_primes(&self) -> Vec<Ideal> {
        self.prime_ideals()
    }

    pub fn is_prime_ideal(&self, ideal: &Ideal) -> bool {
        self.prime_ideals().contains(ideal)
    }

    /// Minimal among the non-zero ideals.
    pub fn is_minimal_ideal(&self, ideal: &Ideal) -> bool {
        let zero = self.zero_ideal();
        if *ideal == zero {
            return false;
        }
        !self
            .all_ideals()
            .iter()
            .any(|j| *j != zero && j != ideal && ideal.contains(j))
    }

    pub fn quotient(&self, ideal: &Ideal) -> QuotientRing {
        let kept: Vec<usize> = (0..self.moduli.len()).filter(|&i| ideal.0[i] > 1).collect();
        let ring = if kept.is_empty() {
            None
        } else {
            Some(Ring {
                moduli: kept.iter().map(|&i| ideal.0[i]).collect(),
            })
        };
        QuotientRing { ring, kept }
    }

    /// `eR` as a ring in its own right: factor `i` becomes `Z_{n_i / gcd(e_i, n_i)}`,
    /// dropping factors where `e_i = 0`.
    pub fn corner_ring(&self, e: &RingElem) -> Option<(Ring, Vec<(usize, u64)>)> {
        let mut moduli = Vec::new();
        let mut origin = Vec::new();
        for (i, (&x, &n)) in e.0.iter().zip(&self.moduli).enumerate() {
            if x == 0 {
                continue;
            }
            let a = n / x.gcd(&n);
            if a > 1 {
                moduli.push(a);
                origin.push((i, x));
            }
        }
        if moduli.is_empty() {
            None
        } else {
            Some((Ring { moduli }, origin))
        }
    }
}

impl RingElem {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl Ideal {
    pub fn divisors(&self) -> &[u64] {
        &self.0
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Ideal) -> bool {
        self.0.iter().zip(&other.0).all(|(d, e)| e % d == 0)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal(self.0.iter().zip(&other.0).map(|(a, b)| a.gcd(b)).collect())
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal(self.0.iter().zip(&other.0).map(|(a, b)| a.lcm(b)).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }
}

impl QuotientRing {
    /// `None` when the ideal was the unit ideal.
    pub fn ring(&self) -> Option<&Ring> {
        self.ring.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_none()
    }

    pub fn project(&self, a: &RingElem) -> Option<RingElem> {
        let ring = self.ring.as_ref()?;
        Some(RingElem(
            self.kept
                .iter()
                .zip(ring.moduli())
                .map(|(&i, &d)| a.0[i] % d)
                .collect(),
        ))
    }

    /// Image of an ideal containing the kernel.
    pub fn project_ideal(&self, ideal: &Ideal) -> Option<Ideal> {
        self.ring.as_ref()?;
        Some(Ideal(self.kept.iter().map(|&i| ideal.0[i]).collect()))
    }
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn radical_of(n: u64) -> u64 {
    prime_factors(n).into_iter().product()
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[u64]) -> fmt::Result {
    if v.len() == 1 {
        return write!(f, "{}", v[0]);
    }
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        write_tuple(f, &self.0)?;
        write!(f, "]")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}
