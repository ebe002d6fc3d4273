//! Sparse multivariate polynomials over the generic rings R and R̃.
//!
//! A [`GenericRing`] is determined by the matrix size `n` and an `extended`
//! flag: its variables are the skew entries `c_{ij}` (i < j), the rectangle
//! entries `u_{kl}` (k = 1..3, l = 1..n), and, when extended, the doubling
//! parameters `a0..a3`. Variables are totally ordered
//! `c12 < c13 < ... < c_{n-1,n} < u11 < ... < u3n < a0 < a1 < a2 < a3`
//! and monomials are compared in graded lexicographic order with respect to
//! that variable order. [`Poly`] keeps its terms strictly decreasing with no
//! zero coefficients, so equal polynomials have identical representations.
//!
//! Coefficients are exact arbitrary-precision integers or residues modulo a
//! fixed prime `p` with 2^60 < p < 2^62; the domain travels with each value
//! and mixing domains is an error.
//!
//! Grading: `c` and `u` variables have degree 1. The doubling parameters are
//! weighted by parity — odd n: `deg a0 = 2`, `deg ai = 1`; even n:
//! `deg a0 = 1`, `deg ai = 2` — which makes every constructed matrix entry
//! and doubled generator homogeneous.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};

/// Largest prime below 2^62, the default verification modulus.
pub const DEFAULT_MODULUS: u64 = 4_611_686_018_427_387_847;

/// Default number of randomized trials for probabilistic certificates.
pub const DEFAULT_TRIALS: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

/// Compact ring identity carried by every polynomial and matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSig {
    n: u8,
    extended: bool,
}

impl RingSig {
    pub fn n(&self) -> u32 {
        self.n as u32
    }

    pub fn extended(&self) -> bool {
        self.extended
    }

    pub fn parity(&self) -> Parity {
        if self.n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn num_vars(&self) -> usize {
        let n = self.n as usize;
        n * (n - 1) / 2 + 3 * n + if self.extended { 4 } else { 0 }
    }
}

/// A ring variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// Skew entry `c_{ij}`, 1 <= i < j <= n.
    C(u8, u8),
    /// Rectangle entry `u_{kl}`, k in 1..=3, l in 1..=n.
    U(u8, u8),
    /// Doubling parameter `a_s`, s in 0..=3.
    Alpha(u8),
}

impl Var {
    pub fn name(&self) -> String {
        use alloc::format;
        match self {
            Var::C(i, j) => format!("c{i}{j}"),
            Var::U(k, l) => format!("u{k}{l}"),
            Var::Alpha(s) => format!("a{s}"),
        }
    }
}

/// Descriptor of the polynomial ring R (or R̃ when extended).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericRing {
    sig: RingSig,
}

impl GenericRing {
    /// A ring needs n >= 3; exact constructions are guarded at n <= 9
    /// downstream, the ring itself allows any single-digit-index n.
    pub fn new(n: u32, extended: bool) -> Result<Self> {
        if !(3..=9).contains(&n) {
            return Err(Error::UnsupportedN { n });
        }
        Ok(GenericRing {
            sig: RingSig {
                n: n as u8,
                extended,
            },
        })
    }

    pub fn sig(&self) -> RingSig {
        self.sig
    }

    pub fn n(&self) -> u32 {
        self.sig.n()
    }

    pub fn parity(&self) -> Parity {
        self.sig.parity()
    }

    pub fn extended(&self) -> bool {
        self.sig.extended()
    }

    pub fn num_vars(&self) -> usize {
        self.sig.num_vars()
    }

    /// The extended ring with the same n.
    pub fn extend(&self) -> GenericRing {
        GenericRing {
            sig: RingSig {
                n: self.sig.n,
                extended: true,
            },
        }
    }

    /// The non-extended ring with the same n.
    pub fn base(&self) -> GenericRing {
        GenericRing {
            sig: RingSig {
                n: self.sig.n,
                extended: false,
            },
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let n = self.sig.n;
        let mut out = Vec::with_capacity(self.num_vars());
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(Var::C(i, j));
            }
        }
        for k in 1..=3u8 {
            for l in 1..=n {
                out.push(Var::U(k, l));
            }
        }
        if self.sig.extended {
            for s in 0..4u8 {
                out.push(Var::Alpha(s));
            }
        }
        out
    }

    pub fn var_index(&self, v: Var) -> Result<usize> {
        let n = self.sig.n as usize;
        match v {
            Var::C(i, j) => {
                let (i, j) = (i as usize, j as usize);
                if !(1 <= i && i < j && j <= n) {
                    return Err(Error::Invalid("c index out of range".to_owned()));
                }
                // variables c_{i,i+1}..c_{i,n} start after the first i-1 runs
                Ok((i - 1) * n - i * (i - 1) / 2 + (j - i - 1))
            }
            Var::U(k, l) => {
                let (k, l) = (k as usize, l as usize);
                if !(1..=3).contains(&k) || !(1..=n).contains(&l) {
                    return Err(Error::Invalid("u index out of range".to_owned()));
                }
                Ok(n * (n - 1) / 2 + (k - 1) * n + (l - 1))
            }
            Var::Alpha(s) => {
                if !self.sig.extended || s > 3 {
                    return Err(Error::Invalid("alpha outside extended ring".to_owned()));
                }
                Ok(n * (n - 1) / 2 + 3 * n + s as usize)
            }
        }
    }

    pub fn var_at(&self, index: usize) -> Var {
        let n = self.sig.n as usize;
        let nc = n * (n - 1) / 2;
        if index < nc {
            let mut rest = index;
            for i in 1..=n {
                let run = n - i;
                if rest < run {
                    return Var::C(i as u8, (i + 1 + rest) as u8);
                }
                rest -= run;
            }
            unreachable!()
        } else if index < nc + 3 * n {
            let off = index - nc;
            Var::U((off / n + 1) as u8, (off % n + 1) as u8)
        } else {
            Var::Alpha((index - nc - 3 * n) as u8)
        }
    }

    /// Weighted degree of the variable at `index`.
    pub fn degree_of(&self, index: usize) -> u32 {
        match self.var_at(index) {
            Var::C(..) | Var::U(..) => 1,
            Var::Alpha(s) => match (self.parity(), s) {
                (Parity::Odd, 0) => 2,
                (Parity::Odd, _) => 1,
                (Parity::Even, 0) => 1,
                (Parity::Even, _) => 2,
            },
        }
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.variables().iter().map(Var::name).collect()
    }
}

fn ring_of(sig: RingSig) -> GenericRing {
    GenericRing { sig }
}

/// Coefficient domain tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Exact arbitrary-precision integers.
    Int,
    /// The prime field with the given modulus.
    Fp(u64),
}

// ---------------------------------------------------------------------------
// monomials
// ---------------------------------------------------------------------------

pub(crate) type Expo = Box<[u16]>;

/// Graded lexicographic comparison: total degree first, ties broken by the
/// exponent of the largest variable (last index) downward.
pub(crate) fn cmp_mono(a: &[u16], b: &[u16]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn mono_mul(a: &[u16], b: &[u16]) -> Expo {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_div(a: &[u16], b: &[u16]) -> Expo {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(PartialEq, Eq)]
struct MonoKey(Expo);

impl Ord for MonoKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_mono(&self.0, &other.0)
    }
}

impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial in canonical form: terms strictly
/// decreasing in the monomial order, no zero coefficients, empty terms
/// list iff zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    sig: RingSig,
    domain: Domain,
    terms: Vec<(BigInt, Expo)>,
}

impl Poly {
    pub fn zero(ring: &GenericRing, domain: Domain) -> Poly {
        Poly {
            sig: ring.sig(),
            domain,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &GenericRing, domain: Domain, value: i64) -> Poly {
        let mut p = Poly::zero(ring, domain);
        let c = normalize_coeff(BigInt::from(value), domain);
        if !c.is_zero() {
            p.terms
                .push((c, vec![0u16; ring.num_vars()].into_boxed_slice()));
        }
        p
    }

    pub fn one(ring: &GenericRing, domain: Domain) -> Poly {
        Poly::constant(ring, domain, 1)
    }

    pub fn variable(ring: &GenericRing, v: Var) -> Result<Poly> {
        let idx = ring.var_index(v)?;
        let mut expo = vec![0u16; ring.num_vars()];
        expo[idx] = 1;
        Ok(Poly {
            sig: ring.sig(),
            domain: Domain::Int,
            terms: vec![(BigInt::one(), expo.into_boxed_slice())],
        })
    }

    /// Builds from raw terms; sorts, merges and drops zeros.
    pub fn from_terms(
        ring: &GenericRing,
        domain: Domain,
        terms: impl IntoIterator<Item = (BigInt, Vec<u16>)>,
    ) -> Result<Poly> {
        let nv = ring.num_vars();
        let mut map: BTreeMap<MonoKey, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            if e.len() != nv {
                return Err(Error::Invalid("exponent vector length mismatch".to_owned()));
            }
            let c = normalize_coeff(c, domain);
            if c.is_zero() {
                continue;
            }
            let key = MonoKey(e.into_boxed_slice());
            let entry = map.entry(key).or_insert_with(BigInt::zero);
            *entry = normalize_coeff(core::mem::take(entry) + c, domain);
        }
        let mut out = Vec::with_capacity(map.len());
        for (MonoKey(e), c) in map.into_iter().rev() {
            if !c.is_zero() {
                out.push((c, e));
            }
        }
        let p = Poly {
            sig: ring.sig(),
            domain,
            terms: out,
        };
        debug_assert!(p.check_canonical());
        Ok(p)
    }

    pub fn sig(&self) -> RingSig {
        self.sig
    }

    pub fn ring(&self) -> GenericRing {
        ring_of(self.sig)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &[u16])> {
        self.terms.iter().map(|(c, e)| (c, e.as_ref()))
    }

    fn check_compat(&self, other: &Poly) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::RingMismatch);
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// Canonical-form invariant: strictly decreasing monomials, no zeros.
    pub fn check_canonical(&self) -> bool {
        self.terms.iter().all(|(c, _)| !c.is_zero())
            && self
                .terms
                .windows(2)
                .all(|w| cmp_mono(&w[0].1, &w[1].1) == Ordering::Greater)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compat(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match cmp_mono(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = normalize_coeff(&self.terms[i].0 + &other.terms[j].0, self.domain);
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        let p = Poly {
            sig: self.sig,
            domain: self.domain,
            terms: out,
        };
        debug_assert!(p.check_canonical());
        Ok(p)
    }

    pub fn neg(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| (normalize_coeff(-c, self.domain), e.clone()))
            .collect();
        Poly {
            sig: self.sig,
            domain: self.domain,
            terms,
        }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compat(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly {
                sig: self.sig,
                domain: self.domain,
                terms: Vec::new(),
            });
        }
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut map: BTreeMap<MonoKey, BigInt> = BTreeMap::new();
        for (ca, ea) in &a.terms {
            for (cb, eb) in &b.terms {
                let key = MonoKey(mono_mul(ea, eb));
                let entry = map.entry(key).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        let mut out = Vec::with_capacity(map.len());
        for (MonoKey(e), c) in map.into_iter().rev() {
            let c = normalize_coeff(c, self.domain);
            if !c.is_zero() {
                out.push((c, e));
            }
        }
        let p = Poly {
            sig: self.sig,
            domain: self.domain,
            terms: out,
        };
        debug_assert!(p.check_canonical());
        Ok(p)
    }

    pub fn scale(&self, k: i64) -> Poly {
        if k == 0 {
            return Poly {
                sig: self.sig,
                domain: self.domain,
                terms: Vec::new(),
            };
        }
        let kk = BigInt::from(k);
        let terms = self
            .terms
            .iter()
            .filter_map(|(c, e)| {
                let c = normalize_coeff(c * &kk, self.domain);
                (!c.is_zero()).then(|| (c, e.clone()))
            })
            .collect();
        Poly {
            sig: self.sig,
            domain: self.domain,
            terms,
        }
    }

    fn leading(&self) -> Option<(&BigInt, &Expo)> {
        self.terms.first().map(|(c, e)| (c, e))
    }

    /// Leading coefficient under the canonical monomial order.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(c, _)| c)
    }

    /// Exact polynomial quotient: returns q with q * b = self.
    ///
    /// Standard leading-term division; fails with [`Error::DivisionNotExact`]
    /// when no quotient exists in the ring.
    pub fn exact_div(&self, b: &Poly) -> Result<Poly> {
        self.check_compat(b)?;
        if b.is_zero() {
            return Err(Error::DivisionNotExact);
        }
        let (bl_c, bl_e) = b.leading().unwrap();
        let mut rem = self.clone();
        let mut q_terms: Vec<(BigInt, Expo)> = Vec::new();
        while let Some((rl_c, rl_e)) = rem.leading() {
            if !mono_divides(bl_e, rl_e) {
                return Err(Error::DivisionNotExact);
            }
            let coeff = match self.domain {
                Domain::Int => {
                    let (q, r) = num_integer::div_rem(rl_c.clone(), bl_c.clone());
                    if !r.is_zero() {
                        return Err(Error::DivisionNotExact);
                    }
                    q
                }
                Domain::Fp(p) => {
                    let field = PrimeField::new(p)?;
                    let inv = field.inv(bigint_mod_u64(bl_c, p))?;
                    BigInt::from(field.mul(bigint_mod_u64(rl_c, p), inv))
                }
            };
            let mono = mono_div(rl_e, bl_e);
            let t = Poly {
                sig: self.sig,
                domain: self.domain,
                terms: vec![(coeff.clone(), mono.clone())],
            };
            rem = rem.sub(&t.mul(b)?)?;
            q_terms.push((coeff, mono));
        }
        // terms were produced in strictly decreasing order
        let q = Poly {
            sig: self.sig,
            domain: self.domain,
            terms: q_terms,
        };
        debug_assert!(q.check_canonical());
        Ok(q)
    }

    /// Polynomial square root with integer coefficients.
    ///
    /// Newton-style peeling from the leading term; the result is normalized
    /// to a positive leading coefficient and the square is re-checked before
    /// returning.
    pub fn sqrt(&self) -> Result<Poly> {
        if self.domain != Domain::Int {
            return Err(Error::DomainMismatch);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (lc, le) = self.leading().unwrap();
        if lc.is_negative() || le.iter().any(|&e| !e.is_multiple_of(2)) {
            return Err(Error::NotAPerfectSquare);
        }
        let root = lc.sqrt();
        if &root * &root != *lc {
            return Err(Error::NotAPerfectSquare);
        }
        let half: Expo = le.iter().map(|&e| e / 2).collect();
        let mut s = Poly {
            sig: self.sig,
            domain: Domain::Int,
            terms: vec![(root, half)],
        };
        loop {
            let r = self.sub(&s.mul(&s)?)?;
            if r.is_zero() {
                break;
            }
            let (rc, re) = r.leading().unwrap();
            let (sc, se) = s.leading().unwrap();
            let two_sc = sc * 2;
            if !mono_divides(se, re) {
                return Err(Error::NotAPerfectSquare);
            }
            let (qc, qr) = num_integer::div_rem(rc.clone(), two_sc);
            if !qr.is_zero() {
                return Err(Error::NotAPerfectSquare);
            }
            // each step strictly lowers the remainder's leading monomial
            let mono = mono_div(re, se);
            let t = Poly {
                sig: self.sig,
                domain: Domain::Int,
                terms: vec![(qc, mono)],
            };
            s = s.add(&t)?;
        }
        if s.leading_coeff().map(Signed::is_negative).unwrap_or(false) {
            s = s.neg();
        }
        // mandatory final check
        if s.mul(&s)? != *self {
            return Err(Error::NotAPerfectSquare);
        }
        Ok(s)
    }

    /// Weighted total degree; `None` is the -infinity sentinel of the zero
    /// polynomial.
    pub fn degree(&self) -> Option<u32> {
        let ring = self.ring();
        self.terms
            .iter()
            .map(|(_, e)| weighted_degree(&ring, e))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let ring = self.ring();
        let mut it = self.terms.iter().map(|(_, e)| weighted_degree(&ring, e));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Ring-homomorphism evaluation at a full assignment over F_p.
    pub fn evaluate(&self, field: &PrimeField, point: &[u64]) -> Result<u64> {
        let nv = self.sig.num_vars();
        if point.len() != nv {
            return Err(Error::MissingAssignment {
                expected: nv,
                got: point.len(),
            });
        }
        if let Domain::Fp(p) = self.domain {
            if p != field.modulus() {
                return Err(Error::DomainMismatch);
            }
        }
        let mut acc = 0u64;
        for (c, e) in &self.terms {
            let mut v = bigint_mod_u64(c, field.modulus());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    v = field.mul(v, field.pow(point[i], exp as u64));
                }
            }
            acc = field.add(acc, v);
        }
        Ok(acc)
    }

    /// Reinterprets a base-ring polynomial in the extended ring.
    pub fn promote(&self, target: &GenericRing) -> Result<Poly> {
        if self.sig.extended() || !target.extended() || self.sig.n() != target.n() {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| {
                let mut v = e.to_vec();
                v.extend_from_slice(&[0, 0, 0, 0]);
                (c.clone(), v.into_boxed_slice())
            })
            .collect();
        Ok(Poly {
            sig: target.sig(),
            domain: self.domain,
            terms,
        })
    }

    /// Integer polynomial reduced into the prime field.
    pub fn reduce_mod(&self, p: u64) -> Result<Poly> {
        if self.domain != Domain::Int {
            return Err(Error::DomainMismatch);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(c, e)| {
                let r = bigint_mod_u64(c, p);
                (r != 0).then(|| (BigInt::from(r), e.clone()))
            })
            .collect();
        Ok(Poly {
            sig: self.sig,
            domain: Domain::Fp(p),
            terms,
        })
    }
}

pub(crate) fn weighted_degree(ring: &GenericRing, expo: &[u16]) -> u32 {
    expo.iter()
        .enumerate()
        .map(|(i, &e)| e as u32 * ring.degree_of(i))
        .sum()
}

fn normalize_coeff(c: BigInt, domain: Domain) -> BigInt {
    match domain {
        Domain::Int => c,
        Domain::Fp(p) => BigInt::from(bigint_mod_u64(&c, p)),
    }
}

pub(crate) fn bigint_mod_u64(c: &BigInt, p: u64) -> u64 {
    let m = c % BigInt::from(p);
    if m.is_negative() {
        (m + BigInt::from(p)).to_u64().unwrap()
    } else {
        m.to_u64().unwrap()
    }
}

impl fmt::Display for Poly {
    /// Canonical textual form: terms joined by " + " / " - ", each term
    /// `coeff*var^e*...` with variables in canonical order (unit
    /// coefficients and unit exponents elided).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ring = self.ring();
        for (k, (c, e)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", ring.var_at(i).name())?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// prime field
// ---------------------------------------------------------------------------

/// Arithmetic in Z/p for a fixed odd prime p < 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p == 2 {
            return Err(Error::NotPrime { modulus: p });
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, ov) = a.overflowing_add(b);
        if ov || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Invalid("inverse of zero".to_owned()));
        }
        Ok(self.pow(a, self.p - 2))
    }
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Modulus plus seed; the same pair reproduces identical random points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFieldConfig {
    pub modulus: u64,
    pub seed: u64,
}

impl Default for PrimeFieldConfig {
    fn default() -> Self {
        PrimeFieldConfig {
            modulus: DEFAULT_MODULUS,
            seed: 0,
        }
    }
}

impl PrimeFieldConfig {
    pub fn new(modulus: u64, seed: u64) -> Result<Self> {
        PrimeField::new(modulus)?;
        Ok(PrimeFieldConfig { modulus, seed })
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.modulus)
    }

    pub fn sampler(&self) -> Result<PointSampler> {
        Ok(PointSampler {
            field: self.field()?,
            rng: ChaCha12Rng::seed_from_u64(self.seed),
        })
    }
}

/// Deterministic uniform sampler of points in [0, p)^k.
pub struct PointSampler {
    field: PrimeField,
    rng: ChaCha12Rng,
}

impl PointSampler {
    /// Uniform residue via rejection sampling.
    pub fn residue(&mut self) -> u64 {
        let p = self.field.modulus();
        let zone = u64::MAX - u64::MAX % p;
        loop {
            let r = self.rng.next_u64();
            if r < zone {
                return r % p;
            }
        }
    }

    pub fn point(&mut self, num_vars: usize) -> Vec<u64> {
        (0..num_vars).map(|_| self.residue()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> GenericRing {
        GenericRing::new(3, false).unwrap()
    }

    fn var(ring: &GenericRing, v: Var) -> Poly {
        Poly::variable(ring, v).unwrap()
    }

    #[test]
    fn variable_census() {
        let r = GenericRing::new(5, false).unwrap();
        assert_eq!(r.num_vars(), 10 + 15);
        let rx = GenericRing::new(5, true).unwrap();
        assert_eq!(rx.num_vars(), 29);
        for (i, v) in rx.variables().into_iter().enumerate() {
            assert_eq!(rx.var_index(v).unwrap(), i);
            assert_eq!(rx.var_at(i), v);
        }
    }

    #[test]
    fn ring_too_small() {
        assert!(matches!(
            GenericRing::new(2, false),
            Err(Error::UnsupportedN { n: 2 })
        ));
    }

    #[test]
    fn add_identity() {
        let r = ring3();
        let p = var(&r, Var::C(1, 2));
        let z = Poly::zero(&r, Domain::Int);
        assert_eq!(p.add(&z).unwrap(), p);
    }

    #[test]
    fn mul_square() {
        let r = ring3();
        let c12 = var(&r, Var::C(1, 2));
        let sq = c12.mul(&c12).unwrap();
        assert_eq!(sq.num_terms(), 1);
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(alloc::format!("{sq}"), "c12^2");
    }

    #[test]
    fn difference_of_squares() {
        let r = ring3();
        let c12 = var(&r, Var::C(1, 2));
        let u11 = var(&r, Var::U(1, 1));
        let prod = c12.add(&u11).unwrap().mul(&c12.sub(&u11).unwrap()).unwrap();
        let expect = c12.mul(&c12).unwrap().sub(&u11.mul(&u11).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_divide_roundtrip_and_error() {
        let r = ring3();
        let a = var(&r, Var::C(1, 2)).add(&var(&r, Var::U(1, 1))).unwrap();
        let b = var(&r, Var::C(2, 3))
            .add(&Poly::constant(&r, Domain::Int, 7))
            .unwrap();
        let q = a.mul(&b).unwrap().exact_div(&b).unwrap();
        assert_eq!(q, a);
        assert_eq!(
            var(&r, Var::C(1, 2)).exact_div(&var(&r, Var::U(1, 1))),
            Err(Error::DivisionNotExact)
        );
    }

    #[test]
    fn divide_difference_of_squares() {
        let r = ring3();
        let c12 = var(&r, Var::C(1, 2));
        let u11 = var(&r, Var::U(1, 1));
        let num = c12.mul(&c12).unwrap().sub(&u11.mul(&u11).unwrap()).unwrap();
        let den = c12.add(&u11).unwrap();
        assert_eq!(num.exact_div(&den).unwrap(), c12.sub(&u11).unwrap());
    }

    #[test]
    fn sqrt_roundtrip_and_error() {
        let r = ring3();
        let c12 = var(&r, Var::C(1, 2));
        assert_eq!(c12.mul(&c12).unwrap().sqrt().unwrap(), c12);
        let s = c12.add(&var(&r, Var::U(1, 1))).unwrap();
        assert_eq!(s.mul(&s).unwrap().sqrt().unwrap(), s);
        // sign normalization: sqrt((-s)^2) is the same +s
        assert_eq!(s.neg().mul(&s.neg()).unwrap().sqrt().unwrap(), s);
        assert_eq!(c12.sqrt(), Err(Error::NotAPerfectSquare));
    }

    #[test]
    fn evaluate_is_homomorphism_spot() {
        let r = ring3();
        let field = PrimeField::new(DEFAULT_MODULUS).unwrap();
        let c12 = var(&r, Var::C(1, 2));
        let two = c12.add(&c12).unwrap();
        let mut pt = vec![0u64; r.num_vars()];
        pt[0] = 3;
        assert_eq!(two.evaluate(&field, &pt).unwrap(), 6);
        assert_eq!(
            Poly::zero(&r, Domain::Int).evaluate(&field, &pt).unwrap(),
            0
        );
    }

    #[test]
    fn evaluate_missing_assignment() {
        let r = ring3();
        let c12 = var(&r, Var::C(1, 2));
        let field = PrimeField::new(DEFAULT_MODULUS).unwrap();
        assert!(matches!(
            c12.evaluate(&field, &[1, 2, 3]),
            Err(Error::MissingAssignment { .. })
        ));
    }

    #[test]
    fn domain_and_ring_mismatch() {
        let r = ring3();
        let r5 = GenericRing::new(5, false).unwrap();
        let a = var(&r, Var::C(1, 2));
        let b = var(&r5, Var::C(1, 2));
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
        let fp = a.reduce_mod(97).unwrap();
        assert_eq!(a.add(&fp), Err(Error::DomainMismatch));
    }

    #[test]
    fn zero_degree_sentinel() {
        let r = ring3();
        assert_eq!(Poly::zero(&r, Domain::Int).degree(), None);
        assert!(Poly::zero(&r, Domain::Int).is_homogeneous());
    }

    #[test]
    fn alpha_weights_by_parity() {
        let odd = GenericRing::new(5, true).unwrap();
        let a0 = odd.var_index(Var::Alpha(0)).unwrap();
        let a1 = odd.var_index(Var::Alpha(1)).unwrap();
        assert_eq!(odd.degree_of(a0), 2);
        assert_eq!(odd.degree_of(a1), 1);
        let even = GenericRing::new(4, true).unwrap();
        let a0 = even.var_index(Var::Alpha(0)).unwrap();
        let a1 = even.var_index(Var::Alpha(1)).unwrap();
        assert_eq!(even.degree_of(a0), 1);
        assert_eq!(even.degree_of(a1), 2);
    }

    #[test]
    fn default_modulus_is_prime_in_range() {
        assert!(is_prime_u64(DEFAULT_MODULUS));
        let p = DEFAULT_MODULUS;
        assert!(p > 1 << 60 && p < 1 << 62);
        assert!(!is_prime_u64(DEFAULT_MODULUS + 2));
    }

    #[test]
    fn sampler_is_reproducible() {
        let cfg = PrimeFieldConfig::new(DEFAULT_MODULUS, 42).unwrap();
        let mut s1 = cfg.sampler().unwrap();
        let mut s2 = cfg.sampler().unwrap();
        assert_eq!(s1.point(8), s2.point(8));
    }

    #[test]
    fn display_canonical_form() {
        let r = ring3();
        let p = var(&r, Var::U(1, 1))
            .mul(&var(&r, Var::C(2, 3)).neg())
            .unwrap()
            .add(&var(&r, Var::C(1, 2)).scale(3))
            .unwrap();
        assert_eq!(alloc::format!("{p}"), "-c23*u11 + 3*c12");
    }
}
