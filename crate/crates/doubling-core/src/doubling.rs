//! Generic doubling: the map of complexes lifting the contraction of the
//! equivariant generators, and the mapping cone yielding the codimension-4
//! Gorenstein resolution.
//!
//! The lift psi1 is uniquely determined (within entries linear in the
//! doubling parameters with u-linear first block) by the two lifting
//! identities d1*psi1 = psi0*d3^t and d2*psi1^t + psi1*d2^t = 0; the tables
//! below freeze that unique solution per parity. Both identities are
//! re-verified exactly on every build and a failure aborts loudly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::aci::AciResolution;
use crate::error::{Error, Result};
use crate::multilinear::PolyMatrix;
use crate::ring::{Domain, GenericRing, Parity, Poly, Var};
use crate::verify::{ChainComplex, ComplexKind};

/// First-block coefficients: (row, u-row t, alpha index s) -> sign of the
/// summand u_{t,j} * a_s in entry (row, j).
const FIRST_ODD: [(usize, u8, u8, i64); 6] = [
    (1, 2, 3, -1),
    (1, 3, 2, 1),
    (2, 1, 3, 1),
    (2, 3, 1, -1),
    (3, 1, 2, -1),
    (3, 2, 1, 1),
];

const FIRST_EVEN: [(usize, u8, u8, i64); 6] = [
    (0, 1, 3, 1),
    (0, 2, 2, -1),
    (0, 3, 1, 1),
    (1, 3, 0, -1),
    (2, 2, 0, 1),
    (3, 1, 0, -1),
];

/// Right-block coefficients: (row, column offset t0, alpha index s) -> sign
/// of a_s in entry (row, n + t0).
const RIGHT_ODD: [(usize, usize, u8, i64); 6] = [
    (0, 0, 1, -1),
    (0, 1, 2, -1),
    (0, 2, 3, -1),
    (1, 0, 0, 1),
    (2, 1, 0, 1),
    (3, 2, 0, 1),
];

const RIGHT_EVEN: [(usize, usize, u8, i64); 6] = [
    (1, 0, 2, 1),
    (1, 1, 3, 1),
    (2, 0, 1, -1),
    (2, 2, 3, 1),
    (3, 1, 1, -1),
    (3, 2, 2, -1),
];

/// The doubled (mapping cone) resolution data.
#[derive(Debug, Clone)]
pub struct DoublingCone {
    pub ring: GenericRing,
    /// Base resolution promoted to the extended ring.
    pub base: AciResolution,
    pub psi0: PolyMatrix,
    pub psi1: PolyMatrix,
    pub delta1: PolyMatrix,
    pub delta2: PolyMatrix,
    pub delta3: PolyMatrix,
    pub delta4: PolyMatrix,
    /// Generators of the doubled ideal: x1..x4 then g1..gn.
    pub ideal_i: Vec<Poly>,
}

fn check_rings(ring: &GenericRing, base: &AciResolution) -> Result<()> {
    if !ring.extended() || base.ring.extended() || ring.n() != base.ring.n() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// The 1 x n row (g1 .. gn): g_j contracts the doubling parameters against
/// column j of the equivariant block: g_j = sum over s of a_s times the
/// (s, j) entry of d2.
pub fn build_psi0(ring: &GenericRing, base: &AciResolution) -> Result<PolyMatrix> {
    check_rings(ring, base)?;
    let n = ring.n() as usize;
    let d2 = base.d2.promote(ring)?;
    let mut entries = Vec::with_capacity(n);
    for j in 0..n {
        let mut g = Poly::zero(ring, Domain::Int);
        for s in 0..4u8 {
            let a = Poly::variable(ring, Var::Alpha(s))?;
            g = g.add(&a.mul(d2.at(s as usize, j))?)?;
        }
        entries.push(g);
    }
    Ok(PolyMatrix::new(1, n, entries)?.labeled("F~", "R~"))
}

/// The 4 x (n+3) lift of psi0 one step up, from the frozen sign tables.
/// Verifies both lifting identities exactly before returning.
pub fn build_psi1(ring: &GenericRing, base: &AciResolution) -> Result<PolyMatrix> {
    check_rings(ring, base)?;
    let n = ring.n() as usize;
    let (first, right) = match ring.parity() {
        Parity::Odd => (&FIRST_ODD, &RIGHT_ODD),
        Parity::Even => (&FIRST_EVEN, &RIGHT_EVEN),
    };
    let mut m = PolyMatrix::zero(ring, Domain::Int, 4, n + 3);
    for &(row, t, s, sign) in first {
        let a = Poly::variable(ring, Var::Alpha(s))?;
        for j in 1..=n {
            let u = Poly::variable(ring, Var::U(t, j as u8))?;
            let term = u.mul(&a)?.scale(sign);
            m.set(row, j - 1, m.at(row, j - 1).add(&term)?);
        }
    }
    for &(row, t0, s, sign) in right {
        let a = Poly::variable(ring, Var::Alpha(s))?.scale(sign);
        m.set(row, n + t0, m.at(row, n + t0).add(&a)?);
    }
    let m = m.labeled(
        "F~+G~",
        match ring.parity() {
            Parity::Odd => "R~+G~",
            Parity::Even => "G~*+R~",
        },
    );

    // lifting identity 1: d1*psi1 = psi0*d3^t
    let base_x = base.promote(ring)?;
    let psi0 = build_psi0(ring, base)?;
    let lhs = base_x.d1.mul(&m)?;
    let rhs = psi0.mul(&base_x.d3.transpose())?;
    if lhs != rhs {
        return Err(Error::LiftingIdentity(format!(
            "d1*psi1 != psi0*d3^t for n={n}"
        )));
    }
    // lifting identity 2: d2*psi1^t + psi1*d2^t = 0
    let s1 = base_x.d2.mul(&m.transpose())?;
    let s2 = m.mul(&base_x.d2.transpose())?;
    let mut sum = PolyMatrix::zero(ring, Domain::Int, 4, 4);
    for r in 0..4 {
        for c in 0..4 {
            sum.set(r, c, s1.at(r, c).add(s2.at(r, c))?);
        }
    }
    if !sum.is_zero() {
        return Err(Error::LiftingIdentity(format!(
            "d2*psi1^t + psi1*d2^t != 0 for n={n}"
        )));
    }
    Ok(m)
}

/// Assembles the mapping cone and verifies every consecutive product
/// exactly; any nonzero block aborts with the offending identity named.
pub fn build_cone(ring: &GenericRing, base: &AciResolution) -> Result<DoublingCone> {
    check_rings(ring, base)?;
    let n = ring.n() as usize;
    let big = n + 3;
    let base_x = base.promote(ring)?;
    let psi0 = build_psi0(ring, base)?;
    let psi1 = build_psi1(ring, base)?;
    let zero_top = PolyMatrix::zero(ring, Domain::Int, n, big);
    let zero_mid = PolyMatrix::zero(ring, Domain::Int, big, n);

    let delta1 = base_x.d1.hstack(&psi0)?;
    let delta2 = base_x
        .d2
        .hstack(&psi1)?
        .vstack(&zero_top.hstack(&base_x.d3.transpose().neg())?)?;
    let delta3 = base_x
        .d3
        .hstack(&psi1.transpose().neg())?
        .vstack(&zero_mid.hstack(&base_x.d2.transpose().neg())?)?;
    let delta4 = psi0
        .transpose()
        .neg()
        .vstack(&base_x.d1.transpose().neg())?;

    for (name, a, b) in [
        ("delta1*delta2", &delta1, &delta2),
        ("delta2*delta3", &delta2, &delta3),
        ("delta3*delta4", &delta3, &delta4),
    ] {
        if !a.mul(b)?.is_zero() {
            return Err(Error::ComplexCondition(format!("{name} != 0 for n={n}")));
        }
    }

    let mut ideal_i = base_x.generators.to_vec();
    ideal_i.extend(psi0.entries().iter().cloned());

    Ok(DoublingCone {
        ring: *ring,
        base: base_x,
        psi0,
        psi1,
        delta1,
        delta2,
        delta3,
        delta4,
        ideal_i,
    })
}

impl DoublingCone {
    pub fn to_complex(&self) -> ChainComplex {
        ChainComplex {
            name: format!("doubled cone n={}", self.ring.n()),
            n: self.ring.n(),
            parity: self.ring.parity(),
            kind: ComplexKind::Cone,
            maps: vec![
                self.delta1.clone(),
                self.delta2.clone(),
                self.delta3.clone(),
                self.delta4.clone(),
            ],
        }
    }
}
