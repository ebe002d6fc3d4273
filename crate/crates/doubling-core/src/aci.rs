//! The generic almost complete intersection data: the four ideal generators
//! and the three differentials of the length-3 resolution, for both parities.
//!
//! Entry formulas are index-subset sums with the per-summand sign computed as
//! the inversion count of the concatenated index sequence, the ledger row
//! signs (+, -, +, -), and the parity-specific right-hand blocks below. The
//! complex conditions d1*d2 = 0 and d2*d3 = 0 are asserted exactly during
//! construction; a violation signals a sign-ledger bug and is never returned
//! silently.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::ROW_SIGNS;
use crate::multilinear::{generic_rect, generic_skew, minor, pfaffian, IndexSet, PolyMatrix};
use crate::ring::{Domain, GenericRing, Parity, Poly};
use crate::verify::{ChainComplex, ComplexKind};

/// Right-hand 4x3 block of d2: entry (row, t) is `Some((k, sign))` for
/// sign * x_k, or `None` for zero. Derived once from d1*d2 = 0 and
/// d2*d3 = 0; n-independent per parity.
const RIGHT_ODD: [[Option<(usize, i64)>; 3]; 4] = [
    [None, None, None],
    [None, Some((4, 1)), Some((3, -1))],
    [Some((4, -1)), None, Some((2, 1))],
    [Some((3, 1)), Some((2, -1)), None],
];

const RIGHT_EVEN: [[Option<(usize, i64)>; 3]; 4] = [
    [Some((4, -1)), Some((3, 1)), Some((2, -1))],
    [None, None, Some((1, 1))],
    [None, Some((1, -1)), None],
    [Some((1, 1)), None, None],
];

/// Minimal free resolution data of the generic almost complete intersection.
#[derive(Debug, Clone)]
pub struct AciResolution {
    pub ring: GenericRing,
    pub parity: Parity,
    /// The ideal generators x1..x4.
    pub generators: [Poly; 4],
    pub d1: PolyMatrix,
    pub d2: PolyMatrix,
    pub d3: PolyMatrix,
}

/// Sign of the permutation sorting `seq`, as (-1)^inversions.
fn seq_sign(seq: &[u32]) -> i64 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn k_subsets(pool: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > pool.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < pool.len() - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn guard(ring: &GenericRing) -> Result<()> {
    if ring.extended() {
        return Err(Error::Invalid(
            "base resolution lives over the non-extended ring".into(),
        ));
    }
    // Pfaffian subset counts grow factorially; the interesting range is small
    if ring.n() > 9 {
        return Err(Error::UnsupportedN { n: ring.n() });
    }
    Ok(())
}

/// The four generators x1..x4 of the ideal.
///
/// Odd n: x1 pairs 3x3 minors of U with complementary Pfaffians; x_(1+t)
/// pairs row t of U with the one-index-omitted Pfaffians. Even n: x1 is the
/// full Pfaffian; x2, x3, x4 pair 2x2 minors of U on row pairs (1,2), (1,3),
/// (2,3) with complementary Pfaffians.
pub fn build_generators(ring: &GenericRing) -> Result<[Poly; 4]> {
    guard(ring)?;
    let n = ring.n();
    let all: Vec<u32> = (1..=n).collect();
    let c = generic_skew(ring);
    let u = generic_rect(ring);
    let pf_omitting =
        |omit: &[u32]| -> Result<Poly> { pfaffian(&c, &IndexSet::new(omit.iter().copied())?) };
    match ring.parity() {
        Parity::Odd => {
            let mut x1 = Poly::zero(ring, Domain::Int);
            for jkl in k_subsets(&all, 3) {
                let rest: Vec<u32> = all.iter().copied().filter(|x| !jkl.contains(x)).collect();
                let mut seq = rest.clone();
                seq.extend_from_slice(&jkl);
                let delta = minor(&u, &IndexSet::range(1, 3), &IndexSet::new(jkl.clone())?)?;
                let term = delta.mul(&pf_omitting(&jkl)?)?.scale(seq_sign(&seq));
                x1 = x1.add(&term)?;
            }
            let mut xs = vec![x1];
            for t in 1..=3u32 {
                let mut xt = Poly::zero(ring, Domain::Int);
                for i in 1..=n {
                    let rest: Vec<u32> = all.iter().copied().filter(|&x| x != i).collect();
                    let mut seq = rest.clone();
                    seq.push(i);
                    let uv = Poly::variable(ring, crate::ring::Var::U(t as u8, i as u8))?;
                    let term = uv.mul(&pf_omitting(&[i])?)?.scale(seq_sign(&seq));
                    xt = xt.add(&term)?;
                }
                xs.push(xt);
            }
            Ok([xs.remove(0), xs.remove(0), xs.remove(0), xs.remove(0)])
        }
        Parity::Even => {
            let x1 = pfaffian(&c, &IndexSet::empty())?;
            let mut xs = vec![x1];
            for ab in [[1u32, 2], [1, 3], [2, 3]] {
                let mut xt = Poly::zero(ring, Domain::Int);
                for jk in k_subsets(&all, 2) {
                    let rest: Vec<u32> = all.iter().copied().filter(|x| !jk.contains(x)).collect();
                    let mut seq = rest.clone();
                    seq.extend_from_slice(&jk);
                    let delta = minor(&u, &IndexSet::new(ab)?, &IndexSet::new(jk.clone())?)?;
                    let term = delta.mul(&pf_omitting(&jk)?)?.scale(seq_sign(&seq));
                    xt = xt.add(&term)?;
                }
                xs.push(xt);
            }
            Ok([xs.remove(0), xs.remove(0), xs.remove(0), xs.remove(0)])
        }
    }
}

/// Left 4 x n block of d2 from the index-subset entry formulas (ledger row
/// signs applied).
fn left_block(ring: &GenericRing) -> Result<PolyMatrix> {
    let n = ring.n();
    let all: Vec<u32> = (1..=n).collect();
    let c = generic_skew(ring);
    let u = generic_rect(ring);
    let mut entries = vec![Poly::zero(ring, Domain::Int); 4 * n as usize];
    for i in 1..=n {
        let col = (i - 1) as usize;
        let rest: Vec<u32> = all.iter().copied().filter(|&x| x != i).collect();
        match ring.parity() {
            Parity::Odd => {
                let mut seq = vec![i];
                seq.extend_from_slice(&rest);
                let w = pfaffian(&c, &IndexSet::new([i])?)?.scale(seq_sign(&seq));
                entries[col] = w.scale(ROW_SIGNS[0]);
                for gamma in 1..=3u32 {
                    let ab: Vec<u32> = (1..=3).filter(|&t| t != gamma).collect();
                    let mut acc = Poly::zero(ring, Domain::Int);
                    for jk in k_subsets(&rest, 2) {
                        let mid: Vec<u32> =
                            rest.iter().copied().filter(|x| !jk.contains(x)).collect();
                        let mut seq = vec![i];
                        seq.extend_from_slice(&mid);
                        seq.extend_from_slice(&jk);
                        let delta =
                            minor(&u, &IndexSet::new(ab.clone())?, &IndexSet::new(jk.clone())?)?;
                        let pf = pfaffian(&c, &IndexSet::new(sorted3(i, jk[0], jk[1]))?)?;
                        acc = acc.add(&delta.mul(&pf)?.scale(seq_sign(&seq)))?;
                    }
                    entries[gamma as usize * n as usize + col] =
                        acc.scale(ROW_SIGNS[gamma as usize]);
                }
            }
            Parity::Even => {
                let mut acc = Poly::zero(ring, Domain::Int);
                for jkl in k_subsets(&rest, 3) {
                    let mid: Vec<u32> = rest.iter().copied().filter(|x| !jkl.contains(x)).collect();
                    let mut seq = vec![i];
                    seq.extend_from_slice(&mid);
                    seq.extend_from_slice(&jkl);
                    let delta = minor(&u, &IndexSet::range(1, 3), &IndexSet::new(jkl.clone())?)?;
                    let pf = pfaffian(&c, &IndexSet::new(sorted4(i, jkl[0], jkl[1], jkl[2]))?)?;
                    acc = acc.add(&delta.mul(&pf)?.scale(seq_sign(&seq)))?;
                }
                entries[col] = acc.scale(ROW_SIGNS[0]);
                for t in 1..=3u32 {
                    let gamma = 4 - t;
                    let mut acc = Poly::zero(ring, Domain::Int);
                    for &j in &rest {
                        let mid: Vec<u32> = rest.iter().copied().filter(|&x| x != j).collect();
                        let mut seq = vec![i];
                        seq.extend_from_slice(&mid);
                        seq.push(j);
                        let uv = Poly::variable(ring, crate::ring::Var::U(gamma as u8, j as u8))?;
                        let pf = pfaffian(&c, &IndexSet::new(sorted2(i, j))?)?;
                        acc = acc.add(&uv.mul(&pf)?.scale(seq_sign(&seq)))?;
                    }
                    entries[t as usize * n as usize + col] = acc.scale(ROW_SIGNS[t as usize]);
                }
            }
        }
    }
    PolyMatrix::new(4, n as usize, entries)
}

fn sorted2(a: u32, b: u32) -> [u32; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn sorted3(a: u32, b: u32, c: u32) -> [u32; 3] {
    let mut v = [a, b, c];
    v.sort_unstable();
    v
}

fn sorted4(a: u32, b: u32, c: u32, d: u32) -> [u32; 4] {
    let mut v = [a, b, c, d];
    v.sort_unstable();
    v
}

/// Builds the full resolution and verifies the complex conditions exactly.
pub fn build_resolution(ring: &GenericRing) -> Result<AciResolution> {
    let _ = ring.n();
    let generators = build_generators(ring)?;
    let d1 = PolyMatrix::new(1, 4, generators.to_vec())?.labeled(
        match ring.parity() {
            Parity::Odd => "R+G",
            Parity::Even => "G*+R",
        },
        "R",
    );
    let left = left_block(ring)?;
    let table = match ring.parity() {
        Parity::Odd => &RIGHT_ODD,
        Parity::Even => &RIGHT_EVEN,
    };
    let mut right = PolyMatrix::zero(ring, Domain::Int, 4, 3);
    for (r, row) in table.iter().enumerate() {
        for (t, spec) in row.iter().enumerate() {
            if let Some((k, sign)) = spec {
                right.set(r, t, generators[k - 1].scale(*sign));
            }
        }
    }
    let d2 = left
        .hstack(&right)?
        .labeled("F*+G*", d1.source.as_deref().unwrap());
    let d3 = generic_skew(ring)
        .vstack(&generic_rect(ring))?
        .labeled("F", "F*+G*");

    let aci = AciResolution {
        ring: *ring,
        parity: ring.parity(),
        generators,
        d1,
        d2,
        d3,
    };
    aci.verify_complex()?;
    Ok(aci)
}

impl AciResolution {
    /// Exact check of d1*d2 = 0 and d2*d3 = 0.
    pub fn verify_complex(&self) -> Result<()> {
        if !self.d1.mul(&self.d2)?.is_zero() {
            return Err(Error::ComplexCondition(String::from("d1*d2 != 0")));
        }
        if !self.d2.mul(&self.d3)?.is_zero() {
            return Err(Error::ComplexCondition(String::from("d2*d3 != 0")));
        }
        Ok(())
    }

    /// The resolution as a chain complex (d1, d2, d3).
    pub fn to_complex(&self) -> ChainComplex {
        ChainComplex {
            name: format!("aci resolution n={}", self.ring.n()),
            n: self.ring.n(),
            parity: self.parity,
            kind: ComplexKind::Base,
            maps: vec![self.d1.clone(), self.d2.clone(), self.d3.clone()],
        }
    }

    /// The same data over the extended ring.
    pub fn promote(&self, target: &GenericRing) -> Result<AciResolution> {
        if target.n() != self.ring.n() || !target.extended() {
            return Err(Error::RingMismatch);
        }
        Ok(AciResolution {
            ring: *target,
            parity: self.parity,
            generators: [
                self.generators[0].promote(target)?,
                self.generators[1].promote(target)?,
                self.generators[2].promote(target)?,
                self.generators[3].promote(target)?,
            ],
            d1: self.d1.promote(target)?,
            d2: self.d2.promote(target)?,
            d3: self.d3.promote(target)?,
        })
    }
}

/// Witness coefficients (a, b, c) with w_j * x1 = a*x2 + b*x3 + c*x4, read
/// off column j of d2, where w_j is the (1, j) entry. The identity is
/// asserted exactly.
pub fn colon_relation(res: &AciResolution, j: u32) -> Result<(Poly, Poly, Poly)> {
    let n = res.ring.n();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfBounds { index: j, bound: n });
    }
    let col = (j - 1) as usize;
    let a = res.d2.at(1, col).neg();
    let b = res.d2.at(2, col).neg();
    let c = res.d2.at(3, col).neg();
    let lhs = res.d2.at(0, col).mul(&res.generators[0])?;
    let rhs = a
        .mul(&res.generators[1])?
        .add(&b.mul(&res.generators[2])?)?
        .add(&c.mul(&res.generators[3])?)?;
    if lhs != rhs {
        return Err(Error::ComplexCondition(format!(
            "colon relation failed at column {j}"
        )));
    }
    Ok((a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Var;
    use alloc::format;

    #[test]
    fn generators_n4_even_x1_is_pfaffian() {
        let ring = GenericRing::new(4, false).unwrap();
        let [x1, ..] = build_generators(&ring).unwrap();
        assert_eq!(format!("{x1}"), "c12*c34 - c13*c24 + c14*c23");
    }

    #[test]
    fn generators_n3_odd_values() {
        let ring = GenericRing::new(3, false).unwrap();
        let [x1, x2, _, _] = build_generators(&ring).unwrap();
        // x1 is the full 3x3 determinant of U
        let u = generic_rect(&ring);
        let det = minor(&u, &IndexSet::range(1, 3), &IndexSet::range(1, 3)).unwrap();
        assert_eq!(x1, det);
        // x2 = u11*c23 - u12*c13 + u13*c12
        let expect = Poly::variable(&ring, Var::U(1, 1))
            .unwrap()
            .mul(&Poly::variable(&ring, Var::C(2, 3)).unwrap())
            .unwrap()
            .sub(
                &Poly::variable(&ring, Var::U(1, 2))
                    .unwrap()
                    .mul(&Poly::variable(&ring, Var::C(1, 3)).unwrap())
                    .unwrap(),
            )
            .unwrap()
            .add(
                &Poly::variable(&ring, Var::U(1, 3))
                    .unwrap()
                    .mul(&Poly::variable(&ring, Var::C(1, 2)).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(x2, expect);
    }

    #[test]
    fn resolution_shapes() {
        let r3 = GenericRing::new(3, false).unwrap();
        let res = build_resolution(&r3).unwrap();
        assert_eq!((res.d1.rows(), res.d1.cols()), (1, 4));
        assert_eq!((res.d2.rows(), res.d2.cols()), (4, 6));
        assert_eq!((res.d3.rows(), res.d3.cols()), (6, 3));
        let r4 = GenericRing::new(4, false).unwrap();
        let res = build_resolution(&r4).unwrap();
        assert_eq!((res.d1.rows(), res.d1.cols()), (1, 4));
        assert_eq!((res.d2.rows(), res.d2.cols()), (4, 7));
        assert_eq!((res.d3.rows(), res.d3.cols()), (7, 4));
    }

    #[test]
    fn complex_conditions_small() {
        for n in [3u32, 4, 5] {
            let ring = GenericRing::new(n, false).unwrap();
            let res = build_resolution(&ring).unwrap();
            assert!(res.d1.mul(&res.d2).unwrap().is_zero());
            assert!(res.d2.mul(&res.d3).unwrap().is_zero());
        }
    }

    #[test]
    fn d3_is_skew_over_rect_block() {
        let ring = GenericRing::new(5, false).unwrap();
        let res = build_resolution(&ring).unwrap();
        // top block equals C, bottom block equals U
        let c = generic_skew(&ring);
        let u = generic_rect(&ring);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(res.d3.at(i, j), c.at(i, j));
            }
        }
        for t in 0..3 {
            for j in 0..5 {
                assert_eq!(res.d3.at(5 + t, j), u.at(t, j));
            }
        }
    }

    #[test]
    fn colon_relation_small() {
        let r3 = GenericRing::new(3, false).unwrap();
        let res = build_resolution(&r3).unwrap();
        let (a, b, c) = colon_relation(&res, 1).unwrap();
        assert_eq!(a, res.d2.at(1, 0).neg());
        assert_eq!(b, res.d2.at(2, 0).neg());
        assert_eq!(c, res.d2.at(3, 0).neg());
        let r4 = GenericRing::new(4, false).unwrap();
        let res = build_resolution(&r4).unwrap();
        colon_relation(&res, 2).unwrap();
        assert!(colon_relation(&res, 5).is_err());
    }

    #[test]
    fn homogeneity_of_everything() {
        for n in [3u32, 4, 5] {
            let ring = GenericRing::new(n, false).unwrap();
            let res = build_resolution(&ring).unwrap();
            for x in &res.generators {
                assert!(x.is_homogeneous() && !x.is_zero());
            }
            for e in res.d2.entries() {
                assert!(e.is_homogeneous());
            }
        }
    }

    #[test]
    fn guard_rejects_large_and_extended() {
        assert!(GenericRing::new(10, false).is_err());
        let ext = GenericRing::new(5, true).unwrap();
        assert!(build_resolution(&ext).is_err());
    }
}
