//! Shuffle combinatorics and the comultiplication route to the equivariant
//! generator matrix.
//!
//! The sign ledger fixed across the crate: raw entries are shuffle sums with
//! the sign of each summand equal to the sign of the permutation splitting
//! the index range, and the four rows of the generator matrix carry the
//! global signs (+, -, +, -). The residual overall sign is normalized so the
//! (1,1) entry has a positive leading coefficient. The same ledger drives the
//! index-subset construction in [`crate::aci`]; the two routes computing the
//! per-summand sign independently (products of shuffle signs here, inversion
//! counts there) is what the cross-module agreement tests exercise.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::multilinear::{generic_skew, minor, pfaffian, IndexSet, PolyMatrix};
use crate::ring::{Domain, GenericRing, Parity, Poly};

pub(crate) const ROW_SIGNS: [i64; 4] = [1, -1, 1, -1];

/// A (r,s)-shuffle: a permutation of {1..r+s} increasing on its first r and
/// last s positions, together with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<u32>,
    pub second: Vec<u32>,
    pub sign: i8,
}

/// All C(r+s, r) shuffles in lexicographic order of the first block.
pub fn shuffles(r: u32, s: u32) -> Result<Vec<Shuffle>> {
    let total = r + s;
    if total > 12 {
        return Err(Error::ShuffleGuard { size: total });
    }
    let mut out = Vec::new();
    let mut first: Vec<u32> = (1..=r).collect();
    loop {
        let second: Vec<u32> = (1..=total).filter(|x| !first.contains(x)).collect();
        // sign = (-1)^{inversions} and every inversion pairs a first-block
        // entry with a smaller second-block entry
        let mut inv = 0u32;
        for &a in &first {
            inv += second.iter().filter(|&&b| b < a).count() as u32;
        }
        out.push(Shuffle {
            first: first.clone(),
            second,
            sign: if inv.is_multiple_of(2) { 1 } else { -1 },
        });
        // next k-combination of {1..total}
        if r == 0 {
            break;
        }
        let mut i = r as usize;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if first[i] < total - (r - 1 - i as u32) {
                first[i] += 1;
                for k in i + 1..r as usize {
                    first[k] = first[k - 1] + 1;
                }
                break;
            }
        }
    }
    Ok(out)
}

/// The 4 x n equivariant generator matrix, assembled from iterated
/// comultiplication shuffle sums (its transpose presents the generators of
/// the dual of the canonical module).
///
/// Row 1 carries the Pfaffian-type entries, rows 2..4 the mixed entries per
/// parity; ledger row signs applied.
pub fn equivariant_phi(ring: &GenericRing) -> Result<PolyMatrix> {
    if ring.extended() {
        return Err(Error::Invalid(
            "equivariant generators live over the non-extended ring".into(),
        ));
    }
    let n = ring.n();
    let c = generic_skew(ring);
    let u = crate::multilinear::generic_rect(ring);
    let outer = shuffles(1, n - 1)?;
    let mut entries = vec![Poly::zero(ring, Domain::Int); 4 * n as usize];

    for sigma in &outer {
        let i = sigma.first[0];
        let rest: Vec<u32> = sigma.second.clone();
        let col = (i - 1) as usize;
        match ring.parity() {
            Parity::Odd => {
                // row 1: Pf with i omitted, sign of sigma
                let w = pfaffian(&c, &IndexSet::new([i])?)?;
                entries[col] = w.scale(sigma.sign as i64 * ROW_SIGNS[0]);
                // rows 2..4: split rest into (n-3, 2); 2x2 minors of U on the
                // complement row pair
                for gamma in 1..=3u32 {
                    let ab: Vec<u32> = (1..=3).filter(|&t| t != gamma).collect();
                    let mut acc = Poly::zero(ring, Domain::Int);
                    for tau in shuffles(n - 3, 2)? {
                        let jk: Vec<u32> =
                            tau.second.iter().map(|&p| rest[(p - 1) as usize]).collect();
                        let omit = sorted([i, jk[0], jk[1]]);
                        let pf = pfaffian(&c, &IndexSet::new(omit)?)?;
                        let delta =
                            minor(&u, &IndexSet::new(ab.clone())?, &IndexSet::new(jk.clone())?)?;
                        let term = delta.mul(&pf)?.scale((sigma.sign * tau.sign) as i64);
                        acc = acc.add(&term)?;
                    }
                    entries[gamma as usize * n as usize + col] =
                        acc.scale(ROW_SIGNS[gamma as usize]);
                }
            }
            Parity::Even => {
                // row 1: split rest into (n-4, 3); 3x3 minors of U
                let mut acc = Poly::zero(ring, Domain::Int);
                for tau in shuffles(n - 4, 3)? {
                    let jkl: Vec<u32> =
                        tau.second.iter().map(|&p| rest[(p - 1) as usize]).collect();
                    let omit = sorted([i, jkl[0], jkl[1], jkl[2]]);
                    let pf = pfaffian(&c, &IndexSet::new(omit)?)?;
                    let delta = minor(&u, &IndexSet::range(1, 3), &IndexSet::new(jkl.clone())?)?;
                    let term = delta.mul(&pf)?.scale((sigma.sign * tau.sign) as i64);
                    acc = acc.add(&term)?;
                }
                entries[col] = acc.scale(ROW_SIGNS[0]);
                // rows 2..4: split rest into (n-2, 1); row t uses u-row 4-t
                for t in 1..=3u32 {
                    let gamma = 4 - t;
                    let mut acc = Poly::zero(ring, Domain::Int);
                    for tau in shuffles(n - 2, 1)? {
                        let j = rest[(tau.second[0] - 1) as usize];
                        let omit = sorted([i, j]);
                        let pf = pfaffian(&c, &IndexSet::new(omit)?)?;
                        let uvar = minor(&u, &IndexSet::new([gamma])?, &IndexSet::new([j])?)?;
                        let term = uvar.mul(&pf)?.scale((sigma.sign * tau.sign) as i64);
                        acc = acc.add(&term)?;
                    }
                    entries[t as usize * n as usize + col] = acc.scale(ROW_SIGNS[t as usize]);
                }
            }
        }
    }
    PolyMatrix::new(4, n as usize, entries)
}

fn sorted<const K: usize>(mut xs: [u32; K]) -> [u32; K] {
    xs.sort_unstable();
    xs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts_and_identity() {
        let s = shuffles(0, 4).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].sign, 1);
        assert!(s[0].first.is_empty());
        assert_eq!(shuffles(2, 2).unwrap().len(), 6);
        assert_eq!(shuffles(4, 0).unwrap().len(), 1);
    }

    #[test]
    fn shuffle_signs_1_2() {
        let s = shuffles(1, 2).unwrap();
        let signs: Vec<i8> = s.iter().map(|x| x.sign).collect();
        assert_eq!(signs, vec![1, -1, 1]);
        assert_eq!(signs.iter().map(|&x| x as i32).sum::<i32>(), 1);
    }

    #[test]
    fn shuffle_guard() {
        assert!(matches!(
            shuffles(7, 6),
            Err(Error::ShuffleGuard { size: 13 })
        ));
    }

    #[test]
    fn shuffle_blocks_increasing() {
        for sh in shuffles(3, 2).unwrap() {
            assert!(sh.first.windows(2).all(|w| w[0] < w[1]));
            assert!(sh.second.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn phi_shapes_and_homogeneity() {
        for n in [3u32, 4, 5, 6] {
            let ring = GenericRing::new(n, false).unwrap();
            let phi = equivariant_phi(&ring).unwrap();
            assert_eq!((phi.rows(), phi.cols()), (4, n as usize));
            for e in phi.entries() {
                assert!(e.is_homogeneous());
            }
        }
    }

    #[test]
    fn phi_even_top_row_degree() {
        // n = 4: row-1 entries are 3x3 minors of U against the empty Pfaffian
        let ring = GenericRing::new(4, false).unwrap();
        let phi = equivariant_phi(&ring).unwrap();
        for c in 0..4 {
            assert_eq!(phi.at(0, c).degree(), Some(3));
        }
    }

    #[test]
    fn phi_rejects_extended_ring() {
        let ring = GenericRing::new(5, true).unwrap();
        assert!(equivariant_phi(&ring).is_err());
    }

    #[test]
    fn phi_leading_sign_normalized() {
        for n in [3u32, 4, 5] {
            let ring = GenericRing::new(n, false).unwrap();
            let phi = equivariant_phi(&ring).unwrap();
            assert!(phi.at(0, 0).leading_coeff().unwrap() > &num_bigint::BigInt::from(0));
        }
    }
}
