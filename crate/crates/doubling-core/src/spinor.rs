//! Hyperbolic column indexing of the middle cone differential, the maximal
//! minors attached to one-per-pair column selections, and extraction and
//! verification of spinor coordinates as square roots of minor / x1.
//!
//! The middle term of the cone splits into two rank-(n+3) blocks, and column
//! i of the first block ([d2; 0]) is hyperbolically paired with column i of
//! the second ([psi1; -d3^t]). A selection takes one column per pair; the
//! label conventions for the distinguished index sets differ by parity:
//! odd n reads label i with a bar as first-block column i, even n reads
//! label i with a bar as the second-block column of pair N+1-i. Either way
//! the admissible selections are exactly those using an odd number of
//! first-block columns, and the selection taking only pair i from the first
//! block has minor g_i^2 * x1 on the default row set.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::doubling::DoublingCone;
use crate::error::{Error, Result};
use crate::multilinear::{generic_skew, minor, pfaffian, FpMatrix, IndexSet};
use crate::ring::{Parity, Poly, PrimeFieldConfig, Var};

/// One-per-pair signed column selection of the middle cone differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorIndex {
    n: u32,
    /// Bar flag per label 1..=N (N = n+3).
    barred: Vec<bool>,
}

impl SpinorIndex {
    /// Builds from the set of barred labels; validates the bar-count parity
    /// (odd for odd n, even for even n).
    pub fn new(n: u32, barred_labels: &[u32]) -> Result<SpinorIndex> {
        let size = n as usize + 3;
        let mut barred = vec![false; size];
        for &l in barred_labels {
            if l == 0 || l as usize > size {
                return Err(Error::InvalidSpinorIndex(format!(
                    "label {l} outside 1..={size}"
                )));
            }
            if barred[l as usize - 1] {
                return Err(Error::InvalidSpinorIndex(format!("label {l} repeated")));
            }
            barred[l as usize - 1] = true;
        }
        let idx = SpinorIndex { n, barred };
        idx.check_parity()?;
        Ok(idx)
    }

    /// Builds from signed labels (+l unbarred, -l barred); every label must
    /// appear exactly once, so a repeated pair choice is an error.
    pub fn from_signed(n: u32, signed: &[i64]) -> Result<SpinorIndex> {
        let size = n as usize + 3;
        if signed.len() != size {
            return Err(Error::InvalidSpinorIndex(format!(
                "selection has {} entries, expected {size}",
                signed.len()
            )));
        }
        let mut seen = vec![false; size];
        let mut barred = vec![false; size];
        for &s in signed {
            let l = s.unsigned_abs() as usize;
            if s == 0 || l > size {
                return Err(Error::InvalidSpinorIndex(format!("label {s} out of range")));
            }
            if seen[l - 1] {
                return Err(Error::InvalidSpinorIndex(format!(
                    "pair {l} selected twice"
                )));
            }
            seen[l - 1] = true;
            barred[l - 1] = s < 0;
        }
        let idx = SpinorIndex { n, barred };
        idx.check_parity()?;
        Ok(idx)
    }

    fn check_parity(&self) -> Result<()> {
        let bars = self.bar_count();
        let ok = match self.parity() {
            Parity::Odd => !bars.is_multiple_of(2),
            Parity::Even => bars.is_multiple_of(2),
        };
        if !ok {
            return Err(Error::InvalidSpinorIndex(format!(
                "bar count {bars} has wrong parity for n={}",
                self.n
            )));
        }
        Ok(())
    }

    fn parity(&self) -> Parity {
        if self.n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of hyperbolic pairs N = n+3.
    pub fn size(&self) -> usize {
        self.barred.len()
    }

    pub fn bar_count(&self) -> usize {
        self.barred.iter().filter(|&&b| b).count()
    }

    pub fn is_barred(&self, label: u32) -> bool {
        self.barred[label as usize - 1]
    }

    /// Pairs drawn from the first block ([d2; 0]); always odd in count.
    pub fn first_block_pairs(&self) -> Vec<u32> {
        let size = self.size() as u32;
        let mut out = Vec::new();
        for l in 1..=size {
            let first = match self.parity() {
                Parity::Odd => self.is_barred(l),
                Parity::Even => !self.is_barred(size + 1 - l),
            };
            if first {
                out.push(l);
            }
        }
        out
    }

    /// Selected 1-based columns of the middle differential, ascending.
    pub fn columns(&self) -> Vec<u32> {
        let size = self.size() as u32;
        let firsts = self.first_block_pairs();
        let mut cols: Vec<u32> = (1..=size)
            .map(|p| if firsts.contains(&p) { p } else { size + p })
            .collect();
        cols.sort_unstable();
        cols
    }
}

impl core::fmt::Display for SpinorIndex {
    /// Textual form: comma list with bars rendered as a trailing apostrophe.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for l in 1..=self.size() as u32 {
            if l > 1 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            if self.is_barred(l) {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

/// The default row set of the distinguished minor families: all rows but the
/// first.
pub fn default_row_set(n: u32) -> IndexSet {
    IndexSet::range(2, n + 4)
}

#[derive(Debug, Clone)]
pub enum SpinorMode {
    Symbolic {
        allow_large: bool,
    },
    Probabilistic {
        trials: u32,
        config: PrimeFieldConfig,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinorValue {
    Symbolic(Poly),
    Points(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorVerdict {
    VerifiedSquare,
    Zero,
    NonzeroUnclassified,
}

/// Verdict of one minor-identity check.
#[derive(Debug, Clone)]
pub struct SpinorReport {
    pub index: SpinorIndex,
    pub minor_value: MinorValue,
    pub verdict: SpinorVerdict,
    /// The certified coordinate (up to sign) when the verdict is
    /// verified-square.
    pub coordinate: Option<Poly>,
    /// Human-readable name of the matched candidate, e.g. "g1".
    pub matched: Option<String>,
    pub trials: Option<u32>,
    pub modulus: Option<u64>,
    pub seed: Option<u64>,
    /// log2 of the per-trial failure bound deg(minor)/p in probabilistic
    /// mode.
    pub per_point_log2_bound: Option<i64>,
}

fn spinor_columns(cone: &DoublingCone, k: &SpinorIndex) -> Result<IndexSet> {
    if k.n() != cone.ring.n() {
        return Err(Error::InvalidSpinorIndex(format!(
            "index built for n={}, cone has n={}",
            k.n(),
            cone.ring.n()
        )));
    }
    IndexSet::new(k.columns())
}

/// The N x N minor of the middle differential on `row_set` and the columns
/// selected by `k`.
pub fn spinor_minor(
    cone: &DoublingCone,
    row_set: &IndexSet,
    k: &SpinorIndex,
    mode: &SpinorMode,
) -> Result<MinorValue> {
    let cols = spinor_columns(cone, k)?;
    if row_set.len() != k.size() {
        return Err(Error::NonSquareSelection);
    }
    match mode {
        SpinorMode::Symbolic { allow_large } => {
            if k.size() >= 8 && !allow_large {
                return Err(Error::SymbolicRefused { size: k.size() });
            }
            Ok(MinorValue::Symbolic(minor(&cone.delta2, row_set, &cols)?))
        }
        SpinorMode::Probabilistic { trials, config } => {
            let field = config.field()?;
            let mut sampler = config.sampler()?;
            let nv = cone.ring.num_vars();
            let points: Vec<Vec<u64>> = (0..(*trials).max(1)).map(|_| sampler.point(nv)).collect();
            Ok(MinorValue::Points(crate::multilinear::minor_at_points(
                &cone.delta2,
                row_set,
                &cols,
                &field,
                &points,
            )?))
        }
    }
}

fn minor_degree_bound(cone: &DoublingCone, row_set: &IndexSet) -> u64 {
    row_set
        .iter()
        .map(|r| {
            (0..cone.delta2.cols())
                .filter_map(|c| cone.delta2.at(r as usize - 1, c).degree())
                .max()
                .unwrap_or(0) as u64
        })
        .sum()
}

/// Checks minor = +-candidate^2 * x1 with one global sign, plus a
/// nonvanishing witness point in probabilistic mode.
pub fn verify_spinor(
    cone: &DoublingCone,
    row_set: &IndexSet,
    k: &SpinorIndex,
    candidate: &Poly,
    mode: &SpinorMode,
) -> Result<SpinorReport> {
    if candidate.sig() != cone.delta2.sig() {
        return Err(Error::RingMismatch);
    }
    let x1 = &cone.base.generators[0];
    match mode {
        SpinorMode::Symbolic { .. } => {
            let value = match spinor_minor(cone, row_set, k, mode)? {
                MinorValue::Symbolic(p) => p,
                MinorValue::Points(_) => unreachable!(),
            };
            let square = candidate.mul(candidate)?.mul(x1)?;
            let verdict = if value.is_zero() {
                SpinorVerdict::Zero
            } else if !candidate.is_zero() && (value == square || value == square.neg()) {
                SpinorVerdict::VerifiedSquare
            } else {
                SpinorVerdict::NonzeroUnclassified
            };
            let coordinate =
                (verdict == SpinorVerdict::VerifiedSquare).then(|| normalize_sign(candidate));
            Ok(SpinorReport {
                index: k.clone(),
                minor_value: MinorValue::Symbolic(value),
                verdict,
                coordinate,
                matched: None,
                trials: None,
                modulus: None,
                seed: None,
                per_point_log2_bound: None,
            })
        }
        SpinorMode::Probabilistic { trials, config } => {
            let field = config.field()?;
            let mut sampler = config.sampler()?;
            let nv = cone.ring.num_vars();
            let trials = (*trials).max(1);
            let points: Vec<Vec<u64>> = (0..trials).map(|_| sampler.point(nv)).collect();
            let cols = spinor_columns(cone, k)?;
            let minors =
                crate::multilinear::minor_at_points(&cone.delta2, row_set, &cols, &field, &points)?;
            let mut plus = true;
            let mut minus = true;
            let mut witness = false;
            for (pt, &mv) in points.iter().zip(&minors) {
                let cv = candidate.evaluate(&field, pt)?;
                let rhs = field.mul(field.mul(cv, cv), x1.evaluate(&field, pt)?);
                if mv != rhs {
                    plus = false;
                }
                if mv != field.neg(rhs) {
                    minus = false;
                }
                if cv != 0 && rhs != 0 {
                    witness = true;
                }
                if !plus && !minus {
                    break;
                }
            }
            let all_zero = minors.iter().all(|&v| v == 0);
            let verdict = if all_zero {
                SpinorVerdict::Zero
            } else if (plus || minus) && witness {
                SpinorVerdict::VerifiedSquare
            } else {
                SpinorVerdict::NonzeroUnclassified
            };
            let coordinate =
                (verdict == SpinorVerdict::VerifiedSquare).then(|| normalize_sign(candidate));
            let deg = minor_degree_bound(cone, row_set);
            Ok(SpinorReport {
                index: k.clone(),
                minor_value: MinorValue::Points(minors),
                verdict,
                coordinate,
                matched: None,
                trials: Some(trials),
                modulus: Some(config.modulus),
                seed: Some(config.seed),
                per_point_log2_bound: Some(ceil_log2(deg.max(1)) - config.modulus.ilog2() as i64),
            })
        }
    }
}

fn ceil_log2(x: u64) -> i64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as i64
    }
}

fn normalize_sign(p: &Poly) -> Poly {
    match p.leading_coeff() {
        Some(c) if c < &num_bigint::BigInt::from(0) => p.neg(),
        _ => p.clone(),
    }
}

/// Recovers s with s^2 * x1 = +-minor; exact division then square root,
/// round-trip asserted.
pub fn extract_spinor(minor_value: &Poly, x1: &Poly) -> Result<Poly> {
    let mut q = minor_value.exact_div(x1)?;
    if let Some(c) = q.leading_coeff() {
        if c < &num_bigint::BigInt::from(0) {
            q = q.neg();
        }
    }
    let s = q.sqrt()?;
    let back = s.mul(&s)?.mul(x1)?;
    if back != *minor_value && back != minor_value.neg() {
        return Err(Error::NotAPerfectSquare);
    }
    Ok(s)
}

/// Iterates every admissible selection (2^(N-1) of them), classifies each
/// minor as zero or nonzero at sampled points, and matches nonzero ones
/// against the natural candidate coordinates: the doubled generators, the
/// parameter-times-generator binomials, and the Pfaffian-times-generator
/// products.
pub fn enumerate_spinors(
    cone: &DoublingCone,
    row_set: &IndexSet,
    trials: u32,
    config: PrimeFieldConfig,
) -> Result<Vec<SpinorReport>> {
    let n = cone.ring.n();
    if !(4..=5).contains(&n) {
        return Err(Error::UnsupportedN { n });
    }
    let size = n as usize + 3;
    let field = config.field()?;
    let mut sampler = config.sampler()?;
    let nv = cone.ring.num_vars();
    let trials = trials.max(1);
    let points: Vec<Vec<u64>> = (0..trials).map(|_| sampler.point(nv)).collect();

    // shared candidate evaluations
    let candidates = candidate_coordinates(cone)?;
    let mut cand_vals: Vec<(String, Vec<u64>)> = Vec::with_capacity(candidates.len());
    for (name, p) in &candidates {
        let vals = points
            .iter()
            .map(|pt| p.evaluate(&field, pt))
            .collect::<Result<Vec<u64>>>()?;
        cand_vals.push((name.clone(), vals));
    }
    let x1 = &cone.base.generators[0];
    let x1_vals = points
        .iter()
        .map(|pt| x1.evaluate(&field, pt))
        .collect::<Result<Vec<u64>>>()?;
    let deg = minor_degree_bound(cone, row_set);

    let mut reports = Vec::new();
    for mask in 0u32..(1 << size) {
        let barred: Vec<u32> = (1..=size as u32)
            .filter(|l| mask >> (l - 1) & 1 == 1)
            .collect();
        let k = match SpinorIndex::new(n, &barred) {
            Ok(k) => k,
            Err(_) => continue, // wrong bar parity
        };
        let cols = spinor_columns(cone, &k)?;
        let minors =
            crate::multilinear::minor_at_points(&cone.delta2, row_set, &cols, &field, &points)?;
        let all_zero = minors.iter().all(|&v| v == 0);
        let mut verdict = SpinorVerdict::Zero;
        let mut matched = None;
        let mut coordinate = None;
        if !all_zero {
            verdict = SpinorVerdict::NonzeroUnclassified;
            'cands: for (ci, (name, vals)) in cand_vals.iter().enumerate() {
                let mut plus = true;
                let mut minus = true;
                let mut witness = false;
                for t in 0..trials as usize {
                    let rhs = field.mul(field.mul(vals[t], vals[t]), x1_vals[t]);
                    if minors[t] != rhs {
                        plus = false;
                    }
                    if minors[t] != field.neg(rhs) {
                        minus = false;
                    }
                    if vals[t] != 0 && rhs != 0 {
                        witness = true;
                    }
                    if !plus && !minus {
                        continue 'cands;
                    }
                }
                if (plus || minus) && witness {
                    verdict = SpinorVerdict::VerifiedSquare;
                    matched = Some(name.clone());
                    coordinate = Some(normalize_sign(&candidates[ci].1));
                    break;
                }
            }
        }
        reports.push(SpinorReport {
            index: k,
            minor_value: MinorValue::Points(minors),
            verdict,
            coordinate,
            matched,
            trials: Some(trials),
            modulus: Some(config.modulus),
            seed: Some(config.seed),
            per_point_log2_bound: Some(ceil_log2(deg.max(1)) - config.modulus.ilog2() as i64),
        });
    }
    Ok(reports)
}

/// Candidate spinor coordinates: g_j, a_i*x_j, a_i*x_j +- a_k*x_l, and
/// Pf(i-hat)*x_j.
fn candidate_coordinates(cone: &DoublingCone) -> Result<Vec<(String, Poly)>> {
    let ring = &cone.ring;
    let n = ring.n();
    let mut out: Vec<(String, Poly)> = Vec::new();
    for (j, g) in cone.psi0.entries().iter().enumerate() {
        out.push((format!("g{}", j + 1), g.clone()));
    }
    let xs = &cone.base.generators;
    let mut singles: Vec<(String, Poly)> = Vec::new();
    for i in 0..4u8 {
        let a = Poly::variable(ring, Var::Alpha(i))?;
        for (j, x) in xs.iter().enumerate() {
            singles.push((format!("a{i}*x{}", j + 1), a.mul(x)?));
        }
    }
    for (p, (np, vp)) in singles.iter().enumerate() {
        for (nq, vq) in singles.iter().skip(p + 1) {
            out.push((format!("{np}+{nq}"), vp.add(vq)?));
            out.push((format!("{np}-{nq}"), vp.sub(vq)?));
        }
    }
    out.extend(singles.iter().cloned());
    let c = generic_skew(ring);
    for i in 1..=n {
        let pf = pfaffian(&c, &IndexSet::new([i])?)?;
        for (j, x) in xs.iter().enumerate() {
            out.push((format!("Pf({i}^)*x{}", j + 1), pf.mul(x)?));
        }
    }
    Ok(out)
}

/// Numeric N x N determinant of the selected columns at one point; exposed
/// for focused checks.
pub fn minor_value_at(
    cone: &DoublingCone,
    row_set: &IndexSet,
    k: &SpinorIndex,
    field: &crate::ring::PrimeField,
    point: &[u64],
) -> Result<u64> {
    let cols = spinor_columns(cone, k)?;
    let mut data = Vec::with_capacity(row_set.len() * cols.len());
    for r in row_set.iter() {
        for c in cols.iter() {
            data.push(
                cone.delta2
                    .at(r as usize - 1, c as usize - 1)
                    .evaluate(field, point)?,
            );
        }
    }
    let m = FpMatrix {
        rows: row_set.len(),
        cols: cols.len(),
        data,
    };
    Ok(m.determinant(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aci::build_resolution;
    use crate::doubling::build_cone;
    use crate::ring::{GenericRing, DEFAULT_MODULUS};
    use alloc::string::ToString;

    fn cone(n: u32) -> DoublingCone {
        let base_ring = GenericRing::new(n, false).unwrap();
        let base = build_resolution(&base_ring).unwrap();
        build_cone(&base_ring.extend(), &base).unwrap()
    }

    fn cfg(seed: u64) -> PrimeFieldConfig {
        PrimeFieldConfig::new(DEFAULT_MODULUS, seed).unwrap()
    }

    #[test]
    fn index_parity_validation() {
        assert!(SpinorIndex::new(5, &[1]).is_ok());
        assert!(SpinorIndex::new(5, &[1, 2]).is_err());
        assert!(SpinorIndex::new(4, &[1, 2]).is_ok());
        assert!(SpinorIndex::new(4, &[1]).is_err());
        assert!(SpinorIndex::new(5, &[9]).is_err());
    }

    #[test]
    fn from_signed_rejects_repeats() {
        let err = SpinorIndex::from_signed(5, &[-1, 1, 3, 4, 5, 6, 7, 8]);
        assert!(matches!(err, Err(Error::InvalidSpinorIndex(_))));
        let ok = SpinorIndex::from_signed(5, &[-1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(ok.bar_count(), 1);
    }

    #[test]
    fn textual_form() {
        let k = SpinorIndex::new(5, &[1]).unwrap();
        assert_eq!(k.to_string(), "1',2,3,4,5,6,7,8");
    }

    #[test]
    fn column_semantics_by_parity() {
        // odd: barred label 1 -> first-block col 1, rest second block
        let k5 = SpinorIndex::new(5, &[1]).unwrap();
        assert_eq!(k5.first_block_pairs(), vec![1]);
        assert_eq!(k5.columns(), vec![1, 10, 11, 12, 13, 14, 15, 16]);
        // even: all barred except label 7 -> first-block pair 1
        let k4 = SpinorIndex::new(4, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(k4.first_block_pairs(), vec![1]);
        assert_eq!(k4.columns(), vec![1, 9, 10, 11, 12, 13, 14]);
    }

    #[test]
    fn distinguished_minor_n4_symbolic() {
        let cone = cone(4);
        let rows = default_row_set(4);
        let k = SpinorIndex::new(4, &[1, 2, 3, 4, 5, 6]).unwrap();
        let value = match spinor_minor(
            &cone,
            &rows,
            &k,
            &SpinorMode::Symbolic { allow_large: false },
        )
        .unwrap()
        {
            MinorValue::Symbolic(p) => p,
            _ => unreachable!(),
        };
        let g1 = &cone.psi0.entries()[0];
        let sq = g1.mul(g1).unwrap().mul(&cone.base.generators[0]).unwrap();
        assert!(value == sq || value == sq.neg());
        let s = extract_spinor(&value, &cone.base.generators[0]).unwrap();
        assert!(s == *g1 || s == g1.neg());
    }

    #[test]
    fn symbolic_refused_for_large() {
        let cone = cone(5);
        let rows = default_row_set(5);
        let k = SpinorIndex::new(5, &[1]).unwrap();
        assert!(matches!(
            spinor_minor(
                &cone,
                &rows,
                &k,
                &SpinorMode::Symbolic { allow_large: false }
            ),
            Err(Error::SymbolicRefused { size: 8 })
        ));
    }

    #[test]
    fn verify_spinor_probabilistic_n5() {
        let cone = cone(5);
        let rows = default_row_set(5);
        let k = SpinorIndex::new(5, &[1]).unwrap();
        let g1 = cone.psi0.entries()[0].clone();
        let mode = SpinorMode::Probabilistic {
            trials: 50,
            config: cfg(11),
        };
        let rep = verify_spinor(&cone, &rows, &k, &g1, &mode).unwrap();
        assert_eq!(rep.verdict, SpinorVerdict::VerifiedSquare);
        // zero candidate against a nonzero minor is not verified
        let zero = Poly::zero(&cone.ring, crate::ring::Domain::Int);
        let rep = verify_spinor(&cone, &rows, &k, &zero, &mode).unwrap();
        assert_ne!(rep.verdict, SpinorVerdict::VerifiedSquare);
    }

    #[test]
    fn enumerate_n4_counts_and_matches() {
        let c = cone(4);
        let rows = default_row_set(4);
        let reports = enumerate_spinors(&c, &rows, 8, cfg(17)).unwrap();
        assert_eq!(reports.len(), 64);
        let g_matches: Vec<&SpinorReport> = reports
            .iter()
            .filter(|r| matches!(&r.matched, Some(m) if m.starts_with('g')))
            .collect();
        assert!(g_matches.len() >= 4);
        for i in 1..=4u32 {
            assert!(g_matches
                .iter()
                .any(|r| r.matched.as_deref() == Some(&alloc::format!("g{i}"))));
        }
    }

    #[test]
    fn extract_spinor_trivial_and_error() {
        let c = cone(4);
        let x1 = &c.base.generators[0];
        let one = extract_spinor(x1, x1).unwrap();
        assert_eq!(one, Poly::one(&c.ring, crate::ring::Domain::Int));
        let x2x1 = c.base.generators[1].mul(x1).unwrap();
        assert_eq!(extract_spinor(&x2x1, x1), Err(Error::NotAPerfectSquare));
    }

    #[test]
    fn extract_roundtrip_on_random_squares() {
        let c = cone(4);
        let x1 = &c.base.generators[0];
        let ring = c.ring;
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let nv = ring.num_vars();
        for _ in 0..50 {
            let mut terms = alloc::vec::Vec::new();
            for _ in 0..1 + next() % 4 {
                let mut expo = alloc::vec![0u16; nv];
                for _ in 0..1 + next() % 3 {
                    expo[(next() % nv as u64) as usize] += 1;
                }
                let coeff = (next() % 9) as i64 - 4;
                terms.push((
                    num_bigint::BigInt::from(if coeff == 0 { 2 } else { coeff }),
                    expo,
                ));
            }
            let s = Poly::from_terms(&ring, crate::ring::Domain::Int, terms).unwrap();
            if s.is_zero() {
                continue;
            }
            let m = s.mul(&s).unwrap().mul(x1).unwrap();
            let back = extract_spinor(&m, x1).unwrap();
            assert!(back == s || back == s.neg());
        }
    }

    #[test]
    fn row_set_size_checked() {
        let cone = cone(4);
        let k = SpinorIndex::new(4, &[1, 2, 3, 4, 5, 6]).unwrap();
        let bad_rows = IndexSet::range(2, 7);
        assert_eq!(
            spinor_minor(
                &cone,
                &bad_rows,
                &k,
                &SpinorMode::Symbolic { allow_large: false }
            ),
            Err(Error::NonSquareSelection)
        );
    }
}
