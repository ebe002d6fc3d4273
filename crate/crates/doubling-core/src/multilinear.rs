//! Polynomial matrices, Pfaffians with omitted index sets, and symbolic
//! minors via fraction-free elimination.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{Domain, GenericRing, Poly, PrimeField, RingSig, Var};

/// Rectangular matrix of polynomials over one generic ring, with optional
/// free-module labels for its source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    pub source: Option<String>,
    pub target: Option<String>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<PolyMatrix> {
        if entries.len() != rows * cols || entries.is_empty() {
            return Err(Error::Invalid("entry count != rows*cols".to_owned()));
        }
        let sig = entries[0].sig();
        let domain = entries[0].domain();
        if entries.iter().any(|e| e.sig() != sig) {
            return Err(Error::RingMismatch);
        }
        if entries.iter().any(|e| e.domain() != domain) {
            return Err(Error::DomainMismatch);
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
            source: None,
            target: None,
        })
    }

    pub fn zero(ring: &GenericRing, domain: Domain, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(ring, domain); rows * cols],
            source: None,
            target: None,
        }
    }

    pub fn labeled(mut self, source: &str, target: &str) -> PolyMatrix {
        self.source = Some(source.to_owned());
        self.target = Some(target.to_owned());
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn sig(&self) -> RingSig {
        self.entries[0].sig()
    }

    pub fn domain(&self) -> Domain {
        self.entries[0].domain()
    }

    pub fn at(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Poly) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Poly::neg).collect(),
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let ring = self.entries[0].ring();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Poly::zero(&ring, self.domain());
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(other.at(k, c))?)?;
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(self.rows, other.cols, entries)
    }

    /// Horizontal concatenation [self | right].
    pub fn hstack(&self, right: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != right.rows {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (right.rows, right.cols),
            });
        }
        let mut entries = Vec::with_capacity((self.cols + right.cols) * self.rows);
        for r in 0..self.rows {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
            entries.extend_from_slice(&right.entries[r * right.cols..(r + 1) * right.cols]);
        }
        PolyMatrix::new(self.rows, self.cols + right.cols, entries)
    }

    /// Vertical concatenation [self; bottom].
    pub fn vstack(&self, bottom: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != bottom.cols {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (bottom.rows, bottom.cols),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&bottom.entries);
        PolyMatrix::new(self.rows + bottom.rows, self.cols, entries)
    }

    pub fn promote(&self, target: &GenericRing) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.promote(target))
            .collect::<Result<Vec<_>>>()?;
        let mut m = PolyMatrix::new(self.rows, self.cols, entries)?;
        m.source = self.source.clone();
        m.target = self.target.clone();
        Ok(m)
    }

    /// Entry-wise evaluation into a numeric matrix over F_p.
    pub fn evaluate(&self, field: &PrimeField, point: &[u64]) -> Result<FpMatrix> {
        let mut data = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            data.push(e.evaluate(field, point)?);
        }
        Ok(FpMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            if !self.at(i, i).is_zero() {
                return false;
            }
            for j in (i + 1)..self.cols {
                if *self.at(i, j) != self.at(j, i).neg() {
                    return false;
                }
            }
        }
        true
    }
}

/// Strictly increasing list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<u32>,
}

impl IndexSet {
    pub fn new(indices: impl IntoIterator<Item = u32>) -> Result<IndexSet> {
        let indices: Vec<u32> = indices.into_iter().collect();
        if indices.is_empty() {
            return Ok(IndexSet { indices });
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid(
                    "index set must be strictly increasing".to_owned(),
                ));
            }
        }
        if indices[0] == 0 {
            return Err(Error::Invalid("indices are 1-based".to_owned()));
        }
        Ok(IndexSet { indices })
    }

    pub fn empty() -> IndexSet {
        IndexSet {
            indices: Vec::new(),
        }
    }

    pub fn range(from: u32, to: u32) -> IndexSet {
        IndexSet {
            indices: (from..=to).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.indices.iter().copied()
    }

    pub fn check_bounds(&self, bound: u32) -> Result<()> {
        match self.indices.last() {
            Some(&m) if m > bound => Err(Error::IndexOutOfBounds { index: m, bound }),
            _ => Ok(()),
        }
    }
}

/// The generic skew-symmetric matrix C of the ring: entry (i,j) is `c_{ij}`
/// for i < j, its negation below the diagonal, zero on the diagonal.
pub fn generic_skew(ring: &GenericRing) -> PolyMatrix {
    let n = ring.n() as usize;
    let mut m = PolyMatrix::zero(ring, Domain::Int, n, n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            let v = Poly::variable(ring, Var::C(i as u8, j as u8)).unwrap();
            m.set(i - 1, j - 1, v.clone());
            m.set(j - 1, i - 1, v.neg());
        }
    }
    m.labeled("F", "F*")
}

/// The generic 3 x n matrix U of the ring.
pub fn generic_rect(ring: &GenericRing) -> PolyMatrix {
    let n = ring.n() as usize;
    let mut m = PolyMatrix::zero(ring, Domain::Int, 3, n);
    for k in 1..=3usize {
        for l in 1..=n {
            m.set(
                k - 1,
                l - 1,
                Poly::variable(ring, Var::U(k as u8, l as u8)).unwrap(),
            );
        }
    }
    m.labeled("F", "G*")
}

/// Pfaffian of a skew-symmetric matrix restricted to the indices not listed
/// in `omit`, by recursive expansion along the first retained row.
///
/// Conventions: Pf of the empty matrix is 1; an odd number of retained
/// indices yields 0.
pub fn pfaffian(m: &PolyMatrix, omit: &IndexSet) -> Result<Poly> {
    if !m.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    if m.rows() > 32 {
        // retained subsets are memoized as u32 bitmasks
        return Err(Error::Invalid("pfaffian limited to 32 rows".into()));
    }
    omit.check_bounds(m.rows() as u32)?;
    let retained: Vec<usize> = (1..=m.rows() as u32)
        .filter(|i| !omit.contains(*i))
        .map(|i| i as usize - 1)
        .collect();
    let ring = m.entries()[0].ring();
    let mut memo: BTreeMap<u32, Poly> = BTreeMap::new();
    Ok(pf_rec(m, &ring, &retained, &mut memo))
}

fn pf_rec(
    m: &PolyMatrix,
    ring: &GenericRing,
    retained: &[usize],
    memo: &mut BTreeMap<u32, Poly>,
) -> Poly {
    if !retained.len().is_multiple_of(2) {
        return Poly::zero(ring, m.domain());
    }
    if retained.is_empty() {
        return Poly::one(ring, m.domain());
    }
    let key: u32 = retained.iter().map(|&i| 1u32 << i).sum();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let first = retained[0];
    let mut acc = Poly::zero(ring, m.domain());
    for (t, &j) in retained[1..].iter().enumerate() {
        let entry = m.at(first, j);
        if entry.is_zero() {
            continue;
        }
        let sub: Vec<usize> = retained[1..].iter().copied().filter(|&x| x != j).collect();
        let tail = pf_rec(m, ring, &sub, memo);
        let term = entry.mul(&tail).unwrap();
        acc = if t % 2 == 0 {
            acc.add(&term).unwrap()
        } else {
            acc.sub(&term).unwrap()
        };
    }
    memo.insert(key, acc.clone());
    acc
}

/// Determinant of the square submatrix selected by `rows` x `cols`.
///
/// Cofactor expansion for sizes <= 4, Bareiss fraction-free elimination with
/// exact division above.
pub fn minor(m: &PolyMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<Poly> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(Error::NonSquareSelection);
    }
    rows.check_bounds(m.rows() as u32)?;
    cols.check_bounds(m.cols() as u32)?;
    let sel: Vec<Vec<&Poly>> = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| m.at(r as usize - 1, c as usize - 1))
                .collect()
        })
        .collect();
    let ring = m.entries()[0].ring();
    if sel.len() <= 4 {
        Ok(det_cofactor(&ring, m.domain(), &sel))
    } else {
        det_bareiss(&ring, m.domain(), &sel)
    }
}

fn det_cofactor(ring: &GenericRing, domain: Domain, m: &[Vec<&Poly>]) -> Poly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(ring, domain);
    for (j, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let sub: Vec<Vec<&Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| *e)
                    .collect()
            })
            .collect();
        let cof = top.mul(&det_cofactor(ring, domain, &sub)).unwrap();
        acc = if j % 2 == 0 {
            acc.add(&cof).unwrap()
        } else {
            acc.sub(&cof).unwrap()
        };
    }
    acc
}

/// One-step Bareiss: work[i][j] <- (piv*work[i][j] - work[i][k]*work[k][j]) / prev_piv.
/// All divisions are exact by the Sylvester identity.
fn det_bareiss(ring: &GenericRing, domain: Domain, sel: &[Vec<&Poly>]) -> Result<Poly> {
    let k = sel.len();
    let mut work: Vec<Vec<Poly>> = sel
        .iter()
        .map(|row| row.iter().map(|e| (*e).clone()).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = Poly::one(ring, domain);
    for step in 0..k - 1 {
        if work[step][step].is_zero() {
            let swap = (step + 1..k).find(|&r| !work[r][step].is_zero());
            match swap {
                Some(r) => {
                    work.swap(step, r);
                    sign = -sign;
                }
                None => return Ok(Poly::zero(ring, domain)),
            }
        }
        let piv = work[step][step].clone();
        for i in step + 1..k {
            for j in step + 1..k {
                let a = piv.mul(&work[i][j])?;
                let b = work[i][step].mul(&work[step][j])?;
                work[i][j] = a.sub(&b)?.exact_div(&prev)?;
            }
            work[i][step] = Poly::zero(ring, domain);
        }
        prev = piv;
    }
    Ok(work[k - 1][k - 1].scale(sign))
}

/// Numeric determinants of an evaluated submatrix at each point, over F_p.
pub fn minor_at_points(
    m: &PolyMatrix,
    rows: &IndexSet,
    cols: &IndexSet,
    field: &PrimeField,
    points: &[Vec<u64>],
) -> Result<Vec<u64>> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(Error::NonSquareSelection);
    }
    rows.check_bounds(m.rows() as u32)?;
    cols.check_bounds(m.cols() as u32)?;
    let mut out = Vec::with_capacity(points.len());
    for pt in points {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.iter() {
            for c in cols.iter() {
                data.push(m.at(r as usize - 1, c as usize - 1).evaluate(field, pt)?);
            }
        }
        let sub = FpMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        };
        out.push(sub.determinant(field));
    }
    Ok(out)
}

/// Dense numeric matrix over a prime field.
#[derive(Debug, Clone)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn mul(&self, field: &PrimeField, other: &FpMatrix) -> FpMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut data = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    data[idx] = field.add(data[idx], field.mul(a, other.at(k, c)));
                }
            }
        }
        FpMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.at(r, c));
            }
        }
        FpMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn determinant(&self, field: &PrimeField) -> u64 {
        debug_assert_eq!(self.rows, self.cols);
        let k = self.rows;
        let mut w = self.data.clone();
        let mut det = 1u64;
        for col in 0..k {
            let piv = (col..k).find(|&r| w[r * k + col] != 0);
            let piv = match piv {
                Some(p) => p,
                None => return 0,
            };
            if piv != col {
                for j in 0..k {
                    w.swap(piv * k + j, col * k + j);
                }
                det = field.neg(det);
            }
            let pv = w[col * k + col];
            det = field.mul(det, pv);
            let inv = field.inv(pv).unwrap();
            for r in col + 1..k {
                let f = field.mul(w[r * k + col], inv);
                if f == 0 {
                    continue;
                }
                for j in col..k {
                    let sub = field.mul(f, w[col * k + j]);
                    w[r * k + j] = field.sub(w[r * k + j], sub);
                }
            }
        }
        det
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut w = self.data.clone();
        let mut rank = 0usize;
        for col in 0..cols {
            let piv = (rank..rows).find(|&r| w[r * cols + col] != 0);
            let piv = match piv {
                Some(p) => p,
                None => continue,
            };
            if piv != rank {
                for j in 0..cols {
                    w.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = field.inv(w[rank * cols + col]).unwrap();
            for r in rank + 1..rows {
                let f = field.mul(w[r * cols + col], inv);
                if f == 0 {
                    continue;
                }
                for j in col..cols {
                    let sub = field.mul(f, w[rank * cols + j]);
                    w[r * cols + j] = field.sub(w[r * cols + j], sub);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeFieldConfig, DEFAULT_MODULUS};
    use alloc::format;

    #[test]
    fn generic_skew_shape_and_symmetry() {
        let r = GenericRing::new(5, false).unwrap();
        let c = generic_skew(&r);
        for i in 0..5 {
            assert!(c.at(i, i).is_zero());
        }
        let r4 = GenericRing::new(4, false).unwrap();
        let c4 = generic_skew(&r4);
        assert_eq!(*c4.at(2, 0), c4.at(0, 2).neg());
        assert!(c4.is_skew_symmetric());
    }

    #[test]
    fn pfaffian_small_cases() {
        let r = GenericRing::new(4, false).unwrap();
        let c = generic_skew(&r);
        // full 4x4: c12*c34 - c13*c24 + c14*c23
        let pf = pfaffian(&c, &IndexSet::empty()).unwrap();
        assert_eq!(format!("{pf}"), "c12*c34 - c13*c24 + c14*c23");
        // empty Pfaffian
        let pf0 = pfaffian(&c, &IndexSet::range(1, 4)).unwrap();
        assert_eq!(pf0, Poly::one(&r, Domain::Int));
        // odd retained size vanishes
        let pf1 = pfaffian(&c, &IndexSet::new([1]).unwrap()).unwrap();
        assert!(pf1.is_zero());
        // retained 2x2 block
        let pf2 = pfaffian(&c, &IndexSet::new([3, 4]).unwrap()).unwrap();
        assert_eq!(format!("{pf2}"), "c12");
    }

    #[test]
    fn pfaffian_rejects_non_skew() {
        let r = GenericRing::new(3, false).unwrap();
        let u = generic_rect(&r);
        let sq = PolyMatrix::new(3, 3, u.entries().to_vec()).unwrap();
        assert_eq!(
            pfaffian(&sq, &IndexSet::empty()),
            Err(Error::NotSkewSymmetric)
        );
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        for n in [2usize, 4, 6] {
            // embed a generic n x n skew block inside the smallest legal ring
            let rn = GenericRing::new(n.max(3) as u32, false).unwrap();
            let c = generic_skew(&rn);
            let take = IndexSet::range(1, n as u32);
            let omit = IndexSet::new((n as u32 + 1)..=rn.n()).unwrap();
            let pf = pfaffian(&c, &omit).unwrap();
            let det = minor(&c, &take, &take).unwrap();
            assert_eq!(pf.mul(&pf).unwrap(), det);
        }
    }

    #[test]
    fn minor_examples() {
        let r = GenericRing::new(3, false).unwrap();
        let u = generic_rect(&r);
        let one = minor(
            &u,
            &IndexSet::new([2]).unwrap(),
            &IndexSet::new([3]).unwrap(),
        )
        .unwrap();
        assert_eq!(format!("{one}"), "u23");
        let two = minor(
            &u,
            &IndexSet::new([1, 2]).unwrap(),
            &IndexSet::new([1, 2]).unwrap(),
        )
        .unwrap();
        assert_eq!(format!("{two}"), "u11*u22 - u12*u21");
    }

    #[test]
    fn minor_errors() {
        let r = GenericRing::new(3, false).unwrap();
        let u = generic_rect(&r);
        assert_eq!(
            minor(
                &u,
                &IndexSet::new([1, 2]).unwrap(),
                &IndexSet::new([1]).unwrap()
            ),
            Err(Error::NonSquareSelection)
        );
        assert!(matches!(
            minor(
                &u,
                &IndexSet::new([4]).unwrap(),
                &IndexSet::new([1]).unwrap()
            ),
            Err(Error::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn minor_is_multilinear_in_rows() {
        let r = GenericRing::new(3, false).unwrap();
        let u = generic_rect(&r);
        let full = IndexSet::range(1, 3);
        let det = minor(&u, &full, &full).unwrap();
        let mut scaled = u.clone();
        let f = Poly::variable(&r, Var::C(1, 2)).unwrap();
        for c in 0..3 {
            scaled.set(1, c, u.at(1, c).mul(&f).unwrap());
        }
        let det2 = minor(&scaled, &full, &full).unwrap();
        assert_eq!(det2, det.mul(&f).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor_on_5x5() {
        // 5x5 skew determinant: nontrivial cancellation exercise for Bareiss
        let r = GenericRing::new(5, false).unwrap();
        let c = generic_skew(&r);
        let full = IndexSet::range(1, 5);
        let det5 = minor(&c, &full, &full).unwrap();
        assert!(det5.is_zero()); // odd skew matrices are singular
    }

    #[test]
    fn minor_at_points_matches_symbolic() {
        let r = GenericRing::new(3, false).unwrap();
        let u = generic_rect(&r);
        let rows = IndexSet::range(1, 3);
        let cols = IndexSet::range(1, 3);
        let sym = minor(&u, &rows, &cols).unwrap();
        let cfg = PrimeFieldConfig::new(DEFAULT_MODULUS, 7).unwrap();
        let field = cfg.field().unwrap();
        let mut sampler = cfg.sampler().unwrap();
        let points: Vec<Vec<u64>> = (0..20).map(|_| sampler.point(r.num_vars())).collect();
        let vals = minor_at_points(&u, &rows, &cols, &field, &points).unwrap();
        for (pt, v) in points.iter().zip(vals) {
            assert_eq!(sym.evaluate(&field, pt).unwrap(), v);
        }
        let z = PolyMatrix::zero(&r, Domain::Int, 3, 3);
        let zero_vals = minor_at_points(&z, &rows, &cols, &field, &points).unwrap();
        assert!(zero_vals.iter().all(|&v| v == 0));
    }

    #[test]
    fn fp_rank_and_det() {
        let field = PrimeField::new(97).unwrap();
        let zero = FpMatrix {
            rows: 2,
            cols: 3,
            data: vec![0; 6],
        };
        assert_eq!(zero.rank(&field), 0);
        let id = FpMatrix {
            rows: 3,
            cols: 3,
            data: vec![1, 0, 0, 0, 1, 0, 0, 0, 1],
        };
        assert_eq!(id.determinant(&field), 1);
        assert_eq!(id.rank(&field), 3);
    }
}
