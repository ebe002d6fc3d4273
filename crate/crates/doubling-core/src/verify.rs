//! Generic certifiers: composition-to-zero checks, probabilistic rank
//! profiles, randomized polynomial identity testing, and graded ideal
//! membership by exact linear algebra.
//!
//! Exact verdicts are proofs. Probabilistic verdicts carry an upper bound on
//! the failure probability derived from the Schwartz-Zippel lemma: a nonzero
//! polynomial of degree d vanishes at a uniform point of F_p with probability
//! at most d/p. Non-membership is only ever certified in exact mode; prime
//! field results certify membership and refute it only modulo p.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multilinear::{FpMatrix, PolyMatrix};
use crate::ring::{bigint_mod_u64, cmp_mono, Domain, GenericRing, Parity, Poly, PrimeFieldConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    Base,
    Cone,
}

/// Ordered list of composable differentials plus metadata.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub name: String,
    pub n: u32,
    pub parity: Parity,
    pub kind: ComplexKind,
    pub maps: Vec<PolyMatrix>,
}

impl ChainComplex {
    pub fn check_shapes(&self) -> Result<()> {
        for w in self.maps.windows(2) {
            if w[0].cols() != w[1].rows() {
                return Err(Error::ShapeMismatch {
                    left: (w[0].rows(), w[0].cols()),
                    right: (w[1].rows(), w[1].cols()),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Complex,
    Rank,
    Identity,
    Membership,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMode {
    Exact,
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one certifier run; in probabilistic mode (modulus, seed,
/// trials) reproduce the sampled points bit-exactly.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertKind,
    pub target: String,
    pub mode: CertMode,
    pub trials: Option<u32>,
    pub modulus: Option<u64>,
    pub seed: Option<u64>,
    pub verdict: Verdict,
    /// Upper bound on log2 of the failure probability of a probabilistic
    /// pass verdict.
    pub failure_log2_bound: Option<i64>,
    pub wall_time_ms: Option<u64>,
    pub detail: String,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct Stopwatch {
    #[cfg(feature = "std")]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(feature = "std")]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed_ms(&self) -> Option<u64> {
        #[cfg(feature = "std")]
        {
            Some(self.start.elapsed().as_millis() as u64)
        }
        #[cfg(not(feature = "std"))]
        {
            None
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

/// log2 of the Schwartz-Zippel failure bound for `identities` simultaneous
/// degree-<=deg checks at `trials` independent points.
fn sz_log2_bound(deg: u64, p: u64, trials: u32, identities: usize) -> i64 {
    let per_point = ceil_log2(deg) - p.ilog2() as i64;
    ceil_log2(identities.max(1) as u64) + trials as i64 * per_point
}

pub enum CheckMode {
    Exact,
    Probabilistic {
        trials: u32,
        config: PrimeFieldConfig,
    },
}

/// Asserts every consecutive product of differentials is zero, exactly or at
/// sampled points.
pub fn check_complex(cx: &ChainComplex, mode: CheckMode) -> Result<Certificate> {
    cx.check_shapes()?;
    let sw = Stopwatch::start();
    match mode {
        CheckMode::Exact => {
            let mut verdict = Verdict::Pass;
            let mut detail = String::from("all consecutive products vanish");
            for (i, w) in cx.maps.windows(2).enumerate() {
                if !w[0].mul(&w[1])?.is_zero() {
                    verdict = Verdict::Fail;
                    detail = format!("product d{}*d{} is nonzero", i + 1, i + 2);
                    break;
                }
            }
            Ok(Certificate {
                kind: CertKind::Complex,
                target: cx.name.clone(),
                mode: CertMode::Exact,
                trials: None,
                modulus: None,
                seed: None,
                verdict,
                failure_log2_bound: None,
                wall_time_ms: sw.elapsed_ms(),
                detail,
            })
        }
        CheckMode::Probabilistic { trials, config } => {
            let field = config.field()?;
            let mut sampler = config.sampler()?;
            let nv = cx.maps[0].sig().num_vars();
            let mut verdict = Verdict::Pass;
            let mut detail = String::from("all consecutive products vanish at all points");
            'outer: for _ in 0..trials {
                let pt = sampler.point(nv);
                let evals: Vec<FpMatrix> = cx
                    .maps
                    .iter()
                    .map(|m| m.evaluate(&field, &pt))
                    .collect::<Result<_>>()?;
                for (i, w) in evals.windows(2).enumerate() {
                    if !w[0].mul(&field, &w[1]).is_zero() {
                        verdict = Verdict::Fail;
                        detail =
                            format!("product d{}*d{} nonzero at a sampled point", i + 1, i + 2);
                        break 'outer;
                    }
                }
            }
            let deg = cx
                .maps
                .windows(2)
                .map(|w| max_degree(&w[0]) + max_degree(&w[1]))
                .max()
                .unwrap_or(0);
            let bound = (verdict == Verdict::Pass)
                .then(|| sz_log2_bound(deg, field.modulus(), trials, cx.maps.len() - 1));
            Ok(Certificate {
                kind: CertKind::Complex,
                target: cx.name.clone(),
                mode: CertMode::Probabilistic,
                trials: Some(trials),
                modulus: Some(config.modulus),
                seed: Some(config.seed),
                verdict,
                failure_log2_bound: bound,
                wall_time_ms: sw.elapsed_ms(),
                detail,
            })
        }
    }
}

fn max_degree(m: &PolyMatrix) -> u64 {
    m.entries()
        .iter()
        .filter_map(|e| e.degree())
        .max()
        .unwrap_or(0) as u64
}

/// For each differential, the maximum numeric rank over `points` random
/// specializations: a high-probability lower bound for the generic rank,
/// reported alongside the trivial matrix-size upper bound.
pub fn rank_profile(
    cx: &ChainComplex,
    points: u32,
    config: PrimeFieldConfig,
) -> Result<(Vec<usize>, Certificate)> {
    cx.check_shapes()?;
    let sw = Stopwatch::start();
    let field = config.field()?;
    let mut sampler = config.sampler()?;
    let nv = cx.maps[0].sig().num_vars();
    let mut ranks = vec![0usize; cx.maps.len()];
    for _ in 0..points.max(1) {
        let pt = sampler.point(nv);
        for (i, m) in cx.maps.iter().enumerate() {
            let r = m.evaluate(&field, &pt)?.rank(&field);
            ranks[i] = ranks[i].max(r);
        }
    }
    let detail = format!(
        "ranks {:?} with upper bounds {:?}",
        ranks,
        cx.maps
            .iter()
            .map(|m| m.rows().min(m.cols()))
            .collect::<Vec<_>>()
    );
    let cert = Certificate {
        kind: CertKind::Rank,
        target: cx.name.clone(),
        mode: CertMode::Probabilistic,
        trials: Some(points),
        modulus: Some(config.modulus),
        seed: Some(config.seed),
        verdict: Verdict::Pass,
        failure_log2_bound: None,
        wall_time_ms: sw.elapsed_ms(),
        detail,
    };
    Ok((ranks, cert))
}

// ---------------------------------------------------------------------------
// graded membership
// ---------------------------------------------------------------------------

/// All exponent vectors of the ring with the given weighted degree.
pub fn monomials_of_degree(ring: &GenericRing, degree: u32) -> Vec<Vec<u16>> {
    let nv = ring.num_vars();
    let weights: Vec<u32> = (0..nv).map(|i| ring.degree_of(i)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u16; nv];
    fn rec(
        weights: &[u32],
        idx: usize,
        remaining: u32,
        cur: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if idx == weights.len() {
            return;
        }
        let w = weights[idx];
        let maxe = remaining / w;
        for e in 0..=maxe {
            cur[idx] = e as u16;
            rec(weights, idx + 1, remaining - e * w, cur, out);
        }
        cur[idx] = 0;
    }
    rec(&weights, 0, degree, &mut cur, &mut out);
    out
}

pub enum MembershipMode {
    /// Fraction-free elimination over the integers; certifies non-membership.
    Exact,
    /// Elimination over F_p; certifies membership, refutes only modulo p.
    ModP(PrimeFieldConfig),
}

/// Leading-monomial triangular reduction of `row` against `basis` (rows with
/// pairwise distinct leading monomials). Integer rows cross-multiply and are
/// divided by their content.
fn reduce_row(row: Poly, basis: &[Poly]) -> Result<Poly> {
    let mut row = row;
    'outer: loop {
        if row.is_zero() {
            return Ok(row);
        }
        let lm: Vec<u16> = {
            let (_, e) = row.terms().next().unwrap();
            e.to_vec()
        };
        for b in basis {
            let (_, be) = b.terms().next().unwrap();
            if cmp_mono(&lm, be) == core::cmp::Ordering::Equal {
                row = eliminate(&row, b)?;
                continue 'outer;
            }
        }
        return Ok(row);
    }
}

/// row <- lc(b)*row - lc(row)*b, content-normalized (integer domain) or
/// row <- row - lc(row)/lc(b)*b (prime field domain).
fn eliminate(row: &Poly, b: &Poly) -> Result<Poly> {
    match row.domain() {
        Domain::Int => {
            let lr = row.leading_coeff().unwrap().clone();
            let lb = b.leading_coeff().unwrap().clone();
            let g = lr.gcd(&lb);
            let out = scale_big(row, &(&lb / &g))?.sub(&scale_big(b, &(&lr / &g))?)?;
            Ok(divide_content(&out))
        }
        Domain::Fp(p) => {
            let field = crate::ring::PrimeField::new(p)?;
            let lr = bigint_mod_u64(row.leading_coeff().unwrap(), p);
            let lb = bigint_mod_u64(b.leading_coeff().unwrap(), p);
            let f = field.mul(lr, field.inv(lb)?);
            let ring = row.ring();
            let fp = Poly::from_terms(
                &ring,
                Domain::Fp(p),
                [(BigInt::from(f), vec![0u16; ring.num_vars()])],
            )?;
            row.sub(&fp.mul(b)?)
        }
    }
}

fn scale_big(p: &Poly, k: &BigInt) -> Result<Poly> {
    let ring = p.ring();
    let kp = Poly::from_terms(
        &ring,
        p.domain(),
        [(k.clone(), vec![0u16; ring.num_vars()])],
    )?;
    p.mul(&kp)
}

fn divide_content(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = BigInt::zero();
    for (c, _) in p.terms() {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            return p.clone();
        }
    }
    let ring = p.ring();
    let terms: Vec<(BigInt, Vec<u16>)> = p.terms().map(|(c, e)| (c / &g, e.to_vec())).collect();
    Poly::from_terms(&ring, p.domain(), terms).unwrap()
}

fn insert_echelon(basis: &mut Vec<Poly>, row: Poly) -> Result<()> {
    let reduced = reduce_row(row, basis)?;
    if !reduced.is_zero() {
        basis.push(reduced);
    }
    Ok(())
}

/// Decides whether the homogeneous `g` lies in the degree-deg(g) graded
/// piece of the ideal generated by the homogeneous `gens`, by spanning that
/// piece with {monomial * gen} products and reducing.
pub fn graded_membership(g: &Poly, gens: &[Poly], mode: MembershipMode) -> Result<Certificate> {
    if !g.is_homogeneous() || gens.iter().any(|x| !x.is_homogeneous()) {
        return Err(Error::Inhomogeneous);
    }
    let sw = Stopwatch::start();
    let ring = g.ring();
    let (g, gens, mode_tag, modulus, seed): (Poly, Vec<Poly>, CertMode, Option<u64>, Option<u64>) =
        match &mode {
            MembershipMode::Exact => (g.clone(), gens.to_vec(), CertMode::Exact, None, None),
            MembershipMode::ModP(cfg) => (
                g.reduce_mod(cfg.modulus)?,
                gens.iter()
                    .map(|x| x.reduce_mod(cfg.modulus))
                    .collect::<Result<_>>()?,
                CertMode::Probabilistic,
                Some(cfg.modulus),
                Some(cfg.seed),
            ),
        };
    let target = match g.degree() {
        Some(d) => d,
        None => {
            // zero lies in every ideal
            return Ok(Certificate {
                kind: CertKind::Membership,
                target: String::from("0"),
                mode: mode_tag,
                trials: None,
                modulus,
                seed,
                verdict: Verdict::Pass,
                failure_log2_bound: None,
                wall_time_ms: sw.elapsed_ms(),
                detail: String::from("member (zero polynomial)"),
            });
        }
    };
    let mut basis: Vec<Poly> = Vec::new();
    for gen in &gens {
        let dg = match gen.degree() {
            Some(d) => d,
            None => continue,
        };
        if dg > target {
            continue;
        }
        for expo in monomials_of_degree(&ring, target - dg) {
            let m = Poly::from_terms(&ring, gen.domain(), [(BigInt::from(1), expo)])?;
            insert_echelon(&mut basis, m.mul(gen)?)?;
        }
    }
    let residue = reduce_row(g.clone(), &basis)?;
    let member = residue.is_zero();
    let verdict = if member { Verdict::Pass } else { Verdict::Fail };
    let detail = match (&mode, member) {
        (MembershipMode::Exact, true) => format!("member in degree {target} (exact)"),
        (MembershipMode::Exact, false) => format!("non-member in degree {target} (exact)"),
        (MembershipMode::ModP(_), true) => format!("member in degree {target} (mod p evidence)"),
        (MembershipMode::ModP(_), false) => {
            format!("non-member modulo p in degree {target} (mod p evidence only)")
        }
    };
    Ok(Certificate {
        kind: CertKind::Membership,
        target: format!(
            "membership of a degree-{target} form in a {}-generator ideal",
            gens.len()
        ),
        mode: mode_tag,
        trials: None,
        modulus,
        seed,
        verdict,
        failure_log2_bound: None,
        wall_time_ms: sw.elapsed_ms(),
        detail,
    })
}

/// Batch variant of [`graded_membership`]: decides several homogeneous
/// targets against the same generators, building each graded spanning basis
/// only once per distinct degree.
pub fn graded_membership_batch(
    targets: &[Poly],
    gens: &[Poly],
    mode: MembershipMode,
) -> Result<Vec<Certificate>> {
    if targets.iter().chain(gens).any(|x| !x.is_homogeneous()) {
        return Err(Error::Inhomogeneous);
    }
    let (targets, gens, mode_tag, modulus, seed): (
        Vec<Poly>,
        Vec<Poly>,
        CertMode,
        Option<u64>,
        Option<u64>,
    ) = match &mode {
        MembershipMode::Exact => (targets.to_vec(), gens.to_vec(), CertMode::Exact, None, None),
        MembershipMode::ModP(cfg) => (
            targets
                .iter()
                .map(|x| x.reduce_mod(cfg.modulus))
                .collect::<Result<_>>()?,
            gens.iter()
                .map(|x| x.reduce_mod(cfg.modulus))
                .collect::<Result<_>>()?,
            CertMode::Probabilistic,
            Some(cfg.modulus),
            Some(cfg.seed),
        ),
    };
    let mut bases: alloc::collections::BTreeMap<u32, Vec<Poly>> =
        alloc::collections::BTreeMap::new();
    let mut out = Vec::with_capacity(targets.len());
    for g in &targets {
        let sw = Stopwatch::start();
        let target = match g.degree() {
            Some(d) => d,
            None => {
                out.push(Certificate {
                    kind: CertKind::Membership,
                    target: String::from("0"),
                    mode: mode_tag,
                    trials: None,
                    modulus,
                    seed,
                    verdict: Verdict::Pass,
                    failure_log2_bound: None,
                    wall_time_ms: sw.elapsed_ms(),
                    detail: String::from("member (zero polynomial)"),
                });
                continue;
            }
        };
        if let alloc::collections::btree_map::Entry::Vacant(slot) = bases.entry(target) {
            let ring = g.ring();
            let mut basis: Vec<Poly> = Vec::new();
            for gen in &gens {
                let dg = match gen.degree() {
                    Some(d) => d,
                    None => continue,
                };
                if dg > target {
                    continue;
                }
                for expo in monomials_of_degree(&ring, target - dg) {
                    let m = Poly::from_terms(&ring, gen.domain(), [(BigInt::from(1), expo)])?;
                    insert_echelon(&mut basis, m.mul(gen)?)?;
                }
            }
            slot.insert(basis);
        }
        let member = reduce_row(g.clone(), &bases[&target])?.is_zero();
        out.push(Certificate {
            kind: CertKind::Membership,
            target: format!("membership of a degree-{target} form"),
            mode: mode_tag,
            trials: None,
            modulus,
            seed,
            verdict: if member { Verdict::Pass } else { Verdict::Fail },
            failure_log2_bound: None,
            wall_time_ms: sw.elapsed_ms(),
            detail: format!("degree-{target} reduction"),
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// polynomial identity testing
// ---------------------------------------------------------------------------

/// Lazily-evaluated expression for randomized zero testing.
pub enum PitExpr<'a> {
    Poly(&'a Poly),
    /// The matrix product A*B, evaluated pointwise without symbolic expansion.
    Product(&'a PolyMatrix, &'a PolyMatrix),
}

impl PitExpr<'_> {
    pub fn degree_bound(&self) -> Result<u64> {
        match self {
            PitExpr::Poly(p) => Ok(p.degree().unwrap_or(0) as u64),
            PitExpr::Product(a, b) => {
                if a.cols() != b.rows() {
                    return Err(Error::ShapeMismatch {
                        left: (a.rows(), a.cols()),
                        right: (b.rows(), b.cols()),
                    });
                }
                Ok(max_degree(a) + max_degree(b))
            }
        }
    }

    fn num_vars(&self) -> usize {
        match self {
            PitExpr::Poly(p) => p.sig().num_vars(),
            PitExpr::Product(a, _) => a.sig().num_vars(),
        }
    }

    fn vanishes_at(&self, field: &crate::ring::PrimeField, point: &[u64]) -> Result<bool> {
        match self {
            PitExpr::Poly(p) => Ok(p.evaluate(field, point)? == 0),
            PitExpr::Product(a, b) => {
                let av = a.evaluate(field, point)?;
                let bv = b.evaluate(field, point)?;
                Ok(av.mul(field, &bv).is_zero())
            }
        }
    }
}

/// Schwartz-Zippel zero test: pass iff the expression vanishes at all
/// sampled points.
pub fn pit_zero(expr: &PitExpr<'_>, trials: u32, config: PrimeFieldConfig) -> Result<Certificate> {
    let sw = Stopwatch::start();
    let deg = expr.degree_bound()?;
    let field = config.field()?;
    let mut sampler = config.sampler()?;
    let nv = expr.num_vars();
    let mut verdict = Verdict::Pass;
    for t in 0..trials.max(1) {
        let pt = sampler.point(nv);
        if !expr.vanishes_at(&field, &pt)? {
            verdict = Verdict::Fail;
            return Ok(Certificate {
                kind: CertKind::Identity,
                target: String::from("zero test"),
                mode: CertMode::Probabilistic,
                trials: Some(trials),
                modulus: Some(config.modulus),
                seed: Some(config.seed),
                verdict,
                failure_log2_bound: None,
                wall_time_ms: sw.elapsed_ms(),
                detail: format!("nonzero at sampled point {t}"),
            });
        }
    }
    Ok(Certificate {
        kind: CertKind::Identity,
        target: String::from("zero test"),
        mode: CertMode::Probabilistic,
        trials: Some(trials),
        modulus: Some(config.modulus),
        seed: Some(config.seed),
        verdict,
        failure_log2_bound: Some(sz_log2_bound(deg, field.modulus(), trials.max(1), 1)),
        wall_time_ms: sw.elapsed_ms(),
        detail: format!(
            "vanishes at all {} points (degree bound {deg})",
            trials.max(1)
        ),
    })
}
