//! Command implementations shared by the binary and integration tests.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use doubling_core::aci::{build_resolution, colon_relation, AciResolution};
use doubling_core::doubling::{build_cone, DoublingCone};
use doubling_core::exterior::equivariant_phi;
use doubling_core::multilinear::PolyMatrix;
use doubling_core::ring::{Domain, GenericRing, Parity, Poly, PrimeFieldConfig};
use doubling_core::spinor::{
    default_row_set, extract_spinor, spinor_minor, verify_spinor, MinorValue, SpinorIndex,
    SpinorMode, SpinorReport, SpinorVerdict,
};
use doubling_core::verify::{
    check_complex, graded_membership, graded_membership_batch, rank_profile, CertKind, CertMode,
    Certificate, CheckMode, MembershipMode, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    CasScript,
    LatexMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    Complex,
    Ranks,
    Colon,
    Equivariant,
    Spinor,
    Membership,
}

/// Resolved run configuration; the seed and modulus are recorded in every
/// randomized output.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: u32,
    pub cone: bool,
    pub mode: Mode,
    pub trials: u32,
    pub modulus: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub perturb: bool,
}

impl RunConfig {
    pub fn parity(&self) -> Parity {
        if self.n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn field_config(&self) -> Result<PrimeFieldConfig, String> {
        PrimeFieldConfig::new(self.modulus, self.seed).map_err(|e| e.to_string())
    }

    fn base(&self) -> Result<AciResolution, String> {
        let ring = GenericRing::new(self.n, false).map_err(|e| e.to_string())?;
        let mut res = build_resolution(&ring).map_err(|e| e.to_string())?;
        if self.perturb {
            let bumped = res
                .d2
                .at(0, 0)
                .add(&Poly::one(&ring, Domain::Int))
                .map_err(|e| e.to_string())?;
            res.d2.set(0, 0, bumped);
        }
        Ok(res)
    }

    fn cone(&self) -> Result<DoublingCone, String> {
        let base = self.base()?;
        let ext = base.ring.extend();
        build_cone(&ext, &base).map_err(|e| e.to_string())
    }
}

/// Writes atomically: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), String> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name()
            .map(|s| s.to_string_lossy())
            .unwrap_or_default()
    ));
    {
        let mut f = fs::File::create(&tmp).map_err(|e| e.to_string())?;
        f.write_all(content.as_bytes()).map_err(|e| e.to_string())?;
        f.sync_all().map_err(|e| e.to_string())?;
    }
    fs::rename(&tmp, path).map_err(|e| e.to_string())
}

fn named_matrices(cfg: &RunConfig) -> Result<(GenericRing, Vec<(String, PolyMatrix)>), String> {
    if cfg.cone {
        let cone = cfg.cone()?;
        let ring = cone.ring;
        Ok((
            ring,
            vec![
                ("d1".into(), cone.base.d1.clone()),
                ("d2".into(), cone.base.d2.clone()),
                ("d3".into(), cone.base.d3.clone()),
                ("psi0".into(), cone.psi0.clone()),
                ("psi1".into(), cone.psi1.clone()),
                ("delta1".into(), cone.delta1.clone()),
                ("delta2".into(), cone.delta2.clone()),
                ("delta3".into(), cone.delta3.clone()),
                ("delta4".into(), cone.delta4.clone()),
            ],
        ))
    } else {
        let base = cfg.base()?;
        Ok((
            base.ring,
            vec![
                ("d1".into(), base.d1.clone()),
                ("d2".into(), base.d2.clone()),
                ("d3".into(), base.d3.clone()),
            ],
        ))
    }
}

/// Renders the build/export payload in the requested format.
pub fn render(cfg: &RunConfig) -> Result<String, String> {
    let (ring, matrices) = named_matrices(cfg)?;
    match cfg.format {
        Format::Json => {
            let bundle = crate::schema::BundleDto {
                ring: crate::schema::RingDto::of(&ring),
                matrices: matrices
                    .iter()
                    .map(|(name, m)| crate::schema::MatrixDto::of(name, m))
                    .collect(),
            };
            serde_json::to_string_pretty(&bundle).map_err(|e| e.to_string())
        }
        Format::CasScript => Ok(crate::export::m2_script(&ring, &matrices)),
        Format::LatexMatrix => Ok(crate::export::latex_document(&ring, &matrices)),
    }
}

/// `build` and `export`: construct, render, emit. Returns the output text
/// when no path is configured.
pub fn cmd_build(cfg: &RunConfig) -> Result<Option<String>, String> {
    let text = render(cfg)?;
    match &cfg.out {
        Some(path) => {
            write_atomic(path, &text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

pub struct VerifyOutcome {
    pub certificates: Vec<Certificate>,
    pub spinor_reports: Vec<SpinorReport>,
    pub all_passed: bool,
}

fn cli_certificate(kind: CertKind, target: &str, pass: bool, detail: String) -> Certificate {
    Certificate {
        kind,
        target: target.into(),
        mode: CertMode::Exact,
        trials: None,
        modulus: None,
        seed: None,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        failure_log2_bound: None,
        wall_time_ms: None,
        detail,
    }
}

/// `verify`: run the requested checks; every certificate must pass.
pub fn cmd_verify(cfg: &RunConfig, checks: &[CheckName]) -> Result<VerifyOutcome, String> {
    let mut certificates = Vec::new();
    let mut spinor_reports = Vec::new();
    let field_cfg = cfg.field_config()?;
    for check in checks {
        match check {
            CheckName::Complex => {
                let base = cfg.base()?;
                let mode = || match cfg.mode {
                    Mode::Exact => CheckMode::Exact,
                    Mode::Probabilistic => CheckMode::Probabilistic {
                        trials: cfg.trials,
                        config: field_cfg,
                    },
                };
                certificates
                    .push(check_complex(&base.to_complex(), mode()).map_err(|e| e.to_string())?);
                if cfg.cone {
                    let cone = cfg.cone()?;
                    certificates.push(
                        check_complex(&cone.to_complex(), mode()).map_err(|e| e.to_string())?,
                    );
                }
            }
            CheckName::Ranks => {
                let base = cfg.base()?;
                let (ranks, mut cert) =
                    rank_profile(&base.to_complex(), cfg.trials.clamp(5, 16), field_cfg)
                        .map_err(|e| e.to_string())?;
                let expect = vec![1usize, 3, cfg.n as usize];
                if ranks != expect {
                    cert.verdict = Verdict::Fail;
                    cert.detail = format!("expected {expect:?}, observed {ranks:?}");
                }
                certificates.push(cert);
                if cfg.cone {
                    let cone = cfg.cone()?;
                    let (ranks, mut cert) =
                        rank_profile(&cone.to_complex(), cfg.trials.clamp(5, 16), field_cfg)
                            .map_err(|e| e.to_string())?;
                    let k = cfg.n as usize + 3;
                    let expect = vec![1usize, k, k, 1];
                    if ranks != expect {
                        cert.verdict = Verdict::Fail;
                        cert.detail = format!("expected {expect:?}, observed {ranks:?}");
                    }
                    certificates.push(cert);
                }
            }
            CheckName::Colon => {
                let base = cfg.base()?;
                let mut pass = true;
                let mut detail = format!("w_j*x1 in (x2,x3,x4) witnessed for j=1..{}", cfg.n);
                for j in 1..=cfg.n {
                    if let Err(e) = colon_relation(&base, j) {
                        pass = false;
                        detail = format!("column {j}: {e}");
                        break;
                    }
                }
                certificates.push(cli_certificate(
                    CertKind::Identity,
                    &format!("colon relations n={}", cfg.n),
                    pass,
                    detail,
                ));
            }
            CheckName::Equivariant => {
                let base = cfg.base()?;
                let ring = base.ring;
                let phi = equivariant_phi(&ring).map_err(|e| e.to_string())?;
                let mut pass = true;
                let mut detail =
                    String::from("shuffle-sum generators equal the d2 block entrywise");
                'cmp: for r in 0..4 {
                    for j in 0..cfg.n as usize {
                        if phi.at(r, j) != base.d2.at(r, j) {
                            pass = false;
                            detail = format!("entry ({r},{j}) differs");
                            break 'cmp;
                        }
                    }
                }
                if pass {
                    // image of each generator row under d3 lies in the ideal
                    let mut targets = Vec::new();
                    for r in 0..4 {
                        let col = PolyMatrix::new(
                            cfg.n as usize,
                            1,
                            (0..cfg.n as usize).map(|j| phi.at(r, j).clone()).collect(),
                        )
                        .map_err(|e| e.to_string())?;
                        let image = base.d3.mul(&col).map_err(|e| e.to_string())?;
                        targets.extend(image.entries().iter().filter(|e| !e.is_zero()).cloned());
                    }
                    let certs =
                        graded_membership_batch(&targets, &base.generators, MembershipMode::Exact)
                            .map_err(|e| e.to_string())?;
                    if !certs.iter().all(Certificate::passed) {
                        pass = false;
                        detail = String::from("a d3-image entry escapes the ideal degreewise");
                    }
                }
                certificates.push(cli_certificate(
                    CertKind::Identity,
                    &format!("equivariant generators n={}", cfg.n),
                    pass,
                    detail,
                ));
            }
            CheckName::Spinor => {
                if !(4..=5).contains(&cfg.n) {
                    return Err(format!(
                        "spinor checks need n=4 or n=5, got n={} (config error)",
                        cfg.n
                    ));
                }
                let cone = cfg.cone()?;
                let rows = default_row_set(cfg.n);
                let mut pass = true;
                if cfg.n == 5 {
                    let mode = SpinorMode::Probabilistic {
                        trials: cfg.trials,
                        config: field_cfg,
                    };
                    for i in 1..=5u32 {
                        let k = SpinorIndex::new(5, &[i]).map_err(|e| e.to_string())?;
                        let g = cone.psi0.entries()[i as usize - 1].clone();
                        let rep = verify_spinor(&cone, &rows, &k, &g, &mode)
                            .map_err(|e| e.to_string())?;
                        pass &= rep.verdict == SpinorVerdict::VerifiedSquare;
                        spinor_reports.push(rep);
                    }
                } else {
                    let x1 = cone.base.generators[0].clone();
                    for i in 1..=4u32 {
                        let barred: Vec<u32> = (1..=7).filter(|&l| l != 8 - i).collect();
                        let k = SpinorIndex::new(4, &barred).map_err(|e| e.to_string())?;
                        let g = cone.psi0.entries()[i as usize - 1].clone();
                        let rep = match cfg.mode {
                            Mode::Exact => {
                                let mode = SpinorMode::Symbolic { allow_large: false };
                                let rep = verify_spinor(&cone, &rows, &k, &g, &mode)
                                    .map_err(|e| e.to_string())?;
                                if rep.verdict == SpinorVerdict::VerifiedSquare {
                                    // re-extract the coordinate from the minor
                                    if let MinorValue::Symbolic(v) = spinor_minor(
                                        &cone,
                                        &rows,
                                        &k,
                                        &SpinorMode::Symbolic { allow_large: false },
                                    )
                                    .map_err(|e| e.to_string())?
                                    {
                                        let s =
                                            extract_spinor(&v, &x1).map_err(|e| e.to_string())?;
                                        if s != g && s != g.neg() {
                                            return Err(format!(
                                                "extraction at {k} disagrees with g_{i}"
                                            ));
                                        }
                                    }
                                }
                                rep
                            }
                            Mode::Probabilistic => {
                                let mode = SpinorMode::Probabilistic {
                                    trials: cfg.trials,
                                    config: field_cfg,
                                };
                                verify_spinor(&cone, &rows, &k, &g, &mode)
                                    .map_err(|e| e.to_string())?
                            }
                        };
                        pass &= rep.verdict == SpinorVerdict::VerifiedSquare;
                        spinor_reports.push(rep);
                    }
                }
                certificates.push(cli_certificate(
                    CertKind::Identity,
                    &format!("spinor coordinates n={}", cfg.n),
                    pass,
                    format!(
                        "{} of {} distinguished minors verified as squares",
                        spinor_reports
                            .iter()
                            .filter(|r| r.verdict == SpinorVerdict::VerifiedSquare)
                            .count(),
                        spinor_reports.len()
                    ),
                ));
            }
            CheckName::Membership => {
                let cone = cfg.cone()?;
                let g1 = &cone.psi0.entries()[0];
                let xs: Vec<Poly> = cone.base.generators.to_vec();
                let cert =
                    graded_membership(g1, &xs, MembershipMode::Exact).map_err(|e| e.to_string())?;
                let non_member = !cert.passed();
                certificates.push(cli_certificate(
                    CertKind::Membership,
                    &format!("g1 outside the base ideal, n={}", cfg.n),
                    non_member,
                    if non_member {
                        "g1 is not in J*R~ in its degree (exact)".into()
                    } else {
                        "g1 unexpectedly reduced to zero".into()
                    },
                ));
                let certs = graded_membership_batch(&xs, &cone.ideal_i, MembershipMode::Exact)
                    .map_err(|e| e.to_string())?;
                let all_in = certs.iter().all(Certificate::passed);
                certificates.push(cli_certificate(
                    CertKind::Membership,
                    &format!("x_i inside the doubled ideal, n={}", cfg.n),
                    all_in,
                    format!(
                        "{} of 4 generators verified",
                        certs.iter().filter(|c| c.passed()).count()
                    ),
                ));
            }
        }
    }
    let all_passed = certificates.iter().all(Certificate::passed);
    Ok(VerifyOutcome {
        certificates,
        spinor_reports,
        all_passed,
    })
}
