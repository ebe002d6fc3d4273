//! JSON matrix schema: `{ring: {n, parity, extended, variables},
//! matrices: [{name, rows, cols, entries}]}` with each entry a list of
//! `[coefficient-string, exponent-array]` terms. Lossless for
//! arbitrary-precision coefficients and byte-stable across reruns.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use doubling_core::multilinear::PolyMatrix;
use doubling_core::ring::{Domain, GenericRing, Poly};
use doubling_core::verify::Certificate;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingDto {
    pub n: u32,
    pub parity: String,
    pub extended: bool,
    pub variables: Vec<String>,
}

impl RingDto {
    pub fn of(ring: &GenericRing) -> RingDto {
        RingDto {
            n: ring.n(),
            parity: ring.parity().to_string(),
            extended: ring.extended(),
            variables: ring.variable_names(),
        }
    }

    pub fn to_ring(&self) -> Result<GenericRing, String> {
        let ring = GenericRing::new(self.n, self.extended).map_err(|e| e.to_string())?;
        if ring.parity().to_string() != self.parity {
            return Err(format!(
                "parity {} inconsistent with n={}",
                self.parity, self.n
            ));
        }
        if ring.variable_names() != self.variables {
            return Err("variable list does not match the canonical order".into());
        }
        Ok(ring)
    }
}

pub type TermDto = (String, Vec<u16>);

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDto {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<TermDto>>,
}

impl MatrixDto {
    pub fn of(name: &str, m: &PolyMatrix) -> MatrixDto {
        let entries = m
            .entries()
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(c, e)| (c.to_string(), e.to_vec()))
                    .collect()
            })
            .collect();
        MatrixDto {
            name: name.to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_matrix(&self, ring: &GenericRing) -> Result<PolyMatrix, String> {
        let mut polys = Vec::with_capacity(self.entries.len());
        for terms in &self.entries {
            let parsed: Result<Vec<(BigInt, Vec<u16>)>, String> = terms
                .iter()
                .map(|(c, e)| {
                    BigInt::from_str(c)
                        .map(|c| (c, e.clone()))
                        .map_err(|err| err.to_string())
                })
                .collect();
            polys.push(Poly::from_terms(ring, Domain::Int, parsed?).map_err(|e| e.to_string())?);
        }
        PolyMatrix::new(self.rows, self.cols, polys).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleDto {
    pub ring: RingDto,
    pub matrices: Vec<MatrixDto>,
}

impl BundleDto {
    pub fn parse(text: &str) -> Result<(GenericRing, Vec<(String, PolyMatrix)>), String> {
        let dto: BundleDto = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let ring = dto.ring.to_ring()?;
        let mut out = Vec::with_capacity(dto.matrices.len());
        for m in &dto.matrices {
            out.push((m.name.clone(), m.to_matrix(&ring)?));
        }
        Ok((ring, out))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDto {
    pub kind: String,
    pub target: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_log2_bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub detail: String,
}

impl CertificateDto {
    pub fn of(c: &Certificate) -> CertificateDto {
        CertificateDto {
            kind: format!("{:?}", c.kind).to_lowercase(),
            target: c.target.clone(),
            mode: match c.mode {
                doubling_core::verify::CertMode::Exact => "exact".into(),
                doubling_core::verify::CertMode::Probabilistic => "probabilistic".into(),
            },
            trials: c.trials,
            modulus: c.modulus,
            seed: c.seed,
            verdict: match c.verdict {
                doubling_core::verify::Verdict::Pass => "pass".into(),
                doubling_core::verify::Verdict::Fail => "fail".into(),
            },
            failure_log2_bound: c.failure_log2_bound,
            wall_time_ms: c.wall_time_ms,
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigDto {
    pub n: u32,
    pub parity: String,
    pub cone: bool,
    pub mode: String,
    pub trials: u32,
    pub modulus: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyBundleDto {
    pub config: ConfigDto,
    pub certificates: Vec<CertificateDto>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub spinor_reports: Vec<SpinorReportDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpinorReportDto {
    pub index: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_point_log2_bound: Option<i64>,
}

impl SpinorReportDto {
    pub fn of(r: &doubling_core::spinor::SpinorReport) -> SpinorReportDto {
        SpinorReportDto {
            index: r.index.to_string(),
            verdict: match r.verdict {
                doubling_core::spinor::SpinorVerdict::VerifiedSquare => "verified-square".into(),
                doubling_core::spinor::SpinorVerdict::Zero => "zero".into(),
                doubling_core::spinor::SpinorVerdict::NonzeroUnclassified => {
                    "nonzero-unclassified".into()
                }
            },
            matched: r.matched.clone(),
            coordinate: r.coordinate.as_ref().map(|p| p.to_string()),
            trials: r.trials,
            modulus: r.modulus,
            seed: r.seed,
            per_point_log2_bound: r.per_point_log2_bound,
        }
    }
}
