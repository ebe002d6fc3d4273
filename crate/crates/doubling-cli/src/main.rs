//! Command-line front end: build the generic resolutions and their
//! doublings, run verification suites, and export artifacts.
//!
//! Exit codes: 0 all requested certificates pass, 1 a certificate failed,
//! 2 usage or configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use doubling_cli::run::{cmd_build, cmd_verify, CheckName, Format, Mode, RunConfig};
use doubling_cli::schema::{CertificateDto, ConfigDto, SpinorReportDto, VerifyBundleDto};
use doubling_core::ring::{DEFAULT_MODULUS, DEFAULT_TRIALS};

#[derive(Parser)]
#[command(
    name = "doubling",
    about = "Generic codimension-3 almost complete intersection resolutions, \
             their doublings into codimension-4 Gorenstein resolutions, and \
             certification of the associated matrix identities",
    after_help = "Environment overrides: DOUBLING_TRIALS, DOUBLING_MODULUS, \
                  DOUBLING_SEED, DOUBLING_OUT."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Probabilistic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    CasScript,
    LatexMatrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Complex,
    Ranks,
    Colon,
    Equivariant,
    Spinor,
    Membership,
}

#[derive(Args)]
struct CommonArgs {
    /// Cohen-Macaulay type parameter (3..=9)
    #[arg(long)]
    n: u32,

    /// Parity override; must agree with n
    #[arg(long, value_enum)]
    parity: Option<ParityArg>,

    /// Also build the generic doubling (mapping cone)
    #[arg(long)]
    cone: bool,

    /// Verification mode
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,

    /// Randomized trials per probabilistic certificate
    #[arg(long, env = "DOUBLING_TRIALS", default_value_t = DEFAULT_TRIALS)]
    trials: u32,

    /// Prime modulus for randomized checks (default: largest prime below 2^62)
    #[arg(long, env = "DOUBLING_MODULUS", default_value_t = DEFAULT_MODULUS)]
    modulus: u64,

    /// Seed for the deterministic point sampler
    #[arg(long, env = "DOUBLING_SEED", default_value_t = 0)]
    seed: u64,

    /// Output file (stdout when omitted)
    #[arg(long, env = "DOUBLING_OUT")]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,

    /// Perturb one matrix entry before checking (testing hook)
    #[arg(long, hide = true)]
    perturb: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the base resolution (and optionally the cone) and emit it
    Build(CommonArgs),
    /// Run verification suites and write a certificate bundle
    Verify {
        #[command(flatten)]
        common: CommonArgs,

        /// Comma-separated checks to run
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "complex,ranks,colon"
        )]
        checks: Vec<CheckArg>,
    },
    /// Export built data as a CAS script or LaTeX matrices
    Export(CommonArgs),
}

fn resolve(common: &CommonArgs) -> Result<RunConfig, String> {
    if !(3..=9).contains(&common.n) {
        return Err(format!("n = {} outside supported range 3..=9", common.n));
    }
    if let Some(p) = common.parity {
        let is_odd = common.n % 2 == 1;
        let claims_odd = matches!(p, ParityArg::Odd);
        if is_odd != claims_odd {
            return Err(format!(
                "parity override {} inconsistent with n = {}",
                if claims_odd { "odd" } else { "even" },
                common.n
            ));
        }
    }
    if common.trials < 1 {
        return Err("trials must be at least 1".into());
    }
    let cfg = RunConfig {
        n: common.n,
        cone: common.cone,
        mode: match common.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Probabilistic => Mode::Probabilistic,
        },
        trials: common.trials,
        modulus: common.modulus,
        seed: common.seed,
        out: common.out.clone(),
        format: match common.format {
            FormatArg::Json => Format::Json,
            FormatArg::CasScript => Format::CasScript,
            FormatArg::LatexMatrix => Format::LatexMatrix,
        },
        perturb: common.perturb,
    };
    cfg.field_config()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Build(common) | Command::Export(common) => {
            let cfg = match resolve(&common) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match cmd_build(&cfg) {
                Ok(Some(text)) => {
                    println!("{text}");
                    ExitCode::SUCCESS
                }
                Ok(None) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify { common, checks } => {
            let cfg = match resolve(&common) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let checks: Vec<CheckName> = checks
                .iter()
                .map(|c| match c {
                    CheckArg::Complex => CheckName::Complex,
                    CheckArg::Ranks => CheckName::Ranks,
                    CheckArg::Colon => CheckName::Colon,
                    CheckArg::Equivariant => CheckName::Equivariant,
                    CheckArg::Spinor => CheckName::Spinor,
                    CheckArg::Membership => CheckName::Membership,
                })
                .collect();
            let outcome = match cmd_verify(&cfg, &checks) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let bundle = VerifyBundleDto {
                config: ConfigDto {
                    n: cfg.n,
                    parity: cfg.parity().to_string(),
                    cone: cfg.cone,
                    mode: match cfg.mode {
                        Mode::Exact => "exact".into(),
                        Mode::Probabilistic => "probabilistic".into(),
                    },
                    trials: cfg.trials,
                    modulus: cfg.modulus,
                    seed: cfg.seed,
                },
                certificates: outcome
                    .certificates
                    .iter()
                    .map(CertificateDto::of)
                    .collect(),
                spinor_reports: outcome
                    .spinor_reports
                    .iter()
                    .map(SpinorReportDto::of)
                    .collect(),
            };
            let text = match serde_json::to_string_pretty(&bundle) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = doubling_cli::run::write_atomic(path, &text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            for c in &bundle.certificates {
                eprintln!("[{}] {}: {}", c.verdict, c.target, c.detail);
            }
            if outcome.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
