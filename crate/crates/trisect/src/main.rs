use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trisect::cli;
use trisect::rohlin::Verdict;

/// Exact-arithmetic computations on pseudotrisection diagrams.
///
/// Exit codes: 0 success (or consistent), 1 obstructed / failed checks,
/// 2 invalid input.
#[derive(Parser)]
#[command(name = "trisect", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized checks (overridden by TRISECT_SEED).
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Number of randomized runs for `verify`.
    #[arg(long, global = true, default_value_t = 20)]
    runs: usize,

    /// Output path for `construct`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the intersection form of a diagram file.
    Form { path: PathBuf },
    /// Build the standard pseudotrisection for a form spec (e.g. "2E8+3H").
    Construct {
        spec: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Homology reports for the three pairwise unions of a diagram file.
    Homology { path: PathBuf },
    /// Generator families and the integral spanning certificate.
    #[command(name = "johnson-span")]
    JohnsonSpan {
        spec: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Linking forms l2, l3 and enhancement bits of a diagram file.
    Linking { path: PathBuf },
    /// Obstruction report for a form spec.
    Rohlin { spec: String },
    /// Full invariant suite on a diagram file with a seeded random campaign.
    Verify { path: PathBuf },
}

/// Prints to stdout, exiting quietly when the reader has gone away
/// (e.g. piping into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        let mut stdout = std::io::stdout();
        if writeln!(stdout, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("TRISECT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(cli.seed);
    match run(&cli, seed) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, seed: u64) -> trisect::Result<ExitCode> {
    match &cli.cmd {
        Cmd::Form { path } => {
            let form = cli::run_form(path)?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&form)?);
            } else {
                out!(
                    "rank {}  signature {}  even {}  unimodular true  label {}",
                    form.rank(),
                    form.signature(),
                    form.is_even(),
                    form.label().unwrap_or("-")
                );
                out!("{}", format!("{}", form.matrix()).trim_end());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Construct { spec, k } => {
            let (file, form) = cli::run_construct(spec, *k, cli.out.as_deref())?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&file)?);
            } else {
                out!(
                    "constructed genus-{} diagram with k={} for {} (round-trip verified)",
                    file.triple.genus(),
                    file.triple.k(),
                    form.label().unwrap_or(spec)
                );
                if let Some(p) = &cli.out {
                    out!("written to {}", p.display());
                } else {
                    out!("{}", serde_json::to_string(&file)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Homology { path } => {
            let rep = cli::run_homology(path)?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                for (name, r) in [
                    ("alpha-beta", &rep.alpha_beta),
                    ("beta-gamma", &rep.beta_gamma),
                    ("gamma-alpha", &rep.gamma_alpha),
                ] {
                    out!(
                        "{name}: free rank {}, torsion {:?}, homology sphere: {}",
                        r.free_rank, r.invariant_factors, r.is_homology_sphere
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::JohnsonSpan { spec, k } => {
            let cert = cli::run_johnson_span(spec, *k)?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&cert)?);
            } else {
                out!(
                    "dimension {}  generators {}  factors {:?}  spans over Z: {}",
                    cert.dimension,
                    cert.num_generators,
                    cert.invariant_factors_summary,
                    cert.spans_over_z
                );
            }
            Ok(if cert.spans_over_z {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Linking { path } => {
            let rep = cli::run_linking(path)?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                out!("basis: {:?}", rep.basis);
                out!("l2:\n{}", rep.l2.matrix());
                out!("l3:\n{}", rep.l3.matrix());
                let bits = |v: &[bool]| -> String {
                    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
                };
                out!("q2 bits: {}", bits(&rep.q2_basis_bits));
                out!("q3 bits: {}", bits(&rep.q3_basis_bits));
                out!("q2 == q3: {}", rep.q2_equals_q3);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rohlin { spec } => {
            let rep = cli::run_rohlin(spec)?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                out!(
                    "{}: rank {}, signature {} ({} mod 16), even {} -> {:?}",
                    rep.label.as_deref().unwrap_or(spec),
                    rep.rank,
                    rep.signature,
                    rep.signature_mod_16,
                    rep.even,
                    rep.verdict
                );
            }
            Ok(match rep.verdict {
                Verdict::Obstructed => ExitCode::from(1),
                Verdict::Consistent => ExitCode::SUCCESS,
            })
        }
        Cmd::Verify { path } => {
            let rep = cli::run_verify(path, seed, cli.runs)?;
            if cli.json {
                out!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                out!("seed {}  runs {}", rep.seed, rep.runs);
                for c in &rep.checks {
                    out!(
                        "[{}] {}: {}",
                        if c.passed { "pass" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
            }
            Ok(if rep.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
