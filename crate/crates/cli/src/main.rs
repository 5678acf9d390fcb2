//! `zetarep` command-line front end over the verification library.
//!
//! The exit status is 0 when every check passes and 1 when any check fails.
//! Usage and configuration errors exit with 2.

mod config;
mod render;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use config::{Format, RunConfig};
use zetarep::errata::errata_ledger;
use zetarep::exactnum::{bernoulli, euler_number, harmonic};
use zetarep::identities::{self, Verdict};
use zetarep::laurent::{self, FunctionKind};
use zetarep::mellin::{self, QuadratureConfig};
use zetarep::precision::{parse_rational, to_decimal};
use zetarep::{specfun, PrecisionContext};

#[derive(Parser, Debug)]
#[command(name = "zetarep", version, about = "Verify integral representations of zeta and the identities they imply")]
struct Cli {
    /// Significant decimal digits (at least 10; default 50)
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Output format (default text)
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Worker threads for parallel sweeps
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    /// File of key=value lines (digits, format, parallelism)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bernoulli numbers B_n, for one index or a range A..B
    Bernoulli {
        #[arg(long)]
        n: String,
    },
    /// Euler numbers E_n, for one index or a range A..B
    Euler {
        #[arg(long)]
        n: String,
    },
    /// Generalized harmonic number H_n^(k)
    Harmonic {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Truncated Laurent or Taylor series with its oracle check
    Laurent {
        /// coth, coth2, coth3, coth4, csch, csch2, sech, sech2, digamma_sym, digamma_at(N) or chi_series
        #[arg(long)]
        kind: String,
        /// exclusive upper exponent
        #[arg(long, default_value_t = laurent::DEFAULT_ORDER)]
        order: i32,
        /// require exact rational coefficients
        #[arg(long, conflicts_with = "decimal")]
        exact: bool,
        /// print coefficients as decimals
        #[arg(long)]
        decimal: bool,
    },
    /// Check integral representations against their closed forms
    VerifyMellin {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// sample point, repeatable; rationals such as 1/3 or decimals
        #[arg(long = "s", allow_hyphen_values = true)]
        s: Vec<String>,
    },
    /// Sweep summation rules over a parameter range
    Identity {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// parameter range A..B (inclusive) or a single value
        #[arg(long, conflicts_with = "all")]
        n: Option<String>,
    },
    /// Ledger of printed statements that fail, with verified corrections
    Errata,
    /// sum_{n>=1} H_n / n^m
    EulerSum {
        #[arg(long)]
        m: i64,
    },
}

/// A usage or configuration problem (exit code 2).
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

/// Errors caused by the arguments become usage errors; the rest are failures.
fn core(e: zetarep::Error) -> anyhow::Error {
    use zetarep::Error::*;
    match e {
        InvalidArgument(_) | Pole { .. } | Divergent { .. } | Precision(_) | UnknownId(_) | OutsideStrip { .. }
        | ExcludedPoint { .. } | ParameterRange { .. } | EmptyRange | OutsideRadius { .. } => usage(e.to_string()),
        other => anyhow!(other),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// `"7"`, `"2..9"` or `"2..=9"`, inclusive.
fn parse_range(text: &str) -> Result<(i64, i64)> {
    let t = text.trim();
    let bad = || usage(format!("expected N or A..B, got `{text}`"));
    let (a, b) = match t.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (t, t),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(usage(format!("empty range `{text}`")));
    }
    Ok((a, b))
}

fn index_range(text: &str) -> Result<Vec<u32>> {
    let (a, b) = parse_range(text)?;
    if a < 0 || b > u32::MAX as i64 {
        return Err(usage(format!("indices must be non-negative, got `{text}`")));
    }
    Ok((a as u32..=b as u32).collect())
}

fn context(cfg: &RunConfig) -> Result<PrecisionContext> {
    PrecisionContext::new(cfg.digits).map_err(core)
}

/// Orders ids like `R2 < R10 < ROB`.
fn natural_key(id: &str) -> (String, u64, String) {
    let prefix: String = id.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let rest = &id[prefix.len()..];
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let tail = rest[digits.len()..].to_string();
    (prefix, digits.parse().unwrap_or(0), tail)
}

fn run(cli: Cli) -> Result<(String, Outcome)> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path).map_err(|e| usage(format!("{e:#}")))?;
    }
    cfg.override_with(cli.digits, cli.format, cli.parallelism).map_err(|e| usage(e.to_string()))?;
    if let Some(threads) = cfg.parallelism {
        // Ignore the error raised when a pool already exists (only possible in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let fmt = cfg.format;

    match cli.command {
        Command::Bernoulli { n } => {
            let rows = index_range(&n)?.into_iter().map(|i| (i, bernoulli(i).to_string())).collect();
            Ok((render::numbers("B", rows, fmt)?, Outcome::Pass))
        }
        Command::Euler { n } => {
            let rows = index_range(&n)?.into_iter().map(|i| (i, euler_number(i).to_string())).collect();
            Ok((render::numbers("E", rows, fmt)?, Outcome::Pass))
        }
        Command::Harmonic { n, k } => {
            let v = harmonic(n, k).map_err(core)?;
            Ok((render::scalar(&[("n", n.to_string()), ("k", k.to_string())], &v.to_string(), fmt)?, Outcome::Pass))
        }
        Command::Laurent { kind, order, exact, decimal } => {
            let kind = FunctionKind::parse(&kind).map_err(core)?;
            if exact && !kind.is_trig() {
                return Err(usage(format!("{kind} has transcendental coefficients; --exact is not available")));
            }
            let ctx = context(&cfg)?;
            let series = laurent::closed_form_series(kind, order, &ctx).map_err(core)?;
            let agreement = laurent::check_agreement(kind, order, &ctx).map_err(core)?;
            let ok = agreement.agree;
            let out = render::laurent(kind, order, &series, decimal, &agreement, cfg.digits, fmt)?;
            Ok((out, Outcome::from_bool(ok)))
        }
        Command::VerifyMellin { id, all, s } => {
            let ctx = context(&cfg)?;
            let qcfg = QuadratureConfig::new(ctx);
            let mut reps: Vec<&'static mellin::RepresentationSpec> = if all {
                mellin::registry().iter().collect()
            } else {
                vec![mellin::lookup(id.as_deref().unwrap_or_default()).map_err(core)?]
            };
            reps.sort_by_key(|r| natural_key(r.id));
            let points = s.iter().map(|p| parse_rational(p).map_err(core)).collect::<Result<Vec<_>>>()?;
            for rep in &reps {
                for p in &points {
                    rep.check_point(p).map_err(core)?;
                }
            }
            let pts = (!points.is_empty()).then_some(points.as_slice());
            let reports = reps
                .par_iter()
                .map(|rep| mellin::verify_representation(rep, pts, &qcfg).map_err(core))
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.pass);
            Ok((render::mellin(&reports, all, fmt)?, Outcome::from_bool(ok)))
        }
        Command::Identity { id, all, n } => {
            let ctx = context(&cfg)?;
            let mut specs: Vec<&'static identities::IdentitySpec> = if all {
                identities::registry().iter().collect()
            } else {
                vec![identities::lookup(id.as_deref().unwrap_or_default()).map_err(core)?]
            };
            specs.sort_by_key(|s| natural_key(&s.id));
            let range = n.as_deref().map(parse_range).transpose()?;
            let reports = specs
                .par_iter()
                .map(|spec| {
                    identities::sweep_identity(spec, range.unwrap_or(spec.default_range), Some(&ctx)).map_err(core)
                })
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.verdict != Verdict::Fail);
            Ok((render::identities(&reports, all, fmt)?, Outcome::from_bool(ok)))
        }
        Command::Errata => {
            let ctx = context(&cfg)?;
            let ledger = errata_ledger(&ctx).map_err(core)?;
            // Listing errata is informational; it never fails the run.
            Ok((render::errata(&ledger, fmt)?, Outcome::Pass))
        }
        Command::EulerSum { m } => {
            if m <= 1 {
                return Err(usage(format!("sum H_n / n^{m} diverges; m must be at least 2")));
            }
            let ctx = context(&cfg)?;
            let v = specfun::euler_sum_h(&ctx.float(m), &ctx).map_err(core)?;
            let text = to_decimal(&v, cfg.digits);
            Ok((render::scalar(&[("m", m.to_string()), ("digits", cfg.digits.to_string())], &text, fmt)?, Outcome::Pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, outcome)) => {
            print!("{out}");
            ExitCode::from(if outcome == Outcome::Pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Usage>() { 2 } else { 1 })
        }
    }
}
