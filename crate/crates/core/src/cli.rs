//! Command-line front end.
//!
//! Every command is a pure function of its [`RunConfig`]: the same flags and
//! seed produce byte-identical output regardless of `--threads`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::char_sums::weil::{exhaustive_weil_sweep, random_weil_sweep, ExhaustiveSummary};
use crate::correlation::{
    family_spectrum, merged_spectrum, CorrelationError, NaiveCheck, SpectrumOptions, SpectrumReport,
};
use crate::field::{build_field, FieldCtx, FieldElement, FieldError};
use crate::sequences::{write_family_dump, Decimation, FamilySpec, SequenceError};
use crate::table1::{self, Table1Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND_VIOLATION: i32 = 3;
pub const EXIT_TABLE_MISMATCH: i32 = 4;
pub const EXIT_WEIL_VIOLATION: i32 = 5;
pub const EXIT_ORACLE_MISMATCH: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print the field modulus, primitive element and sizes.
    FieldInfo,
    /// Write every family member as "i,j,l:symbols".
    GenFamily,
    /// Exact correlation spectrum and bound check.
    Spectrum,
    /// Recompute the reference table rows.
    Table1,
    /// Seeded Weil-bound checks on random (or all small) polynomials.
    WeilSweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NaiveMode {
    Auto,
    Off,
    Full,
    Sampled,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "lowcorr",
    version,
    about = "Low-correlation p-ary sequence families over GF(p^n)"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Characteristic, a prime ≡ 3 (mod 4).
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree, odd.
    #[arg(long)]
    pub n: Option<u32>,
    /// Second decimation: 4 or N+1. Spectrum computes both and the merged set when omitted.
    #[arg(long)]
    pub d: Option<Decimation>,
    /// m-sequence coefficient as "alpha^k" or base-field coefficients "c0,c1,...".
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random trials for weil-sweep.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Maximum degree of f for weil-sweep.
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// weil-sweep: enumerate every f up to --max-degree instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// table1: also run the two large rows.
    #[arg(long)]
    pub extended: bool,
    /// Naive cross-check of the spectrum against direct correlation.
    #[arg(long, value_enum, default_value_t = NaiveMode::Auto)]
    pub naive: NaiveMode,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<Table1Error> for CliError {
    fn from(e: Table1Error) -> Self {
        match e {
            Table1Error::Field(e) => e.into(),
            Table1Error::Sequence(e) => e.into(),
            Table1Error::Correlation(e) => e.into(),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Field(_) | CliError::Sequence(_) => EXIT_USAGE,
            CliError::Correlation(CorrelationError::OracleMismatch(_)) => EXIT_ORACLE_MISMATCH,
            CliError::Correlation(CorrelationError::ScaleTooLarge(_)) => EXIT_USAGE,
            _ => EXIT_ERROR,
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    BoundViolation,
    TableMismatch,
    WeilViolation,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok => EXIT_OK,
            Verdict::BoundViolation => EXIT_BOUND_VIOLATION,
            Verdict::TableMismatch => EXIT_TABLE_MISMATCH,
            Verdict::WeilViolation => EXIT_WEIL_VIOLATION,
        }
    }
}

/// Runs the command, writing to `--out` or stdout and diagnostics to stderr.
/// Returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    let result = match &config.out {
        Some(path) => File::create(path)
            .map_err(CliError::from)
            .and_then(|f| execute(config, BufWriter::new(f), io::stderr())),
        None => execute(config, io::stdout().lock(), io::stderr()),
    };
    match result {
        Ok(v) => v.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute<W: Write, E: Write>(
    config: &RunConfig,
    mut out: W,
    mut diag: E,
) -> Result<Verdict, CliError> {
    let verdict = match config.command {
        Command::FieldInfo => field_info(config, &mut out)?,
        Command::GenFamily => gen_family(config, &mut out)?,
        Command::Spectrum => spectrum(config, &mut out)?,
        Command::Table1 => table1_cmd(config, &mut out, &mut diag)?,
        Command::WeilSweep => weil_sweep(config, &mut out)?,
    };
    out.flush()?;
    Ok(verdict)
}

fn field(config: &RunConfig) -> Result<Arc<FieldCtx>, CliError> {
    let (Some(p), Some(n)) = (config.p, config.n) else {
        return Err(CliError::Usage("--p and --n are required".into()));
    };
    Ok(Arc::new(build_field(p as u64, n, None)?))
}

/// Parses "alpha^k", "1", or comma-separated base-field coefficients.
pub fn parse_beta(ctx: &FieldCtx, text: &str) -> Result<FieldElement, CliError> {
    let t = text.trim();
    if let Some(k) = t.strip_prefix("alpha^") {
        let k: i64 = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad exponent in beta {t:?}")))?;
        return Ok(ctx.alpha_pow(k));
    }
    let mut coeffs = t
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("beta {t:?} is neither alpha^k nor c0,c1,...")))?;
    if coeffs.len() < ctx.n() as usize {
        coeffs.resize(ctx.n() as usize, 0);
    }
    let beta = ctx.element(&coeffs)?;
    if beta.is_zero() {
        return Err(SequenceError::ZeroBeta.into());
    }
    Ok(beta)
}

fn beta(config: &RunConfig, ctx: &FieldCtx) -> Result<FieldElement, CliError> {
    match &config.beta {
        Some(text) => parse_beta(ctx, text),
        None => Ok(ctx.one()),
    }
}

fn spectrum_options(config: &RunConfig) -> SpectrumOptions {
    let naive_check = match config.naive {
        NaiveMode::Auto => NaiveCheck::Auto,
        NaiveMode::Off => NaiveCheck::Off,
        NaiveMode::Full => NaiveCheck::Full,
        NaiveMode::Sampled => NaiveCheck::Sampled {
            pairs: 64,
            seed: config.seed.unwrap_or(0),
        },
    };
    SpectrumOptions {
        threads: config.threads,
        naive_check,
    }
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    n: u32,
    q: u32,
    #[serde(rename = "N")]
    half_period: u32,
    modulus: Vec<u32>,
    alpha: Vec<u32>,
    family_size: u32,
    decimations: [u64; 2],
}

fn field_info<W: Write>(config: &RunConfig, out: &mut W) -> Result<Verdict, CliError> {
    let ctx = field(config)?;
    let desc = ctx.descriptor();
    let half = ctx.half_order();
    let info = FieldInfo {
        p: ctx.p(),
        n: ctx.n(),
        q: ctx.q(),
        half_period: half,
        modulus: desc.modulus,
        alpha: desc.alpha,
        family_size: 4 * half,
        decimations: [4, half as u64 + 1],
    };
    match config.format.unwrap_or(Format::Text) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &info)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "p,n,q,N,modulus,alpha")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                info.p,
                info.n,
                info.q,
                info.half_period,
                join(&info.modulus, " "),
                join(&info.alpha, " ")
            )?;
        }
        Format::Text => {
            writeln!(
                out,
                "GF({}^{}), q = {}, N = {}",
                info.p, info.n, info.q, info.half_period
            )?;
            writeln!(
                out,
                "modulus (constant term first): {}",
                join(&info.modulus, " ")
            )?;
            writeln!(out, "alpha: {}", join(&info.alpha, " "))?;
            writeln!(out, "family size 4N = {}", info.family_size)?;
            writeln!(out, "decimations: 4, N+1 = {}", half + 1)?;
        }
    }
    Ok(Verdict::Ok)
}

fn join(v: &[u32], sep: &str) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn gen_family<W: Write>(config: &RunConfig, out: &mut W) -> Result<Verdict, CliError> {
    let ctx = field(config)?;
    let d = config.d.unwrap_or(Decimation::Four);
    let spec = FamilySpec::new(ctx.clone(), d, beta(config, &ctx)?)?;
    write_family_dump(&spec, out)?;
    Ok(Verdict::Ok)
}

fn spectrum<W: Write>(config: &RunConfig, out: &mut W) -> Result<Verdict, CliError> {
    let ctx = field(config)?;
    let b = beta(config, &ctx)?;
    let opts = spectrum_options(config);
    let reports = match config.d {
        Some(d) => vec![family_spectrum(
            &FamilySpec::new(ctx.clone(), d, b)?,
            &opts,
        )?],
        None => {
            let four = FamilySpec::new(ctx.clone(), Decimation::Four, b)?;
            let half = FamilySpec::new(ctx.clone(), Decimation::HalfPlusOne, b)?;
            vec![
                family_spectrum(&four, &opts)?,
                family_spectrum(&half, &opts)?,
                merged_spectrum(&four, &half, &opts)?,
            ]
        }
    };
    write_reports(&reports, config.format.unwrap_or(Format::Json), out)?;
    let ok = reports.iter().all(|r| r.pass && r.linear_case_pass);
    Ok(if ok {
        Verdict::Ok
    } else {
        Verdict::BoundViolation
    })
}

fn write_reports<W: Write>(
    reports: &[SpectrumReport],
    format: Format,
    out: &mut W,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            if let [single] = reports {
                serde_json::to_writer_pretty(&mut *out, single)?;
            } else {
                serde_json::to_writer_pretty(&mut *out, reports)?;
            }
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "p",
                "n",
                "N",
                "interpretation",
                "c_max",
                "cmax_over_sqrtN",
                "distinct_values",
                "bound",
                "pass",
            ])?;
            for r in reports {
                w.write_record([
                    r.p.to_string(),
                    r.n.to_string(),
                    r.half_period.to_string(),
                    r.interpretation.clone(),
                    format!("{:.6}", r.c_max),
                    r.c_max_over_sqrt_n_4dp.clone(),
                    r.distinct_count.to_string(),
                    format!("{:.4}", r.bound),
                    r.pass.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in reports {
                writeln!(
                    out,
                    "p={} n={} N={} {}: C_max = {:.6}, C_max/sqrt(N) = {}, {} distinct values, bound {:.4} {}",
                    r.p,
                    r.n,
                    r.half_period,
                    r.interpretation,
                    r.c_max,
                    r.c_max_over_sqrt_n_4dp,
                    r.distinct_count,
                    r.bound,
                    if r.pass { "holds" } else { "VIOLATED" }
                )?;
            }
        }
    }
    Ok(())
}

fn table1_cmd<W: Write, E: Write>(
    config: &RunConfig,
    out: &mut W,
    diag: &mut E,
) -> Result<Verdict, CliError> {
    let rows: Vec<_> = table1::rows(config.extended || config.p.is_some())
        .into_iter()
        .filter(|r| config.p.is_none_or(|p| p == r.p) && config.n.is_none_or(|n| n == r.n))
        .collect();
    if rows.is_empty() {
        return Err(CliError::Usage("no table row matches --p/--n".into()));
    }
    let outcomes = table1::reproduce(&rows, &spectrum_options(config))?;
    match config.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            table1::write_csv(&outcomes, &mut *out)?;
            table1::write_text(&outcomes, &mut *diag)?;
        }
        Format::Text => table1::write_text(&outcomes, &mut *out)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &outcomes)?;
            writeln!(out)?;
        }
    }
    Ok(if outcomes.iter().any(|o| !o.bound_pass) {
        Verdict::BoundViolation
    } else if outcomes.iter().any(|o| !o.table_match()) {
        Verdict::TableMismatch
    } else {
        Verdict::Ok
    })
}

#[derive(Serialize)]
struct SweepSummary {
    p: u32,
    n: u32,
    seed: u64,
    trials: usize,
    trials_passed: usize,
    checks: usize,
    violations: usize,
}

fn weil_sweep<W: Write>(config: &RunConfig, out: &mut W) -> Result<Verdict, CliError> {
    let ctx = field(config)?;
    if config.max_degree >= 8 {
        return Err(CliError::Usage("--max-degree must be below 8".into()));
    }
    if config.exhaustive {
        let summary = exhaustive_weil_sweep(&ctx, config.max_degree);
        write_exhaustive(&ctx, config, &summary, out)?;
        let bad = summary.hybrid_violations + summary.additive_violations;
        return Ok(if bad == 0 {
            Verdict::Ok
        } else {
            Verdict::WeilViolation
        });
    }
    let Some(seed) = config.seed else {
        return Err(CliError::Usage("weil-sweep needs --seed".into()));
    };
    let records = random_weil_sweep(&ctx, config.trials, config.max_degree, seed);
    let mut trial_ok = vec![true; config.trials];
    for (t, r) in &records {
        trial_ok[*t] &= r.pass;
    }
    let summary = SweepSummary {
        p: ctx.p(),
        n: ctx.n(),
        seed,
        trials: config.trials,
        trials_passed: trial_ok.iter().filter(|&&ok| ok).count(),
        checks: records.len(),
        violations: records.iter().filter(|(_, r)| !r.pass).count(),
    };
    match config.format.unwrap_or(Format::Text) {
        Format::Text => writeln!(
            out,
            "GF({}^{}) seed {}: {}/{} trials pass ({} checks, {} violations)",
            summary.p,
            summary.n,
            seed,
            summary.trials_passed,
            summary.trials,
            summary.checks,
            summary.violations
        )?,
        Format::Json => {
            #[derive(Serialize)]
            struct Full<'a> {
                summary: &'a SweepSummary,
                records: Vec<&'a crate::char_sums::weil::WeilSweepRecord>,
            }
            let full = Full {
                summary: &summary,
                records: records.iter().map(|(_, r)| r).collect(),
            };
            serde_json::to_writer_pretty(&mut *out, &full)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["trial", "kind", "f", "magnitude", "bound", "pass"])?;
            for (t, r) in &records {
                let f = r
                    .f_coeffs
                    .iter()
                    .map(|c| join(c, " "))
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    t.to_string(),
                    serde_json::to_value(r.kind)?
                        .as_str()
                        .unwrap_or_default()
                        .to_string(),
                    f,
                    format!("{:.9}", r.magnitude),
                    format!("{:.9}", r.bound),
                    r.pass.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(if summary.violations == 0 {
        Verdict::Ok
    } else {
        Verdict::WeilViolation
    })
}

fn write_exhaustive<W: Write>(
    ctx: &FieldCtx,
    config: &RunConfig,
    s: &ExhaustiveSummary,
    out: &mut W,
) -> Result<(), CliError> {
    match config.format.unwrap_or(Format::Text) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, s)?;
            writeln!(out)?;
        }
        _ => writeln!(
            out,
            "GF({}^{}) deg <= {}: hybrid {} checked / {} violations, additive {} checked / {} violations",
            ctx.p(),
            ctx.n(),
            config.max_degree,
            s.hybrid_checked,
            s.hybrid_violations,
            s.additive_checked,
            s.additive_violations
        )?,
    }
    Ok(())
}
