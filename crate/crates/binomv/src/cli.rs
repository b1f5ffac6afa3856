//! Command-line interface: argument definitions and command implementations.
//!
//! Each command writes its normal output to `out`, diagnostics to `err`, and
//! returns the process exit status: 0 success, 1 mismatch or unexpected
//! refutation, 2 inconclusive result or input error.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use binomv_core::lang::{parse_expr, parse_identities, serialize, builtin_registry};
use binomv_core::series::{sum_with, SumPolicy, Tolerance};
use binomv_core::verify::{compile_sum, evaluate_with, glob_match, start_precision, EvalOptions, SumInfo, VerifyConfig, VerifyError, DEFAULT_MAX_REFINEMENTS, DEFAULT_MAX_TERMS};
use binomv_core::{BallReal, Expr, Identity, ParseError, QuadExt, Rational, TailMode};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bfile::{check_digits, resolve_anchor, BFile};
use crate::report::{self, BallRecord};
use crate::run::{default_jobs, verify_all};

#[derive(Debug, Parser)]
#[command(name = "binomv", version, about = "Certified verification of central binomial series identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify registry identities or identity files.
    Verify(VerifyArgs),
    /// Evaluate an expression to a certified ball.
    Eval(EvalArgs),
    /// Sum a single series and report how it was summed.
    Sum(SumArgs),
    /// Compare a series value with an OEIS b-file of its decimal digits.
    OeisCheck(OeisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Direct,
    Cvz,
    Euler,
}

impl From<Method> for SumPolicy {
    fn from(m: Method) -> SumPolicy {
        match m {
            Method::Auto => SumPolicy::Auto,
            Method::Direct => SumPolicy::Direct,
            Method::Cvz => SumPolicy::Cvz,
            Method::Euler => SumPolicy::Euler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Target number of certified decimal digits.
    #[arg(long, env = "BINOMV_DIGITS", default_value_t = 50, value_parser = clap::value_parser!(u64).range(10..=10000))]
    pub digits: u64,
    /// Summation method for series.
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Term budget per series.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: u64,
}

#[derive(Debug, Clone, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).multiple(true).args(["all", "id", "file"])))]
pub struct VerifyArgs {
    /// Every builtin identity.
    #[arg(long, conflicts_with_all = ["id", "file"])]
    pub all: bool,
    /// Identity name or glob pattern (`*`, `?`); filters --file inputs when given with them.
    #[arg(long)]
    pub id: Option<String>,
    /// Identity file; may be repeated.
    #[arg(long)]
    pub file: Vec<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = default_jobs(), value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub jobs: usize,
    /// Precision doublings after the first attempt.
    #[arg(long, default_value_t = DEFAULT_MAX_REFINEMENTS)]
    pub max_refinements: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    pub expression: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SumArgs {
    /// `sum(n=1..inf, body)` or just the body.
    pub series: String,
    /// Summation index when only the body is given.
    #[arg(long, default_value = "n")]
    pub index: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct OeisArgs {
    /// Registry name or OEIS A-number.
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub bfile: PathBuf,
    /// Digits to confirm; defaults to the b-file length.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10000))]
    pub digits: Option<u64>,
    /// Expansion offset; overrides a `# offset` line.
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: u64,
}

/// Runs a parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match cli.command {
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Eval(a) => cmd_eval(&a, out, err),
        Command::Sum(a) => cmd_sum(&a, out, err),
        Command::OeisCheck(a) => cmd_oeis_check(&a, out, err),
    }
}

fn parse_error_at(path: &Path, e: &ParseError) -> String {
    format!("{}:{}", path.display(), e)
}

fn load_identities(a: &VerifyArgs) -> Result<Vec<Identity>, String> {
    let mut ids = Vec::new();
    if a.file.is_empty() {
        ids = builtin_registry();
    }
    for path in &a.file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        ids.extend(parse_identities(&text).map_err(|e| parse_error_at(path, &e))?);
    }
    if let Some(p) = &a.id {
        ids.retain(|id| glob_match(p, &id.name));
        if ids.is_empty() {
            return Err(format!("no identity matches '{p}'"));
        }
    }
    Ok(ids)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let ids = match load_identities(a) {
        Ok(ids) => ids,
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            return Ok(2);
        }
    };
    let cfg = VerifyConfig {
        max_refinements: a.max_refinements,
        policy: a.common.method.into(),
        max_terms: a.common.max_terms,
        ..VerifyConfig::new(a.common.digits)
    };
    let r = verify_all(&ids, &cfg, a.jobs);
    match a.common.format {
        Format::Text => write!(out, "{}", report::to_text(&r))?,
        Format::Json => writeln!(out, "{}", report::to_json(&r))?,
    }
    Ok(r.exit_code())
}

/// A certified value and how it was obtained.
#[derive(Debug, Clone)]
pub struct Evaluated {
    pub expr: Expr,
    pub value: BallReal,
    pub sum: Option<SumInfo>,
    pub precision: u32,
    /// Whether the radius met `½·10^-digits`.
    pub certified: bool,
}

fn half_ulp(digits: u64) -> Rational {
    Rational::frac(1, 2) * Rational::from_int(10).pow(-(digits as i64)).expect("nonzero")
}

/// Evaluates `text` at doubling precisions until the radius meets `digits`.
pub fn eval_text(text: &str, digits: u64, policy: SumPolicy, max_terms: u64) -> Result<Evaluated, String> {
    let expr = parse_expr(text).map_err(|e| e.to_string())?;
    eval_refined(&expr, &BTreeMap::new(), digits, policy, max_terms)
}

/// Like [`eval_text`] for a parsed expression with parameters.
pub fn eval_refined(
    expr: &Expr,
    params: &BTreeMap<String, Expr>,
    digits: u64,
    policy: SumPolicy,
    max_terms: u64,
) -> Result<Evaluated, String> {
    let target = half_ulp(digits);
    let mut precision = start_precision(digits);
    let mut last = None;
    for _ in 0..=DEFAULT_MAX_REFINEMENTS {
        let ev = evaluate_with(expr, params, &EvalOptions { precision, policy, max_terms }).map_err(|e| e.to_string())?;
        let certified = ev.value.radius_le(&target);
        last = Some(Evaluated { expr: expr.clone(), value: ev.value, sum: ev.sum, precision, certified });
        if certified {
            break;
        }
        precision = precision.saturating_mul(2);
    }
    Ok(last.expect("at least one attempt"))
}

#[derive(Serialize)]
struct EvalRecord {
    expression: String,
    value: BallRecord,
    digits_certified: u64,
    certified: bool,
    precision_bits: u32,
    method: Option<&'static str>,
    terms_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_mode: Option<&'static str>,
}

fn certified_digits_shown(b: &BallReal, digits: u64) -> u64 {
    binomv_core::arith::ball_digits(b).min(digits)
}

fn write_eval(out: &mut dyn Write, format: Format, rec: &EvalRecord) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(rec).expect("record serializes")),
        Format::Text => {
            writeln!(out, "{}", rec.value.decimal)?;
            writeln!(out, "radius   {}", rec.value.radius_decimal)?;
            writeln!(out, "digits   {}", rec.digits_certified)?;
            if let Some(m) = rec.method {
                write!(out, "method   {m}, {} terms", rec.terms_used)?;
                if let Some(t) = rec.tail_mode {
                    write!(out, ", {t} tail")?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
    }
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let c = &a.common;
    let ev = match eval_text(&a.expression, c.digits, c.method.into(), c.max_terms) {
        Ok(ev) => ev,
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            return Ok(2);
        }
    };
    let shown = certified_digits_shown(&ev.value, c.digits);
    let rec = EvalRecord {
        expression: serialize(&ev.expr),
        value: BallRecord::new(&ev.value, shown),
        digits_certified: shown,
        certified: ev.certified,
        precision_bits: ev.precision,
        method: ev.sum.map(|s| s.method.as_str()),
        terms_used: ev.sum.map_or(0, |s| s.terms_used),
        tail_mode: None,
    };
    write_eval(out, c.format, &rec)?;
    if !ev.certified {
        writeln!(err, "error: radius {} exceeds the {}-digit target", rec.value.radius_decimal, c.digits)?;
        return Ok(2);
    }
    Ok(0)
}

fn tail_name(t: TailMode) -> &'static str {
    match t {
        TailMode::Alternating => "alternating",
        TailMode::Geometric => "geometric",
        TailMode::PowerLaw => "power-law",
        TailMode::None => "none",
    }
}

fn sum_text(a: &SumArgs) -> Result<(Expr, BallReal, binomv_core::SumResult), String> {
    let text = a.series.trim();
    let expr = if text.starts_with("sum(") {
        parse_expr(text)
    } else {
        parse_expr(&format!("sum({}=1..inf, {text})", a.index))
    }
    .map_err(|e| e.to_string())?;
    let Expr::Sum(index, body) = &expr else {
        return Err(String::from("expected a single sum(...) expression"));
    };
    let c = compile_sum(body, index, &BTreeMap::new()).map_err(|e| e.to_string())?;
    if !c.extra.is_empty() {
        let e = VerifyError::UnsupportedTermShape(String::from("transcendental factor; use eval"));
        return Err(e.to_string());
    }
    let bits = binomv_core::arith::digits_to_bits(a.common.digits) + 8;
    let r = sum_with(&c.spec, a.common.method.into(), Tolerance::bits(bits), a.common.max_terms).map_err(|e| e.to_string())?;
    let prec = r.value.prec().max(64);
    let value = if c.scale == QuadExt::one() { r.value.clone() } else { r.value.mul(&BallReal::from_quad(&c.scale, prec)) };
    Ok((expr, value, r))
}

pub fn cmd_sum(a: &SumArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let (expr, value, r) = match sum_text(a) {
        Ok(x) => x,
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            return Ok(2);
        }
    };
    let shown = certified_digits_shown(&value, a.common.digits);
    let rec = EvalRecord {
        expression: serialize(&expr),
        value: BallRecord::new(&value, shown),
        digits_certified: shown,
        certified: value.radius_le(&half_ulp(a.common.digits)),
        precision_bits: value.prec(),
        method: Some(r.method.as_str()),
        terms_used: r.terms_used,
        tail_mode: Some(tail_name(r.tail_mode)),
    };
    write_eval(out, a.common.format, &rec)?;
    Ok(if rec.certified { 0 } else { 2 })
}

#[derive(Serialize)]
struct OeisRecord {
    id: String,
    identity: String,
    offset: i64,
    available: usize,
    required: usize,
    agreed: usize,
    mismatch: Option<MismatchRecord>,
    value: BallRecord,
    status: &'static str,
}

#[derive(Serialize)]
struct MismatchRecord {
    index: i64,
    expected: u8,
    computed: u8,
}

pub fn cmd_oeis_check(a: &OeisArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let text = match std::fs::read_to_string(&a.bfile) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: {}: {e}", a.bfile.display())?;
            return Ok(2);
        }
    };
    let bfile = match BFile::parse(&text) {
        Ok(b) => b,
        Err(e) => {
            writeln!(err, "error: {}: {e}", a.bfile.display())?;
            return Ok(2);
        }
    };
    let name = resolve_anchor(&a.id);
    let Some(identity) = builtin_registry().into_iter().find(|i| i.name == name) else {
        writeln!(err, "error: unknown identity '{}'", a.id)?;
        return Ok(2);
    };
    let available = bfile.entries.len();
    let required = a.digits.map_or(available, |d| (d as usize).min(available));
    let offset = a.offset.unwrap_or_else(|| bfile.effective_offset());
    // Leading zeros and the integer part need digits beyond `available`.
    let lead = (offset.unsigned_abs() as usize).max(1);
    let work = (required + lead + 10).clamp(10, 10000) as u64;
    let ev = match eval_refined(&identity.lhs, &identity.params, work, SumPolicy::Auto, a.max_terms) {
        Ok(ev) => ev,
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            return Ok(2);
        }
    };
    let check = check_digits(&ev.value, &bfile, offset);
    let ok = check.mismatch.is_none() && check.agreed >= required;
    let rec = OeisRecord {
        id: a.id.clone(),
        identity: identity.name.clone(),
        offset,
        available,
        required,
        agreed: check.agreed,
        mismatch: check.mismatch.as_ref().map(|m| MismatchRecord { index: m.index, expected: m.expected, computed: m.computed }),
        value: BallRecord::new(&ev.value, certified_digits_shown(&ev.value, 10_000)),
        status: if ok { "agrees" } else { "mismatch" },
    };
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("record serializes"))?,
        Format::Text => match &check.mismatch {
            Some(m) => writeln!(
                out,
                "{} ({}): first mismatch at index {}: b-file {}, computed {} (agrees to {} digits)",
                a.id, identity.name, m.index, m.expected, m.computed, check.agreed
            )?,
            None => writeln!(out, "{} ({}): agrees to {} digits of {}", a.id, identity.name, check.agreed, available)?,
        },
    }
    Ok(if ok { 0 } else { 1 })
}
