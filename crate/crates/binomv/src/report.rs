//! Text and JSON renderings of verification reports.

use binomv_core::arith::DIGITS_CAP;
use binomv_core::{BallReal, Report, Verdict, VerdictStatus};
use serde::Serialize;

/// A ball rendered as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallRecord {
    pub decimal: String,
    pub radius_decimal: String,
}

impl BallRecord {
    /// Renders `b` with one digit more than `digits` certified digits.
    pub fn new(b: &BallReal, digits: u64) -> BallRecord {
        BallRecord { decimal: b.to_decimal_certified(digits), radius_decimal: b.radius_decimal() }
    }
}

/// One verdict, as emitted by `verify --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub name: String,
    pub status: &'static str,
    pub digits_certified: u64,
    pub lhs: Option<BallRecord>,
    pub rhs: Option<BallRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_decimal: Option<String>,
    pub method: Option<&'static str>,
    pub terms_used: u64,
    pub elapsed_ms: u64,
    pub precision_bits: u32,
    pub expectation: Option<&'static str>,
    pub expectation_met: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl VerdictRecord {
    pub fn new(v: &Verdict) -> VerdictRecord {
        let digits = v.digits_certified();
        let shown = |b: &BallReal| {
            let d = if digits == 0 { binomv_core::arith::ball_digits(b).min(DIGITS_CAP) } else { digits };
            BallRecord::new(b, d)
        };
        VerdictRecord {
            name: v.name.clone(),
            status: v.status.as_str(),
            digits_certified: digits,
            lhs: v.lhs.as_ref().map(shown),
            rhs: v.rhs.as_ref().map(shown),
            gap_decimal: v.gap().map(|g| g.to_decimal_certified(digits)),
            method: v.method.map(|m| m.as_str()),
            terms_used: v.terms_used,
            elapsed_ms: v.elapsed_ms,
            precision_bits: v.precision,
            expectation: v.expectation.map(|e| e.as_str()),
            expectation_met: v.expectation_met(),
            reason: match &v.status {
                VerdictStatus::Inconclusive { reason } => Some(reason.clone()),
                _ => None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalsRecord {
    pub total: usize,
    pub confirmed: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub mismatches: usize,
}

/// Whole-run record for `verify --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub digits: u64,
    pub precision_schedule: Vec<u32>,
    pub totals: TotalsRecord,
    pub exit_code: i32,
    pub verdicts: Vec<VerdictRecord>,
}

impl ReportRecord {
    pub fn new(r: &Report) -> ReportRecord {
        let t = &r.totals;
        ReportRecord {
            digits: r.config.digits,
            precision_schedule: r.precision_schedule.clone(),
            totals: TotalsRecord {
                total: t.total,
                confirmed: t.confirmed,
                refuted: t.refuted,
                inconclusive: t.inconclusive,
                mismatches: t.mismatches,
            },
            exit_code: r.exit_code(),
            verdicts: r.verdicts.iter().map(VerdictRecord::new).collect(),
        }
    }
}

pub fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(&ReportRecord::new(r)).expect("report serializes")
}

/// Human-readable report: one line per verdict plus a summary line.
pub fn to_text(r: &Report) -> String {
    let width = r.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for v in &r.verdicts {
        let detail = match &v.status {
            VerdictStatus::Confirmed { digits } => format!("{digits} digits"),
            VerdictStatus::Refuted { gap, .. } => {
                format!("gap {} ± {}", gap.to_decimal_certified(v.digits_certified().min(12)), gap.radius_decimal())
            }
            VerdictStatus::Inconclusive { reason } => reason.clone(),
        };
        let method = v.method.map_or("-", |m| m.as_str());
        let flag = if v.is_mismatch() {
            "  MISMATCH"
        } else if v.expectation_met() == Some(true) {
            "  as expected"
        } else {
            ""
        };
        out.push_str(&format!(
            "{:<width$}  {:<12}  {:<40}  {:<6} {:>7} terms {:>6} ms{}\n",
            v.name,
            v.status.as_str(),
            detail,
            method,
            v.terms_used,
            v.elapsed_ms,
            flag,
        ));
    }
    let t = &r.totals;
    out.push_str(&format!(
        "{} identities at {} digits: {} confirmed, {} refuted, {} inconclusive, {} mismatches\n",
        t.total, r.config.digits, t.confirmed, t.refuted, t.inconclusive, t.mismatches
    ));
    out
}
