//! Turns both sides of an identity into certified balls and a verdict.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{ball_digits, ArithError, BallReal, Rational};
use crate::constants::ConstError;
use crate::lang::{builtin_registry, Expectation, Identity};
use crate::series::{SeriesError, SumMethod, SumPolicy};

mod compile;
mod eval;

pub use compile::{compile_sum, compile_term, CompiledSum};
pub use eval::{evaluate, evaluate_with, start_precision, EvalOptions, Evaluation, SumInfo, DEFAULT_MAX_TERMS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unsupported term shape: {0}")]
    UnsupportedTermShape(String),
    #[error("unbound parameter '{0}'")]
    UnboundParam(String),
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Const(#[from] ConstError),
}

/// Default number of precision doublings after the first attempt.
pub const DEFAULT_MAX_REFINEMENTS: u32 = 3;
/// Refuted requires `|mid_l − mid_r| > margin·(rad_l + rad_r)`.
pub const DEFAULT_MARGIN: u32 = 8;

/// Source of elapsed time; `no_std` callers may use [`NoClock`].
pub trait Clock {
    fn now_ms(&self) -> u64;
}

/// Clock that always reads zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_ms(&self) -> u64 {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub digits: u64,
    pub max_refinements: u32,
    pub policy: SumPolicy,
    pub max_terms: u64,
    pub margin: u32,
}

impl VerifyConfig {
    pub fn new(digits: u64) -> Self {
        VerifyConfig {
            digits,
            max_refinements: DEFAULT_MAX_REFINEMENTS,
            policy: SumPolicy::Auto,
            max_terms: DEFAULT_MAX_TERMS,
            margin: DEFAULT_MARGIN,
        }
    }

    /// Working precision of each attempt, in bits.
    pub fn precision_schedule(&self) -> Vec<u32> {
        let p0 = start_precision(self.digits);
        (0..=self.max_refinements).map(|k| p0.saturating_mul(1 << k.min(16))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictStatus {
    /// Both sides agree; `digits` certified on their difference.
    Confirmed { digits: u64 },
    /// The sides are separated; `gap = lhs − rhs`.
    Refuted { gap: BallReal, lhs: BallReal, rhs: BallReal },
    Inconclusive { reason: String },
}

impl VerdictStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictStatus::Confirmed { .. } => "confirmed",
            VerdictStatus::Refuted { .. } => "refuted",
            VerdictStatus::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, VerdictStatus::Confirmed { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, VerdictStatus::Refuted { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub status: VerdictStatus,
    /// Last evaluated sides, when evaluation succeeded.
    pub lhs: Option<BallReal>,
    pub rhs: Option<BallReal>,
    pub method: Option<SumMethod>,
    pub terms_used: u64,
    pub elapsed_ms: u64,
    /// Precision of the deciding attempt, in bits.
    pub precision: u32,
    pub expectation: Option<Expectation>,
}

impl Verdict {
    /// Certified digits: of the difference when confirmed, of the gap when refuted.
    pub fn digits_certified(&self) -> u64 {
        match &self.status {
            VerdictStatus::Confirmed { digits } => *digits,
            VerdictStatus::Refuted { gap, .. } => ball_digits(gap),
            VerdictStatus::Inconclusive { .. } => 0,
        }
    }

    /// `None` without an expectation; inconclusive never meets one.
    pub fn expectation_met(&self) -> Option<bool> {
        self.expectation.map(|e| match e {
            Expectation::Confirmed => self.status.is_confirmed(),
            Expectation::Refuted => self.status.is_refuted(),
        })
    }

    /// Definite result contradicting the expectation, or an unexpected refutation.
    pub fn is_mismatch(&self) -> bool {
        match self.expectation {
            Some(_) => self.expectation_met() == Some(false) && !self.is_inconclusive(),
            None => self.status.is_refuted(),
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.status, VerdictStatus::Inconclusive { .. })
    }

    pub fn gap(&self) -> Option<&BallReal> {
        match &self.status {
            VerdictStatus::Refuted { gap, .. } => Some(gap),
            _ => None,
        }
    }
}

/// Verifies with default policy and margin.
pub fn verify(identity: &Identity, digits: u64, max_refinements: u32) -> Verdict {
    let cfg = VerifyConfig { max_refinements, ..VerifyConfig::new(digits) };
    verify_with(identity, &cfg, &NoClock)
}

pub fn verify_with(identity: &Identity, cfg: &VerifyConfig, clock: &dyn Clock) -> Verdict {
    let t0 = clock.now_ms();
    let mut v = Verdict {
        name: identity.name.clone(),
        status: VerdictStatus::Inconclusive { reason: String::new() },
        lhs: None,
        rhs: None,
        method: None,
        terms_used: 0,
        elapsed_ms: 0,
        precision: 0,
        expectation: identity.expectation,
    };
    let target = Rational::frac(1, 2) / &Rational::from(10).pow(cfg.digits as i64).expect("nonzero");
    let schedule = cfg.precision_schedule();
    let mut last_reason = String::from("precision schedule exhausted");
    for &precision in &schedule {
        v.precision = precision;
        let opts = EvalOptions { precision, policy: cfg.policy, max_terms: cfg.max_terms };
        let sides = evaluate_with(&identity.lhs, &identity.params, &opts)
            .and_then(|l| Ok((l, evaluate_with(&identity.rhs, &identity.params, &opts)?)));
        let (l, r) = match sides {
            Ok(x) => x,
            Err(e) => {
                last_reason = e.to_string();
                break;
            }
        };
        if let Some(s) = l.sum.or(r.sum) {
            v.method = Some(s.method);
            v.terms_used = s.terms_used;
        }
        let (lb, rb) = (l.value, r.value);
        v.lhs = Some(lb.clone());
        v.rhs = Some(rb.clone());
        if !lb.overlaps(&rb) && lb.separation_exceeds(&rb, cfg.margin) {
            v.status = VerdictStatus::Refuted { gap: lb.sub(&rb), lhs: lb, rhs: rb };
            v.elapsed_ms = clock.now_ms().saturating_sub(t0);
            return v;
        }
        if lb.overlaps(&rb) && lb.radius_le(&target) && rb.radius_le(&target) {
            v.status = VerdictStatus::Confirmed { digits: ball_digits(&lb.sub(&rb)) };
            v.elapsed_ms = clock.now_ms().saturating_sub(t0);
            return v;
        }
        last_reason = alloc::format!("undecided at {precision} bits");
    }
    v.status = VerdictStatus::Inconclusive { reason: last_reason };
    v.elapsed_ms = clock.now_ms().saturating_sub(t0);
    v
}

/// Verdict counts of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Totals {
    pub total: usize,
    pub confirmed: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
    pub totals: Totals,
    pub config: VerifyConfig,
    pub precision_schedule: Vec<u32>,
}

impl Report {
    /// Joins verdicts (already in input order) into a report.
    pub fn assemble(verdicts: Vec<Verdict>, config: VerifyConfig) -> Report {
        let mut t = Totals { total: verdicts.len(), ..Totals::default() };
        for v in &verdicts {
            match v.status {
                VerdictStatus::Confirmed { .. } => t.confirmed += 1,
                VerdictStatus::Refuted { .. } => t.refuted += 1,
                VerdictStatus::Inconclusive { .. } => t.inconclusive += 1,
            }
            if v.is_mismatch() {
                t.mismatches += 1;
            }
        }
        Report { precision_schedule: config.precision_schedule(), verdicts, totals: t, config }
    }

    /// Process exit status: 2 on any inconclusive verdict, 1 on a mismatch, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.totals.inconclusive > 0 {
            2
        } else if self.totals.mismatches > 0 {
            1
        } else {
            0
        }
    }
}

/// Shell-style match with `*` and `?`.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let n: Vec<char> = name.chars().collect();
    let (mut i, mut j) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while j < n.len() {
        if i < p.len() && (p[i] == '?' || p[i] == n[j]) {
            i += 1;
            j += 1;
        } else if i < p.len() && p[i] == '*' {
            star = Some((i, j));
            i += 1;
        } else if let Some((si, sj)) = star {
            i = si + 1;
            j = sj + 1;
            star = Some((si, sj + 1));
        } else {
            return false;
        }
    }
    p[i..].iter().all(|c| *c == '*')
}

/// Registry entries whose names match `filter` (all when `None`), in registry order.
pub fn select(identities: Vec<Identity>, filter: Option<&str>) -> Vec<Identity> {
    identities.into_iter().filter(|id| filter.map_or(true, |f| glob_match(f, &id.name))).collect()
}

/// Verifies the builtin registry sequentially.
pub fn run_registry(filter: Option<&str>, digits: u64) -> Report {
    let cfg = VerifyConfig::new(digits);
    run_identities(&select(builtin_registry(), filter), &cfg, &NoClock)
}

pub fn run_identities(identities: &[Identity], cfg: &VerifyConfig, clock: &dyn Clock) -> Report {
    let verdicts = identities.iter().map(|id| verify_with(id, cfg, clock)).collect();
    Report::assemble(verdicts, *cfg)
}
