//! Named, machine-checkable verdicts for the axioms of plane geometry in the
//! limited subplane `L×L`.
//!
//! Negative checks build explicit counterexamples and re-verify them by
//! substitution. Universally quantified claims are checked by seeded sampling
//! plus fixed adversarial cases and are labelled "sampled" in their notes.

mod negative;
mod positive;
mod sample;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use negative::{
    check_archimedes_failure, check_circumcircle_failure, check_legendre_failure,
    check_not_hyperbolic, check_parallel_failure, check_wallis_failure,
};
pub use positive::{check_absolute_suite, check_angle_sum};

use crate::ext::ExtError;
use crate::field::{FieldError, Precision};
use crate::geom::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Indeterminate => "Indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub order_used: i64,
    pub notes: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} (order {})", self.name, self.verdict, self.order_used)?;
        for w in &self.witnesses {
            writeln!(f, "  {}: {}", w.description, w.value)?;
        }
        if !self.notes.is_empty() {
            for line in self.notes.lines() {
                writeln!(f, "  note: {line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    Parallel,
    AngleSum,
    Circumcircle,
    Wallis,
    Legendre,
    LimitingRays,
    Archimedes,
    Absolute,
}

impl CheckName {
    pub const ALL: [CheckName; 8] = [
        CheckName::Parallel,
        CheckName::AngleSum,
        CheckName::Circumcircle,
        CheckName::Wallis,
        CheckName::Legendre,
        CheckName::LimitingRays,
        CheckName::Archimedes,
        CheckName::Absolute,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Parallel => "parallel",
            CheckName::AngleSum => "angle-sum",
            CheckName::Circumcircle => "circumcircle",
            CheckName::Wallis => "wallis",
            CheckName::Legendre => "legendre",
            CheckName::LimitingRays => "limiting-rays",
            CheckName::Archimedes => "archimedes",
            CheckName::Absolute => "absolute",
        }
    }

    /// The verdict the semi-Euclidean plane should get.
    pub fn expected(self) -> Verdict {
        match self {
            CheckName::AngleSum | CheckName::Absolute => Verdict::Holds,
            _ => Verdict::Fails,
        }
    }

    /// Sample count used when none is given.
    pub fn default_trials(self) -> usize {
        match self {
            CheckName::Parallel => 100,
            CheckName::AngleSum => 200,
            CheckName::Legendre => 100,
            CheckName::LimitingRays => 20,
            CheckName::Absolute => 50,
            _ => 1,
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check name: {0}")]
pub struct UnknownCheckName(pub String);

impl FromStr for CheckName {
    type Err = UnknownCheckName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownCheckName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl CheckError {
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            CheckError::Field(FieldError::IndeterminateZero)
                | CheckError::Geom(GeomError::Field(FieldError::IndeterminateZero))
                | CheckError::Ext(ExtError::Field(FieldError::IndeterminateZero))
        )
    }
}

/// Shared settings of a check run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub precision: Precision,
    pub seed: u64,
    /// Sample count for sampled checks; `None` picks each check's default.
    pub trials: Option<usize>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            precision: Precision::default(),
            seed: 42,
            trials: None,
        }
    }
}

fn run_once(name: CheckName, cfg: &CheckConfig, prec: Precision) -> Result<CheckReport, CheckError> {
    let n = cfg.trials.unwrap_or_else(|| name.default_trials());
    match name {
        CheckName::Parallel => check_parallel_failure(n, prec),
        CheckName::AngleSum => check_angle_sum(n, cfg.seed, prec),
        CheckName::Circumcircle => check_circumcircle_failure(prec),
        CheckName::Wallis => check_wallis_failure(prec),
        CheckName::Legendre => check_legendre_failure(n, cfg.seed, prec),
        CheckName::LimitingRays => check_not_hyperbolic(n, cfg.seed, prec),
        CheckName::Archimedes => check_archimedes_failure(prec),
        CheckName::Absolute => check_absolute_suite(n, cfg.seed, prec),
    }
}

/// Runs a check, retrying once at order `2K` when a sign could not be
/// resolved. A second failure yields an `Indeterminate` report.
pub fn run_check(name: CheckName, cfg: &CheckConfig) -> Result<CheckReport, CheckError> {
    let first = match run_once(name, cfg, cfg.precision) {
        Err(e) if e.is_indeterminate() => e,
        other => return other,
    };
    let doubled = cfg.precision.doubled();
    match run_once(name, cfg, doubled) {
        Err(e) if e.is_indeterminate() => Ok(CheckReport {
            name: name.as_str().to_string(),
            verdict: Verdict::Indeterminate,
            witnesses: vec![],
            order_used: doubled.order,
            notes: format!(
                "{first} at order {}; retry at order {} also failed",
                cfg.precision.order, doubled.order
            ),
        }),
        Ok(mut r) => {
            let retry = format!("{first} at order {}; retried at order {}", cfg.precision.order, doubled.order);
            r.notes = if r.notes.is_empty() { retry } else { format!("{}\n{retry}", r.notes) };
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// Runs independent checks concurrently; results come back in input order.
pub fn run_checks(names: &[CheckName], cfg: &CheckConfig) -> Vec<Result<CheckReport, CheckError>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&n| s.spawn(move || run_check(n, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}

/// Accumulates witnesses and notes for one report.
pub(crate) struct Report {
    name: CheckName,
    order: i64,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
}

impl Report {
    pub(crate) fn new(name: CheckName, prec: Precision) -> Self {
        Report {
            name,
            order: prec.order,
            witnesses: vec![],
            notes: vec![],
        }
    }

    pub(crate) fn witness(&mut self, description: impl Into<String>, value: impl fmt::Display) {
        self.witnesses.push(Witness {
            description: description.into(),
            value: value.to_string(),
        });
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub(crate) fn finish(self, verdict: Verdict) -> CheckReport {
        CheckReport {
            name: self.name.as_str().to_string(),
            verdict,
            witnesses: self.witnesses,
            order_used: self.order,
            notes: self.notes.join("\n"),
        }
    }
}

/// `Fails` when the counterexample was confirmed, `Holds` otherwise.
pub(crate) fn refuted(confirmed: bool) -> Verdict {
    if confirmed {
        Verdict::Fails
    } else {
        Verdict::Holds
    }
}
