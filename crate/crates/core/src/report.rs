//! Structured results of verification checks and suites.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::precision::PrecisionContext;
use crate::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named verification: either a float comparison with its
/// maximal deviation and tolerance, or an exact rational comparison with a
/// mismatch flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    /// The identity or property being checked, in words.
    pub anchor: String,
    /// Points or ranges the check sampled.
    pub points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_mismatch: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: CheckStatus,
    pub runtime_ms: u64,
}

impl CheckReport {
    /// Float-valued check: passes iff the deviation is below the tolerance.
    pub fn float_check(
        id: &str,
        anchor: &str,
        points: Vec<String>,
        max_deviation: &Real,
        tolerance: &Real,
        started: Instant,
    ) -> Self {
        let status = if max_deviation < tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckReport {
            id: id.into(),
            anchor: anchor.into(),
            points,
            max_deviation: Some(max_deviation.to_f64()),
            tolerance: Some(tolerance.to_f64()),
            exact_mismatch: None,
            note: None,
            status,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// Exact rational check: passes iff nothing mismatched.
    pub fn exact_check(
        id: &str,
        anchor: &str,
        points: Vec<String>,
        mismatch: bool,
        started: Instant,
    ) -> Self {
        CheckReport {
            id: id.into(),
            anchor: anchor.into(),
            points,
            max_deviation: None,
            tolerance: None,
            exact_mismatch: Some(mismatch),
            note: None,
            status: if mismatch {
                CheckStatus::Fail
            } else {
                CheckStatus::Pass
            },
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn skipped(id: &str, anchor: &str, note: &str) -> Self {
        CheckReport {
            id: id.into(),
            anchor: anchor.into(),
            points: Vec::new(),
            max_deviation: None,
            tolerance: None,
            exact_mismatch: None,
            note: Some(note.into()),
            status: CheckStatus::Skipped,
            runtime_ms: 0,
        }
    }

    /// A check that could not run to completion.
    pub fn errored(id: &str, anchor: &str, err: &crate::Error, started: Instant) -> Self {
        CheckReport {
            id: id.into(),
            anchor: anchor.into(),
            points: Vec::new(),
            max_deviation: None,
            tolerance: None,
            exact_mismatch: None,
            note: Some(format!("error: {err}")),
            status: CheckStatus::Fail,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContextSummary {
    pub prec: u32,
    pub guard: u32,
    pub order: usize,
    pub cutoff: usize,
    pub step: f64,
}

impl From<&PrecisionContext> for ContextSummary {
    fn from(ctx: &PrecisionContext) -> Self {
        ContextSummary {
            prec: ctx.prec(),
            guard: ctx.guard(),
            order: ctx.order,
            cutoff: ctx.cutoff,
            step: ctx.step,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Full result of one suite run; serializes to the report JSON schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub context: ContextSummary,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl SuiteReport {
    /// Assemble from check results; checks are sorted by id so the report
    /// is stable regardless of completion order.
    pub fn new(suite: &str, ctx: &PrecisionContext, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = Summary {
            pass: checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
            fail: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
            skipped: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Skipped)
                .count(),
        };
        SuiteReport {
            suite: suite.into(),
            context: ctx.into(),
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat CSV rows: id,status,max_deviation,tolerance,exact_mismatch,runtime_ms.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,status,max_deviation,tolerance,exact_mismatch,runtime_ms\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.id,
                status,
                c.max_deviation.map_or(String::new(), |d| format!("{d:e}")),
                c.tolerance.map_or(String::new(), |t| format!("{t:e}")),
                c.exact_mismatch.map_or(String::new(), |m| m.to_string()),
                c.runtime_ms
            ));
        }
        out
    }
}

/// A named suite: its check ids, the context, and the tau sample points.
#[derive(Clone, Debug)]
pub struct SuiteManifest {
    pub suite: String,
    pub check_ids: Vec<String>,
    pub ctx: PrecisionContext,
    pub points: Vec<(f64, f64)>,
}
