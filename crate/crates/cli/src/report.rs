//! The run report, its JSON form and the fixed-width summary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wallindex_core::conventions;

use crate::config::{ExperimentConfig, Suite};

/// Version of the `report.json` layout; see `schema/report.schema.json`.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// One numeric result with the reference it is checked against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `residual = |value − reference|`, passing when it is within `tolerance`.
    pub fn against(name: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Check {
        Check::with_residual(name, value, reference, (value - reference).abs(), tolerance)
    }

    /// A check with an explicitly computed residual.
    pub fn with_residual(name: impl Into<String>, value: f64, reference: f64, residual: f64, tolerance: f64) -> Check {
        // NaN residuals fail; `+ 0.0` folds negative zeros so reports read cleanly.
        let pass = residual <= tolerance;
        Check { name: name.into(), value: value + 0.0, reference: reference + 0.0, residual: residual + 0.0, tolerance, pass }
    }

    /// A quantity that must vanish.
    pub fn zero(name: impl Into<String>, value: f64, tolerance: f64) -> Check {
        Check::against(name, value, 0.0, tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    /// Set when the suite aborted; it then fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn from_checks(suite: Suite, checks: Vec<Check>) -> SuiteReport {
        SuiteReport { suite, pass: checks.iter().all(|c| c.pass), error: None, checks }
    }

    pub fn failed(suite: Suite, error: String, checks: Vec<Check>) -> SuiteReport {
        SuiteReport { suite, pass: false, error: Some(error), checks }
    }
}

/// Conventions the numbers depend on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub orientation: f64,
    pub orientation_meaning: String,
    pub chern_c1: String,
    pub chern_c2: String,
    pub chern_rank: String,
    pub a_hat: String,
    pub zero_modes: String,
    pub wall_plane: String,
    pub eta_regularization: String,
    pub zero_mode_count: String,
}

impl Conventions {
    pub fn for_config(cfg: &ExperimentConfig) -> Conventions {
        Conventions {
            orientation: cfg.field.orientation,
            orientation_meaning: "global orientation sign: multiplies the bulk integral, the surface term and chirality".into(),
            chern_c1: conventions::CHERN_C1.into(),
            chern_c2: conventions::CHERN_C2.into(),
            chern_rank: conventions::CHERN_RANK.into(),
            a_hat: conventions::AHAT_A2.into(),
            zero_modes: conventions::ZERO_MODES.into(),
            wall_plane: conventions::WALL_PLANE.into(),
            eta_regularization: "Gaussian-regulated signed sums at three cutoffs, two Richardson stages".into(),
            zero_mode_count: format!(
                "|lambda| < tau = {}, chirality-resolved, lattice doublers rejected by low-momentum weight",
                cfg.index.tau
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub schema_version: String,
    pub generator: String,
    pub config: ExperimentConfig,
    pub tolerance_scale: f64,
    pub conventions: Conventions,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(config: ExperimentConfig, tolerance_scale: f64, suites: Vec<SuiteReport>) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION.into(),
            generator: format!("wallindex {}", env!("CARGO_PKG_VERSION")),
            conventions: Conventions::for_config(&config),
            config,
            tolerance_scale,
            pass: suites.iter().all(|s| s.pass),
            suites,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<RunReport> {
        serde_json::from_str(text)
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Fixed-width summary, one row per check in report order.
pub fn render(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "wallindex report  schema {}  config {}", report.schema_version, report.config.name);
    let _ = writeln!(
        out,
        "{:<14} {:<34} {:>14} {:>14} {:>10} {:>10}  status",
        "suite", "check", "value", "reference", "residual", "tolerance"
    );
    for s in &report.suites {
        for c in &s.checks {
            let _ = writeln!(
                out,
                "{:<14} {:<34} {:>14.6e} {:>14.6e} {:>10.2e} {:>10.2e}  {}",
                s.suite.name(),
                c.name,
                c.value,
                c.reference,
                c.residual,
                c.tolerance,
                status(c.pass)
            );
        }
        if let Some(e) = &s.error {
            let _ = writeln!(out, "{:<14} {:<34} error: {e}  FAIL", s.suite.name(), "-");
        }
    }
    if !report.suites.is_empty() {
        let passed = report.suites.iter().filter(|s| s.pass).count();
        let _ = writeln!(out, "overall {}  ({passed}/{} suites passed)", status(report.pass), report.suites.len());
    }
    out
}
