//! Numeric verifiers for the theorems behind the constructions, and a seeded
//! random-trial harness that runs them in bulk.
//!
//! Each check returns a [`CheckReport`]. Residuals are dimensionless: lengths
//! are divided by the appropriate scene scale or radius, angles are radians.

mod checks;
mod suite;

pub use checks::{
    check_circumscription, check_euler_iteration, check_euler_line, check_inscribed_angle,
    check_median_concurrency, check_spiral, check_spiral_pair, check_vertex_circles,
    InscribedVerdict,
};
pub use suite::{run_suite, summarize, CheckName, CheckSummary, TrialConfig, TriangleSampler};

use serde::Serialize;
use thiserror::Error;

use crate::geom::GeomError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("chord endpoint is not on the circle")]
    ChordNotOnCircle,
    #[error("vertex {0} lies on the chord line")]
    VertexOnChordLine(usize),
    #[error("unknown check name `{0}`")]
    UnknownCheckName(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Verdict of one theorem verifier.
///
/// `passed` holds exactly when every residual is at most `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub residuals: Vec<(String, f64)>,
    pub measured: Vec<(String, f64)>,
    pub tolerance: f64,
    pub trial_seed: Option<u64>,
}

impl CheckReport {
    pub(crate) fn new(name: &str, tolerance: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: false,
            residuals: Vec::new(),
            measured: Vec::new(),
            tolerance,
            trial_seed: None,
        }
    }

    pub(crate) fn residual(&mut self, label: impl Into<String>, value: f64) {
        self.residuals.push((label.into(), value));
    }

    pub(crate) fn measure(&mut self, label: impl Into<String>, value: f64) {
        self.measured.push((label.into(), value));
    }

    pub(crate) fn finish(mut self) -> Self {
        self.passed = self.residuals.iter().all(|(_, r)| *r <= self.tolerance);
        self
    }

    /// Largest residual; NaN propagates.
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, (_, r)| {
            if r.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(*r)
            }
        })
    }

    pub fn residual_value(&self, label: &str) -> Option<f64> {
        self.residuals.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }

    pub fn measured_value(&self, label: &str) -> Option<f64> {
        self.measured.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }
}
