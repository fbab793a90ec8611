//! Identity suites, embedding checks and classification, all producing
//! [`VerificationReport`]s.

mod classify;
mod graph;
mod identities;
mod isometry;
mod kernels;
mod presentation;
mod rigidity;
mod sff;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Element;

pub use classify::{classify_embedding, Classification, EmbeddingClass};
pub use graph::{graph_calibration, graph_variety_spin, GraphVariety};
pub use identities::{run_identity_suite, Identity};
pub use isometry::{check_embedding_isometry, check_metric_pullback};
pub use kernels::Rank2Kernels;
pub use presentation::{bicayley_matrix, check_presentation_relations};
pub use rigidity::{rigidity_convergence, sup_distance};
pub use sff::check_second_fundamental_form;

/// Tolerance floor for checks that difference the map numerically.
pub const NUMERIC_TOL_FLOOR: f64 = 1e-6;

const MAX_WITNESSES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub n_samples: usize,
    pub radius_frac: f64,
    pub tol: f64,
}

impl SampleConfig {
    pub fn new(seed: u64, n_samples: usize, radius_frac: f64, tol: f64) -> Result<Self> {
        let cfg = SampleConfig { seed, n_samples, radius_frac, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
        }
        if !(self.radius_frac > 0.0 && self.radius_frac < 1.0) {
            return Err(Error::InvalidArgument(format!("radius must lie in (0,1), got {}", self.radius_frac)));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn with_tol(self, tol: f64) -> Self {
        SampleConfig { tol, ..self }
    }

    pub fn with_samples(self, n_samples: usize) -> Self {
        SampleConfig { n_samples, ..self }
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, n_samples: 100, radius_frac: 0.5, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A sample whose residual exceeded the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub sample: u64,
    pub residual: f64,
    /// Input vectors as `[re, im]` pairs.
    pub inputs: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub system: String,
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Named diagnostics that are not residuals.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))
    }

    pub fn csv_header() -> &'static str {
        "identity,system,n,seed,tol,max_residual,mean_residual,verdict,witnesses"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:e},{:e},{:e},{},{}",
            self.identity,
            self.system,
            self.n,
            self.seed,
            self.tol,
            self.max_residual,
            self.mean_residual,
            if self.passed() { "pass" } else { "fail" },
            self.witnesses.len()
        )
    }

    pub fn text_line(&self) -> String {
        format!(
            "{:<6} {:<28} {:<12} n={:<5} max={:.3e} mean={:.3e} tol={:.1e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.identity,
            self.system,
            self.n,
            self.max_residual,
            self.mean_residual,
            self.tol
        )
    }
}

/// Running max/mean of residuals plus the first failing samples.
#[derive(Debug, Clone)]
pub(crate) struct Accumulator {
    tol: f64,
    count: usize,
    sum: f64,
    max: f64,
    witnesses: Vec<Witness>,
    details: BTreeMap<String, f64>,
}

impl Accumulator {
    pub(crate) fn new(tol: f64) -> Self {
        Accumulator { tol, count: 0, sum: 0.0, max: 0.0, witnesses: Vec::new(), details: BTreeMap::new() }
    }

    /// Record one residual; `inputs` is only evaluated for failures.
    pub(crate) fn push<F: FnOnce() -> Vec<Element>>(&mut self, sample: u64, residual: f64, inputs: F) {
        // non-finite residuals would not survive JSON
        let residual = if residual.is_finite() { residual } else { f64::MAX };
        self.count += 1;
        self.sum += residual;
        self.max = self.max.max(residual);
        if residual > self.tol && self.witnesses.len() < MAX_WITNESSES {
            let inputs = inputs()
                .iter()
                .map(|v| v.iter().map(|x| [x.re, x.im]).collect())
                .collect();
            self.witnesses.push(Witness { sample, residual, inputs });
        }
    }

    pub(crate) fn detail(&mut self, key: impl Into<String>, value: f64) {
        self.details.insert(key.into(), value);
    }

    pub(crate) fn max(&self) -> f64 {
        self.max
    }

    pub(crate) fn finish(self, identity: &str, system: String, seed: u64) -> VerificationReport {
        let mean = if self.count == 0 { 0.0 } else { (self.sum / self.count as f64).min(f64::MAX) };
        VerificationReport {
            identity: identity.to_string(),
            system,
            n: self.count,
            seed,
            tol: self.tol,
            max_residual: self.max,
            mean_residual: mean,
            verdict: if self.max <= self.tol { Verdict::Pass } else { Verdict::Fail },
            witnesses: self.witnesses,
            details: self.details,
        }
    }
}

/// Relative difference `|a - b| / (1 + |b|)`.
pub(crate) fn rel(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

#[cfg(test)]
mod tests;
