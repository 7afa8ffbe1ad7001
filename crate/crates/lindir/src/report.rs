//! Shared result vocabulary for empirical checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::point::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The sample could not decide (for example, every circle hit an
    /// excluded region, or the comparison scale underflowed).
    Indeterminate,
}

/// Behavior of an empirical constant when the sampled region doubles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Stable,
    Growing,
}

impl Trend {
    /// `refined` against `base` under the multiplicative threshold.
    pub fn classify(base: f64, refined: f64, factor: f64) -> Trend {
        if refined > factor * base.max(f64::MIN_POSITIVE) {
            Trend::Growing
        } else {
            Trend::Stable
        }
    }
}

/// Sample at which an empirical constant is attained. Only the coordinates
/// relevant to the particular check are set; re-evaluating the check at the
/// witness reproduces `value`.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessSample {
    pub z0: Vec<C64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<C64>,
    pub value: f64,
}

impl WitnessSample {
    pub fn new(z0: Vec<C64>, value: f64) -> Self {
        WitnessSample {
            z0,
            t0: None,
            t: None,
            w: None,
            value,
        }
    }

    pub fn with_t0(mut self, t0: C64) -> Self {
        self.t0 = Some(t0);
        self
    }

    pub fn with_t(mut self, t: C64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_w(mut self, w: C64) -> Self {
        self.w = Some(w);
        self
    }
}

/// Outcome of one empirical check: the smallest constant making the check's
/// inequality hold over the sample, the witness attaining it, and how the
/// constant behaves when the sampled region is enlarged.
///
/// `empirical_constant` is a sample statistic, not a proof: `Pass` means the
/// inequality held at desk scale, `Fail` means a concrete counterexample
/// (the witness) was found.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub name: String,
    /// Check parameters, sorted by key for stable serialization.
    pub params: BTreeMap<String, serde_json::Value>,
    pub verdict: Verdict,
    pub empirical_constant: f64,
    /// Constant re-measured on the enlarged sample, when a trend pass ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend: Option<Trend>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSample>,
    pub sample_size: usize,
    /// Samples dropped by the check's own guards (underflow, excluded
    /// regions, identically-zero slices).
    pub skipped: usize,
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn new(name: impl Into<String>) -> Self {
        CriterionReport {
            name: name.into(),
            params: BTreeMap::new(),
            verdict: Verdict::Indeterminate,
            empirical_constant: 0.0,
            refined_constant: None,
            trend: None,
            witness: None,
            sample_size: 0,
            skipped: 0,
            notes: Vec::new(),
        }
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }
}
