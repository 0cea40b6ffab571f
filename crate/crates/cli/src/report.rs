//! Experiment reports: a JSON-serializable summary of a Monte Carlo run
//! (parameters, seed, aggregate statistics, and bound comparisons), plus a
//! per-sample CSV view.
//!
//! Reports are reproducible: rerunning an experiment with the same id,
//! parameters, and seed yields byte-identical statistics regardless of the
//! worker count, so `deterministic_json` (which zeroes only the wall-clock
//! field) can be compared directly.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// One empirical-vs-theoretical comparison. `pass` is the asserted verdict;
/// `margin` is the slack added on the theoretical side and `margin_formula`
/// states how it was derived, so the report is self-describing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub theoretical: f64,
    pub empirical: f64,
    pub pass: bool,
    pub margin: f64,
    pub margin_formula: String,
}

impl BoundCheck {
    /// An upper-bound assertion: `empirical ≤ theoretical + margin`.
    pub fn upper(
        name: impl Into<String>,
        theoretical: f64,
        empirical: f64,
        margin: f64,
        margin_formula: impl Into<String>,
    ) -> Self {
        BoundCheck {
            name: name.into(),
            theoretical,
            empirical,
            pass: empirical <= theoretical + margin,
            margin,
            margin_formula: margin_formula.into(),
        }
    }

    /// A lower-bound assertion: `empirical ≥ theoretical − margin`.
    pub fn lower(
        name: impl Into<String>,
        theoretical: f64,
        empirical: f64,
        margin: f64,
        margin_formula: impl Into<String>,
    ) -> Self {
        BoundCheck {
            name: name.into(),
            theoretical,
            empirical,
            pass: empirical >= theoretical - margin,
            margin,
            margin_formula: margin_formula.into(),
        }
    }
}

/// One sample's recorded values, in a fixed key order shared by all samples
/// of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub index: u64,
    pub values: Vec<(String, f64)>,
}

/// The result of one experiment run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub samples: usize,
    pub stats: Map<String, Value>,
    pub bounds: Vec<BoundCheck>,
    pub flags: Vec<String>,
    pub runtime_s: f64,
    #[serde(skip)]
    pub per_sample: Vec<SampleRow>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, seed: u64, samples: usize) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            params: Map::new(),
            seed,
            samples,
            stats: Map::new(),
            bounds: Vec::new(),
            flags: Vec::new(),
            runtime_s: 0.0,
            per_sample: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn stat(&mut self, key: &str, value: impl Into<Value>) {
        self.stats.insert(key.to_string(), value.into());
    }

    /// Whether every asserted comparison passed (an empty list passes).
    pub fn all_pass(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON with the wall-clock field zeroed: two runs of the same
    /// experiment with the same parameters and seed produce byte-identical
    /// output here, regardless of worker count.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.runtime_s = 0.0;
        copy.to_json()
    }

    /// One CSV row per sample, columns in recording order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("sample");
        if let Some(first) = self.per_sample.first() {
            for (key, _) in &first.values {
                out.push(',');
                out.push_str(key);
            }
        }
        out.push('\n');
        for row in &self.per_sample {
            out.push_str(&row.index.to_string());
            for (_, v) in &row.values {
                out.push(',');
                out.push_str(&format!("{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Binomial standard error under the bound's event probability, used as the
/// statistical margin for empirical-frequency comparisons: with `p` the
/// (capped) theoretical frequency, the empirical frequency over `samples`
/// draws deviates by more than `3·sqrt(p(1−p)/samples)` with probability
/// well under 1%.
pub fn three_sigma(p: f64, samples: usize) -> f64 {
    let p = p.clamp(0.0, 1.0);
    3.0 * (p * (1.0 - p) / samples.max(1) as f64).sqrt()
}

pub const THREE_SIGMA_FORMULA: &str = "3*sqrt(p*(1-p)/samples) with p = min(1, bound)";
