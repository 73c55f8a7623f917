use serde::{Deserialize, Serialize};

use super::plan::ExperimentPlan;
use crate::error::{Error, Result};
use crate::heterogeneity::{HeterogeneityScore, ProxyStats, ReferenceStats};
use crate::metrics::MetricReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Result document of one experiment.
///
/// Field order is fixed by declaration order. Everything except `timings`
/// is a pure function of the plan and its inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: u32,
    pub runs: usize,
    pub base_seed: u64,
    pub reference: ReferenceStats,
    pub datasets: Vec<DatasetReport>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeterogeneityLevel {
    pub stats: ProxyStats,
    pub score: HeterogeneityScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetReport {
    pub name: String,
    pub records: usize,
    /// Level of the input, before any synthesis.
    pub original: HeterogeneityLevel,
    /// Level of the evaluated data of each run.
    pub runs: Vec<RunLevel>,
    /// Mean H over runs; absent when a run failed.
    pub mean_h: Option<f64>,
    pub parsers: Vec<ParserReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunLevel {
    pub run: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<HeterogeneityLevel>,
    /// Records fuzzing passed through unchanged.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzz_skipped: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParserReport {
    pub parser: String,
    pub runs: Vec<RunMetrics>,
    /// Mean and sample standard deviation over all runs; absent when any
    /// run failed.
    pub mean: Option<MetricReport>,
    pub std: Option<MetricReport>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub run: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub plan: ExperimentPlan,
    pub seeds: Vec<u64>,
    pub dataset_digests: Vec<NamedDigest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pool_digests: Option<PoolDigests>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolDigests {
    pub outlier: String,
    pub variable: String,
}

/// Wall-clock measurements; excluded from determinism comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub stages: Vec<StageTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub dataset: String,
    pub run: usize,
    pub stage: String,
    pub millis: f64,
}

impl EvaluationReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format(format!("report: {e}")))
    }

    /// JSON without timings: stable across executions.
    pub fn deterministic_json(&self) -> Result<String> {
        EvaluationReport {
            timings: None,
            ..self.clone()
        }
        .to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: EvaluationReport =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("report: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported report schema version {}",
                report.schema_version
            )));
        }
        Ok(report)
    }

    pub fn dataset(&self, name: &str) -> Option<&DatasetReport> {
        self.datasets.iter().find(|d| d.name == name)
    }
}

impl DatasetReport {
    pub fn parser(&self, label: &str) -> Option<&ParserReport> {
        self.parsers.iter().find(|p| p.parser == label)
    }
}

/// Mean and sample standard deviation (`n - 1`); a single value has std 0.
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Some((mean, var.sqrt()))
}

pub(crate) fn aggregate(metrics: &[MetricReport]) -> Option<(MetricReport, MetricReport)> {
    let field = |f: fn(&MetricReport) -> f64| mean_std(&metrics.iter().map(f).collect::<Vec<_>>());
    let (ga, ga_s) = field(|m| m.grouping_accuracy)?;
    let (ta, ta_s) = field(|m| m.template_accuracy)?;
    let (ed, ed_s) = field(|m| m.mean_edit_distance)?;
    Some((
        MetricReport {
            grouping_accuracy: ga,
            template_accuracy: ta,
            mean_edit_distance: ed,
        },
        MetricReport {
            grouping_accuracy: ga_s,
            template_accuracy: ta_s,
            mean_edit_distance: ed_s,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_std() {
        let (m, s) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_std(&[3.0]), Some((3.0, 0.0)));
        assert_eq!(mean_std(&[]), None);
    }

    #[test]
    fn constant_runs_have_zero_std() {
        let m = MetricReport {
            grouping_accuracy: 0.5,
            template_accuracy: 0.25,
            mean_edit_distance: 3.0,
        };
        let (mean, std) = aggregate(&[m; 10]).unwrap();
        assert_eq!(mean, m);
        assert_eq!(std.template_accuracy, 0.0);
    }
}
