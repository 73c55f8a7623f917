//! End-to-end experiments: load, synthesize, parse and score over repeated
//! runs.
//!
//! Every (dataset, run) cell is an independent job. Run `r` uses seed
//! `base_seed + r` for both mixing and fuzzing; input datasets stay fixed,
//! so the run-to-run spread measures the synthesis randomness. Cells may run
//! on any number of threads, and results are assembled in plan order, so
//! [`EvaluationReport::deterministic_json`] is identical across executions
//! and worker counts.
//!
//! A failing cell does not abort the experiment: its error is recorded in the
//! report, and the affected parser's mean and std are left empty.

mod combine;
mod plan;
mod report;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

pub use combine::{build_combined_dataset, COMBINED_NAME};
pub use plan::{
    ExperimentPlan, FuzzStage, MixStage, ParserSpec, SynthesisPlan, DATASET_PLACEHOLDER,
    RUN_PLACEHOLDER,
};
pub use report::{
    mean_std, DatasetReport, EvaluationReport, HeterogeneityLevel, NamedDigest, ParserReport,
    PoolDigests, Provenance, RunLevel, RunMetrics, StageTiming, Timings, SCHEMA_VERSION,
};

use crate::corpus::{load_structured, write_structured, Dataset};
use crate::error::{Error, Result};
use crate::fuzzing::{fuzz, FuzzConfig, FuzzMode};
use crate::heterogeneity::{dataset_h, ReferenceStats, INDUSTRY_REFERENCE};
use crate::metrics::{MetricReport, ParseResult};
use crate::mixing::{mix, mix_with_parser_labels, MixConfig};
use crate::parsers::{load_parse_result, parse};
use crate::pool::{sha256_hex, OutlierPool, VariablePool, OUTLIER_POOL_FILE, VARIABLE_POOL_FILE};

/// The two synthesis resources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pools {
    pub outliers: OutlierPool,
    pub variables: VariablePool,
}

impl Pools {
    /// Loads `outlier_pool.csv` and `variable_pool.tsv` from `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        Ok(Pools {
            outliers: OutlierPool::load(dir.join(OUTLIER_POOL_FILE))?,
            variables: VariablePool::load(dir.join(VARIABLE_POOL_FILE))?,
        })
    }

    pub fn digests(&self) -> Result<PoolDigests> {
        Ok(PoolDigests {
            outlier: self.outliers.digest()?,
            variable: self.variables.digest(),
        })
    }
}

/// Loads every input named by the plan, then runs it.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<EvaluationReport> {
    plan.validate()?;
    let datasets = plan
        .datasets
        .iter()
        .map(load_structured)
        .collect::<Result<Vec<_>>>()?;
    let pools = match &plan.synthesis {
        Some(s) => Some(Pools::load(&s.pools)?),
        None => None,
    };
    evaluate(plan, &datasets, pools.as_ref())
}

/// Runs a plan on already loaded inputs.
///
/// `plan.datasets` and the pool directory are only recorded as provenance;
/// the data comes from `datasets` and `pools`.
pub fn evaluate(
    plan: &ExperimentPlan,
    datasets: &[Dataset],
    pools: Option<&Pools>,
) -> Result<EvaluationReport> {
    plan.validate()?;
    if plan.synthesis.is_some() && pools.is_none() {
        return Err(Error::Config("synthesis is configured but no pools were given".into()));
    }
    if datasets.is_empty() {
        return Err(Error::EmptyInput("no datasets to evaluate"));
    }
    if let Some(ds) = datasets.iter().find(|d| d.is_empty()) {
        return Err(Error::EmptyInput("dataset has no records").context(format!("dataset {}", ds.name)));
    }
    match plan.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(|| evaluate_inner(plan, datasets, pools)),
        None => evaluate_inner(plan, datasets, pools),
    }
}

struct Cell {
    level: std::result::Result<(HeterogeneityLevel, Option<usize>), String>,
    metrics: Vec<std::result::Result<MetricReport, String>>,
    timings: Vec<StageTiming>,
}

fn evaluate_inner(
    plan: &ExperimentPlan,
    datasets: &[Dataset],
    pools: Option<&Pools>,
) -> Result<EvaluationReport> {
    let started = Instant::now();
    let reference = plan.reference.unwrap_or(INDUSTRY_REFERENCE);

    let originals = datasets
        .iter()
        .map(|ds| {
            let (stats, score) = dataset_h(ds, &reference)?;
            Ok(HeterogeneityLevel { stats, score })
        })
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, usize)> = (0..datasets.len())
        .flat_map(|d| (0..plan.runs).map(move |r| (d, r)))
        .collect();
    let cells: Vec<Cell> = jobs
        .par_iter()
        .map(|&(d, r)| run_cell(plan, &datasets[d], r, pools, &reference))
        .collect();

    let mut reports = Vec::with_capacity(datasets.len());
    let mut stages = Vec::new();
    for (d, ds) in datasets.iter().enumerate() {
        let cells = &cells[d * plan.runs..(d + 1) * plan.runs];
        let runs: Vec<RunLevel> = cells
            .iter()
            .enumerate()
            .map(|(r, c)| RunLevel {
                run: r,
                seed: plan.seed(r),
                level: c.level.as_ref().ok().map(|l| l.0),
                fuzz_skipped: c.level.as_ref().ok().and_then(|l| l.1),
                error: c.level.as_ref().err().cloned(),
            })
            .collect();
        let hs: Option<Vec<f64>> = runs.iter().map(|r| r.level.map(|l| l.score.h)).collect();
        let mean_h = hs.and_then(|h| mean_std(&h)).map(|(m, _)| m);

        let parsers = plan
            .parsers
            .iter()
            .enumerate()
            .map(|(p, spec)| {
                let outcomes: Vec<RunMetrics> = cells
                    .iter()
                    .enumerate()
                    .map(|(r, c)| RunMetrics {
                        run: r,
                        metrics: c.metrics[p].as_ref().ok().copied(),
                        error: c.metrics[p].as_ref().err().cloned(),
                    })
                    .collect();
                let ok: Option<Vec<MetricReport>> = outcomes.iter().map(|o| o.metrics).collect();
                let agg = ok.and_then(|m| report::aggregate(&m));
                ParserReport {
                    parser: spec.label(),
                    failures: outcomes.iter().filter(|o| o.error.is_some()).count(),
                    runs: outcomes,
                    mean: agg.map(|a| a.0),
                    std: agg.map(|a| a.1),
                }
            })
            .collect();

        for c in cells {
            stages.extend(c.timings.iter().cloned());
        }
        reports.push(DatasetReport {
            name: ds.name.clone(),
            records: ds.len(),
            original: originals[d],
            runs,
            mean_h,
            parsers,
        });
    }

    let dataset_digests = datasets
        .iter()
        .map(|ds| {
            let mut bytes = Vec::new();
            write_structured(ds, &mut bytes)?;
            Ok(NamedDigest {
                name: ds.name.clone(),
                sha256: sha256_hex(&bytes),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EvaluationReport {
        schema_version: SCHEMA_VERSION,
        runs: plan.runs,
        base_seed: plan.base_seed,
        reference,
        datasets: reports,
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            plan: plan.clone(),
            seeds: (0..plan.runs).map(|r| plan.seed(r)).collect(),
            dataset_digests,
            pool_digests: match (&plan.synthesis, pools) {
                (Some(_), Some(p)) => Some(p.digests()?),
                _ => None,
            },
        },
        timings: Some(Timings {
            total_ms: millis(started),
            stages,
        }),
    })
}

fn millis(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn run_cell(
    plan: &ExperimentPlan,
    ds: &Dataset,
    run: usize,
    pools: Option<&Pools>,
    reference: &ReferenceStats,
) -> Cell {
    let mut timings = Vec::new();
    let mut time = |stage: &str, since: Instant| {
        timings.push(StageTiming {
            dataset: ds.name.clone(),
            run,
            stage: stage.to_string(),
            millis: millis(since),
        })
    };
    let cell_context = format!("dataset {}, run {run}", ds.name);

    let t = Instant::now();
    let synthesized = synthesize(plan, ds, plan.seed(run), pools);
    if plan.synthesis.is_some() {
        time("synthesis", t);
    }
    let (data, skipped) = match synthesized {
        Ok(x) => x,
        Err(e) => {
            let msg = e.context(format!("{cell_context}: synthesis")).to_string();
            return Cell {
                level: Err(msg.clone()),
                metrics: vec![Err(msg); plan.parsers.len()],
                timings,
            };
        }
    };

    let level = dataset_h(&data, reference)
        .map(|(stats, score)| (HeterogeneityLevel { stats, score }, skipped))
        .map_err(|e| e.context(format!("{cell_context}: heterogeneity")).to_string());

    let metrics = plan
        .parsers
        .iter()
        .map(|spec| {
            let t = Instant::now();
            let outcome = predict(spec, &data, &ds.name, run, plan.synthesis.is_some())
                .and_then(|pred| MetricReport::compute(&pred, &ParseResult::from_ground_truth(&data)?))
                .map_err(|e| {
                    e.context(format!("dataset {}, parser {}, run {run}", ds.name, spec.label()))
                        .to_string()
                });
            time(&format!("parse+score {}", spec.label()), t);
            outcome
        })
        .collect();

    Cell {
        level,
        metrics,
        timings,
    }
}

/// The data evaluated in one run, plus the fuzzing skip count.
pub fn synthesize(
    plan: &ExperimentPlan,
    ds: &Dataset,
    seed: u64,
    pools: Option<&Pools>,
) -> Result<(Dataset, Option<usize>)> {
    let Some(s) = &plan.synthesis else {
        return Ok((ds.clone(), None));
    };
    let pools = pools.ok_or_else(|| Error::Config("synthesis needs pools".into()))?;
    let mut data = ds.clone();
    if let Some(m) = s.mix {
        let cfg = MixConfig {
            strength: m.strength,
            seed,
            exclude_source: m.exclude_source,
        };
        data = match &s.surrogate {
            Some(p) => {
                let parsed = parse(&data, p)?;
                mix_with_parser_labels(&data, &parsed, &pools.outliers, &cfg)?
            }
            None => mix(&data, &pools.outliers, &cfg)?,
        };
    }
    let mut skipped = None;
    if let Some(f) = s.fuzz {
        let parsed = match (f.mode, &s.surrogate) {
            (FuzzMode::ParserDriven, Some(p)) => Some(parse(&data, p)?),
            _ => None,
        };
        let out = fuzz(&data, &pools.variables, &FuzzConfig { seed, mode: f.mode }, parsed.as_ref())?;
        skipped = Some(out.skipped.skipped);
        data = out.dataset;
    }
    Ok((data, skipped))
}

fn predict(
    spec: &ParserSpec,
    data: &Dataset,
    dataset: &str,
    run: usize,
    synthesized: bool,
) -> Result<ParseResult> {
    match spec {
        ParserSpec::Identity => ParseResult::from_ground_truth(data),
        ParserSpec::External { path, .. } => {
            if synthesized && !path.contains(RUN_PLACEHOLDER) {
                return Err(Error::Config(format!(
                    "external output {path:?} cannot follow per-run synthesis; add {RUN_PLACEHOLDER} to its path"
                )));
            }
            load_parse_result(ParserSpec::external_path(path, dataset, run), data.len())
        }
        other => match other.builtin() {
            Some(cfg) => parse(data, &cfg),
            None => Err(Error::Config(format!("unsupported parser {}", other.label()))),
        },
    }
}
