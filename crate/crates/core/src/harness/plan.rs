use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzing::FuzzMode;
use crate::heterogeneity::ReferenceStats;
use crate::parsers::{ParserConfig, TokenFrequencyConfig, TreeConfig};

/// Placeholder in external parser paths, replaced by the dataset name.
pub const DATASET_PLACEHOLDER: &str = "{dataset}";
/// Placeholder in external parser paths, replaced by the run index.
pub const RUN_PLACEHOLDER: &str = "{run}";

fn default_runs() -> usize {
    10
}

fn default_true() -> bool {
    true
}

/// A full benchmark description, usually read from JSON.
///
/// ```json
/// {
///   "datasets": ["data/Apache_2k.log_structured.csv"],
///   "parsers": [{"kind": "tree"}, {"kind": "identity"}],
///   "synthesis": {"pools": "pools", "mix": {"strength": 1.0}},
///   "runs": 10,
///   "base_seed": 0
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub datasets: Vec<PathBuf>,
    pub parsers: Vec<ParserSpec>,
    #[serde(default)]
    pub synthesis: Option<SynthesisPlan>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Heterogeneity reference; the industry triple when absent.
    #[serde(default)]
    pub reference: Option<ReferenceStats>,
    /// Worker threads; rayon's default when absent. Never changes results,
    /// so it is not written back into reports.
    #[serde(default, skip_serializing)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ParserSpec {
    Tree(TreeConfig),
    TokenFrequency(TokenFrequencyConfig),
    /// Scores each record's stored ground truth.
    Identity,
    /// A `LineId,EventTemplate` file written by some other tool. `path` may
    /// contain `{dataset}` and, when synthesis is configured, must contain
    /// `{run}`.
    External { name: String, path: String },
}

impl ParserSpec {
    pub fn label(&self) -> String {
        match self {
            ParserSpec::Tree(c) => ParserConfig::Tree(c.clone()).label(),
            ParserSpec::TokenFrequency(c) => ParserConfig::TokenFrequency(c.clone()).label(),
            ParserSpec::Identity => "identity".into(),
            ParserSpec::External { name, .. } => format!("external({name})"),
        }
    }

    pub(crate) fn builtin(&self) -> Option<ParserConfig> {
        match self {
            ParserSpec::Tree(c) => Some(ParserConfig::Tree(c.clone())),
            ParserSpec::TokenFrequency(c) => Some(ParserConfig::TokenFrequency(c.clone())),
            _ => None,
        }
    }

    /// Resolves an external path for one (dataset, run) cell.
    pub fn external_path(path: &str, dataset: &str, run: usize) -> PathBuf {
        PathBuf::from(
            path.replace(DATASET_PLACEHOLDER, dataset)
                .replace(RUN_PLACEHOLDER, &run.to_string()),
        )
    }
}

impl From<ParserConfig> for ParserSpec {
    fn from(c: ParserConfig) -> Self {
        match c {
            ParserConfig::Tree(c) => ParserSpec::Tree(c),
            ParserConfig::TokenFrequency(c) => ParserSpec::TokenFrequency(c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixStage {
    pub strength: f64,
    #[serde(default = "default_true")]
    pub exclude_source: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzStage {
    #[serde(default = "default_fuzz_mode")]
    pub mode: FuzzMode,
}

fn default_fuzz_mode() -> FuzzMode {
    FuzzMode::Labeled
}

/// Mixing then fuzzing, re-applied every run with that run's seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisPlan {
    /// Directory holding `outlier_pool.csv` and `variable_pool.tsv`.
    pub pools: PathBuf,
    #[serde(default)]
    pub mix: Option<MixStage>,
    #[serde(default)]
    pub fuzz: Option<FuzzStage>,
    /// Parser whose output replaces ground truth for mixing rank and
    /// parser-driven fuzzing.
    #[serde(default)]
    pub surrogate: Option<ParserConfig>,
}

impl ExperimentPlan {
    pub fn new(datasets: Vec<PathBuf>, parsers: Vec<ParserSpec>) -> Self {
        ExperimentPlan {
            datasets,
            parsers,
            synthesis: None,
            runs: default_runs(),
            base_seed: 0,
            reference: None,
            workers: None,
        }
    }

    /// Reads a JSON plan; relative paths are taken relative to the plan file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut plan: ExperimentPlan = serde_json::from_str(&text)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        if let Some(dir) = path.parent() {
            plan.resolve_relative_to(dir);
        }
        Ok(plan)
    }

    pub fn resolve_relative_to(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        self.datasets.iter_mut().for_each(fix);
        if let Some(s) = &mut self.synthesis {
            fix(&mut s.pools);
        }
        for spec in &mut self.parsers {
            if let ParserSpec::External { path, .. } = spec {
                if Path::new(path.as_str()).is_relative() {
                    *path = dir.join(path.as_str()).to_string_lossy().into_owned();
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.datasets.is_empty() {
            return Err(Error::Config("plan lists no datasets".into()));
        }
        if self.parsers.is_empty() {
            return Err(Error::Config("plan lists no parsers".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if let Some(r) = &self.reference {
            r.validate()?;
        }
        for spec in &self.parsers {
            if let Some(c) = spec.builtin() {
                c.validate()?;
            }
        }
        if let Some(s) = &self.synthesis {
            if let Some(m) = &s.mix {
                crate::mixing::MixConfig {
                    strength: m.strength,
                    seed: 0,
                    exclude_source: m.exclude_source,
                }
                .validate()?;
            }
            if let Some(c) = &s.surrogate {
                c.validate()?;
            }
            if matches!(s.fuzz, Some(FuzzStage { mode: FuzzMode::ParserDriven })) && s.surrogate.is_none() {
                return Err(Error::Config(
                    "parser-driven fuzzing needs a surrogate parser".into(),
                ));
            }
        }
        Ok(())
    }

    /// Seed of run `r`.
    pub fn seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }
}
