//! Raising heterogeneity by re-drawing every variable of every line.
//!
//! Each record is aligned with its template, and every captured variable is
//! replaced by a value drawn uniformly from the variable pool. The literal
//! part of the line is left untouched, and the output record is labeled with
//! the template that was used, so the fuzzed dataset remains evaluable.
//!
//! Randomness for a record comes from its own ChaCha stream, selected by the
//! record's line id, so results do not depend on execution order or thread
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{extract_variables, Dataset, LogRecord, Template};
use crate::error::{Error, Result};
use crate::metrics::ParseResult;
use crate::pool::{SkipReport, VariablePool};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FuzzMode {
    /// Templates come from the dataset's ground truth.
    Labeled,
    /// Templates come from a parser's output.
    ParserDriven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub mode: FuzzMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fuzzed {
    pub dataset: Dataset,
    /// Records passed through unchanged because they did not align.
    pub skipped: SkipReport,
}

pub fn fuzz(
    ds: &Dataset,
    vpool: &VariablePool,
    cfg: &FuzzConfig,
    parsed: Option<&ParseResult>,
) -> Result<Fuzzed> {
    if vpool.is_empty() {
        return Err(Error::EmptyPool("variable pool has no values".into()));
    }
    let templates: Vec<Template> = match (cfg.mode, parsed) {
        (FuzzMode::Labeled, _) => ds.labels()?,
        (FuzzMode::ParserDriven, Some(p)) => {
            if p.len() != ds.len() {
                return Err(Error::Shape {
                    predicted: p.len(),
                    truth: ds.len(),
                });
            }
            p.templates.clone()
        }
        (FuzzMode::ParserDriven, None) => {
            return Err(Error::Config("parser-driven fuzzing needs a parse result".into()))
        }
    };

    let outcomes: Vec<(LogRecord, bool)> = ds
        .records
        .par_iter()
        .zip(templates.par_iter())
        .map(|(r, t)| fuzz_record(r, t, vpool, cfg.seed))
        .collect();

    let mut skipped = SkipReport::default();
    let mut records = Vec::with_capacity(outcomes.len());
    for (r, ok) in outcomes {
        if !ok {
            skipped.record(&ds.name, r.line_id);
        }
        records.push(r);
    }
    Ok(Fuzzed {
        dataset: Dataset {
            name: ds.name.clone(),
            records,
        },
        skipped,
    })
}

/// Returns the new record and whether alignment succeeded.
fn fuzz_record(r: &LogRecord, t: &Template, vpool: &VariablePool, seed: u64) -> (LogRecord, bool) {
    let Ok(vars) = extract_variables(&r.content, t) else {
        return (r.clone(), false);
    };
    let mut out = r.clone();
    out.ground_truth = Some(t.clone());
    if vars.is_empty() {
        return (out, true);
    }
    let mut rng = record_rng(seed, r.line_id);
    let values: Vec<&str> = vars
        .iter()
        .map(|_| vpool.values[rng.gen_range(0..vpool.len())].value.as_str())
        .collect();
    // Slot counts agree because extraction succeeded.
    out.content = t.substitute(&values).unwrap_or_else(|_| r.content.clone());
    (out, true)
}

fn record_rng(seed: u64, line_id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(line_id as u64);
    rng
}
