//! Parser evaluation metrics.
//!
//! Three views of the same prediction:
//!
//! * **grouping accuracy** only asks whether records were clustered together
//!   correctly; the template strings themselves are never compared.
//! * **template accuracy** asks whether each predicted template string equals
//!   the ground-truth template.
//! * **edit distance** measures, per record, how far the predicted template is
//!   from the truth in character edits, averaged over records.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{groups_by_template, Dataset, Template};
use crate::error::{Error, Result};

/// One template per dataset record, index-aligned with line ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseResult {
    pub templates: Vec<Template>,
}

impl ParseResult {
    pub fn new(templates: Vec<Template>) -> Self {
        ParseResult { templates }
    }

    /// The ground truth of a labeled dataset, as a parse result.
    pub fn from_ground_truth(ds: &Dataset) -> Result<Self> {
        Ok(ParseResult::new(ds.labels()?))
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub grouping_accuracy: f64,
    pub template_accuracy: f64,
    pub mean_edit_distance: f64,
}

impl MetricReport {
    /// All three metrics. Fails on length mismatch or empty input.
    pub fn compute(predicted: &ParseResult, truth: &ParseResult) -> Result<Self> {
        Ok(MetricReport {
            grouping_accuracy: grouping_accuracy(predicted, truth)?,
            template_accuracy: template_accuracy(predicted, truth)?,
            mean_edit_distance: mean_edit_distance(predicted, truth)?,
        })
    }
}

fn check_shape(predicted: &ParseResult, truth: &ParseResult) -> Result<()> {
    if predicted.len() != truth.len() {
        return Err(Error::Shape {
            predicted: predicted.len(),
            truth: truth.len(),
        });
    }
    Ok(())
}

/// Fraction of records whose predicted group is exactly their true group.
pub fn grouping_accuracy(predicted: &ParseResult, truth: &ParseResult) -> Result<f64> {
    check_shape(predicted, truth)?;
    if truth.is_empty() {
        return Ok(1.0);
    }
    let mut truth_group = vec![0usize; truth.len()];
    let mut truth_size = Vec::new();
    for (g, members) in groups_by_template(&truth.templates).into_iter().enumerate() {
        truth_size.push(members.len());
        for i in members {
            truth_group[i] = g;
        }
    }
    let correct: usize = groups_by_template(&predicted.templates)
        .into_iter()
        .filter(|members| {
            let g = truth_group[members[0]];
            truth_size[g] == members.len() && members.iter().all(|&i| truth_group[i] == g)
        })
        .map(|members| members.len())
        .sum();
    Ok(correct as f64 / truth.len() as f64)
}

/// Fraction of records whose predicted template equals the true template.
pub fn template_accuracy(predicted: &ParseResult, truth: &ParseResult) -> Result<f64> {
    check_shape(predicted, truth)?;
    if truth.is_empty() {
        return Ok(1.0);
    }
    let correct = predicted
        .templates
        .iter()
        .zip(&truth.templates)
        .filter(|(p, t)| p == t)
        .count();
    Ok(correct as f64 / truth.len() as f64)
}

/// Levenshtein distance over Unicode scalar values.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let mut prev: Vec<usize> = (0..=short.len()).collect();
    let mut cur = vec![0; short.len() + 1];
    for (i, lc) in long.iter().enumerate() {
        cur[0] = i + 1;
        for (j, sc) in short.iter().enumerate() {
            let substitution = prev[j] + usize::from(lc != sc);
            cur[j + 1] = substitution.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[short.len()]
}

/// Mean per-record edit distance between predicted and true templates.
///
/// Distances are computed in parallel, then summed in record order so the
/// result does not depend on the thread count.
pub fn mean_edit_distance(predicted: &ParseResult, truth: &ParseResult) -> Result<f64> {
    check_shape(predicted, truth)?;
    if truth.is_empty() {
        return Err(Error::UndefinedMetric("mean edit distance of zero records"));
    }
    let distances: Vec<usize> = predicted
        .templates
        .par_iter()
        .zip(truth.templates.par_iter())
        .map(|(p, t)| edit_distance(p.as_str(), t.as_str()))
        .collect();
    let total: f64 = distances.iter().map(|&d| d as f64).sum();
    Ok(total / truth.len() as f64)
}

/// Per-template breakdown: for each ground-truth template, how many of its
/// records were parsed to exactly that string.
pub fn per_template_hits(predicted: &ParseResult, truth: &ParseResult) -> Result<HashMap<Template, (usize, usize)>> {
    check_shape(predicted, truth)?;
    let mut out: HashMap<Template, (usize, usize)> = HashMap::new();
    for (p, t) in predicted.templates.iter().zip(&truth.templates) {
        let entry = out.entry(t.clone()).or_default();
        entry.1 += 1;
        if p == t {
            entry.0 += 1;
        }
    }
    Ok(out)
}
