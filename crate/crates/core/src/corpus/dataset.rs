use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::template::Template;
use crate::error::{Error, Result};

/// One log message (content only, no metadata header).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogRecord {
    /// 1-based position in the dataset.
    pub line_id: usize,
    pub content: String,
    pub ground_truth: Option<Template>,
    /// Name of the dataset the content originally came from.
    pub source: String,
}

impl LogRecord {
    pub fn new(
        line_id: usize,
        content: impl Into<String>,
        ground_truth: Option<Template>,
        source: impl Into<String>,
    ) -> Result<Self> {
        let content = content.into();
        if content.contains(['\n', '\r']) {
            return Err(Error::Format(format!(
                "line {line_id}: content contains a line break"
            )));
        }
        Ok(LogRecord {
            line_id,
            content,
            ground_truth,
            source: source.into(),
        })
    }
}

/// An ordered collection of log records with contiguous line ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub records: Vec<LogRecord>,
}

impl Dataset {
    /// Checks that line ids run 1..=N and that no content spans lines.
    pub fn new(name: impl Into<String>, records: Vec<LogRecord>) -> Result<Self> {
        for (i, r) in records.iter().enumerate() {
            if r.line_id != i + 1 {
                return Err(Error::Format(format!(
                    "line ids must be contiguous from 1: row {} has id {}",
                    i + 1,
                    r.line_id
                )));
            }
            if r.content.contains(['\n', '\r']) {
                return Err(Error::Format(format!(
                    "line {}: content contains a line break",
                    r.line_id
                )));
            }
        }
        Ok(Dataset {
            name: name.into(),
            records,
        })
    }

    /// Builds a dataset from `(content, template)` pairs, all tagged with `name`.
    pub fn from_pairs<I, C, T>(name: &str, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, Option<T>)>,
        C: Into<String>,
        T: AsRef<str>,
    {
        let records = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (content, gt))| {
                let gt = gt.map(|t| Template::new(t.as_ref())).transpose()?;
                LogRecord::new(i + 1, content, gt, name)
            })
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(name, records)
    }

    /// Builds an unlabeled dataset from raw messages.
    pub fn from_lines<I, S>(name: &str, lines: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Dataset::from_pairs(name, lines.into_iter().map(|l| (l, None::<&str>)))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn contents(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.content.as_str())
    }

    /// Ground-truth templates in record order, failing on any unlabeled record.
    pub fn labels(&self) -> Result<Vec<Template>> {
        let missing: Vec<usize> = self
            .records
            .iter()
            .filter(|r| r.ground_truth.is_none())
            .map(|r| r.line_id)
            .collect();
        if !missing.is_empty() {
            return Err(Error::Unlabeled { line_ids: missing });
        }
        Ok(self
            .records
            .iter()
            .filter_map(|r| r.ground_truth.clone())
            .collect())
    }

    pub fn is_labeled(&self) -> bool {
        self.records.iter().all(|r| r.ground_truth.is_some())
    }

    /// Reassigns line ids 1..=N in current order.
    pub fn renumber(&mut self) {
        for (i, r) in self.records.iter_mut().enumerate() {
            r.line_id = i + 1;
        }
    }
}

/// Counts how many records carry each (canonical) ground-truth template.
pub fn template_frequency_map(ds: &Dataset) -> Result<BTreeMap<Template, usize>> {
    let labels = ds.labels()?;
    Ok(frequencies(&labels))
}

pub(crate) fn frequencies<'a, I>(templates: I) -> BTreeMap<Template, usize>
where
    I: IntoIterator<Item = &'a Template>,
{
    let mut counts = BTreeMap::new();
    for t in templates {
        *counts.entry(t.clone()).or_insert(0) += 1;
    }
    counts
}

/// Record indices grouped by template, each group in ascending line order, and
/// the groups in order of first appearance.
pub(crate) fn groups_by_template(templates: &[Template]) -> Vec<Vec<usize>> {
    let mut index: HashMap<&Template, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, t) in templates.iter().enumerate() {
        let g = *index.entry(t).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
}
