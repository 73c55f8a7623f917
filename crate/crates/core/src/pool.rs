//! Static resources for synthesis: the outlier pool used by mixing and the
//! variable pool used by fuzzing.
//!
//! Both pools are built once from labeled datasets, written to disk, and then
//! shared read-only by every mixing/fuzzing run so that experiments stay
//! reproducible.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{
    extract_variables, frequencies, read_structured, write_structured, Dataset, LogRecord,
    Template, WILDCARD,
};
use crate::error::{Error, Result};

pub const OUTLIER_POOL_FILE: &str = "outlier_pool.csv";
pub const VARIABLE_POOL_FILE: &str = "variable_pool.tsv";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolEntry {
    pub content: String,
    pub template: Template,
    pub source: String,
}

/// Rare log lines gathered across datasets, deduplicated by content.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutlierPool {
    pub entries: Vec<PoolEntry>,
}

impl OutlierPool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn to_dataset(&self) -> Result<Dataset> {
        let records = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                LogRecord::new(i + 1, e.content.clone(), Some(e.template.clone()), e.source.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Dataset::new("outlier_pool", records)
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut ds = self.to_dataset()?;
        // Force the Source column even if every entry shares one tag.
        ds.name = String::new();
        let mut buf = Vec::new();
        write_structured(&ds, &mut buf)?;
        Ok(buf)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let ds = read_structured(bytes, "")?;
        let entries = ds
            .records
            .into_iter()
            .map(|r| match r.ground_truth {
                Some(template) if !r.source.is_empty() => Ok(PoolEntry {
                    content: r.content,
                    template,
                    source: r.source,
                }),
                _ => Err(Error::Format(format!(
                    "outlier pool row {} needs both a template and a source",
                    r.line_id
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OutlierPool { entries })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_bytes()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        OutlierPool::from_bytes(&bytes)
    }

    /// Hex SHA-256 of the serialized pool.
    pub fn digest(&self) -> Result<String> {
        Ok(sha256_hex(&self.to_bytes()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableEntry {
    pub value: String,
    pub sources: BTreeSet<String>,
}

/// Distinct variable values, sorted, each tagged with the datasets it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariablePool {
    pub values: Vec<VariableEntry>,
}

impl VariablePool {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn from_values<I, S>(source: &str, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for v in values {
            let v = v.into();
            if is_poolable(&v) {
                map.entry(v).or_default().insert(source.to_string());
            }
        }
        VariablePool::from_map(map)
    }

    fn from_map(map: BTreeMap<String, BTreeSet<String>>) -> Self {
        VariablePool {
            values: map
                .into_iter()
                .map(|(value, sources)| VariableEntry { value, sources })
                .collect(),
        }
    }

    /// One line per value: the value, then each source, tab-separated.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for e in &self.values {
            out.extend_from_slice(e.value.as_bytes());
            for s in &e.sources {
                out.push(b'\t');
                out.extend_from_slice(s.as_bytes());
            }
            out.push(b'\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (i, line) in text.split('\n').enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let value = fields.next().unwrap_or_default();
            if !is_poolable(value) {
                return Err(Error::Parse {
                    row: i as u64 + 1,
                    message: format!("invalid variable value {value:?}"),
                });
            }
            map.entry(value.to_string())
                .or_default()
                .extend(fields.filter(|s| !s.is_empty()).map(str::to_string));
        }
        Ok(VariablePool::from_map(map))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        VariablePool::from_text(&text)
    }

    pub fn digest(&self) -> String {
        sha256_hex(&self.to_bytes())
    }
}

fn is_poolable(v: &str) -> bool {
    !v.is_empty() && !v.contains(['\n', '\r', '\t']) && !v.contains(WILDCARD)
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Records that could not contribute to the variable pool.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipReport {
    pub skipped: usize,
    /// `(dataset, line_id)` of the first few skipped records.
    pub examples: Vec<(String, usize)>,
}

impl SkipReport {
    const MAX_EXAMPLES: usize = 20;

    pub(crate) fn record(&mut self, dataset: &str, line_id: usize) {
        self.skipped += 1;
        if self.examples.len() < Self::MAX_EXAMPLES {
            self.examples.push((dataset.to_string(), line_id));
        }
    }
}

/// Selects the rarest `ceil(fraction * N)` lines of every dataset.
///
/// Records are ranked by ascending ground-truth template frequency, ties by
/// line id. The union across datasets keeps the first occurrence of each
/// distinct content.
pub fn build_outlier_pool(datasets: &[Dataset], outlier_fraction: f64) -> Result<OutlierPool> {
    if !(outlier_fraction > 0.0 && outlier_fraction <= 1.0) {
        return Err(Error::Config(format!(
            "outlier fraction must be in (0, 1], got {outlier_fraction}"
        )));
    }
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for ds in datasets {
        let labels = ds.labels().map_err(|e| e.context(format!("dataset {}", ds.name)))?;
        let freq = frequencies(&labels);
        let mut order: Vec<usize> = (0..ds.len()).collect();
        order.sort_by_key(|&i| (freq[&labels[i]], ds.records[i].line_id));
        let take = selection_size(outlier_fraction, ds.len());
        for i in order.into_iter().take(take) {
            let r = &ds.records[i];
            if seen.insert(r.content.clone()) {
                entries.push(PoolEntry {
                    content: r.content.clone(),
                    template: labels[i].clone(),
                    source: r.source.clone(),
                });
            }
        }
    }
    Ok(OutlierPool { entries })
}

fn selection_size(fraction: f64, n: usize) -> usize {
    // Absorb representation error so that 0.05 * 100 selects 5, not 6.
    (((fraction * n as f64) - 1e-9).ceil().max(0.0) as usize).min(n)
}

/// Collects every variable captured by aligning records with their templates.
pub fn build_variable_pool(datasets: &[Dataset]) -> Result<(VariablePool, SkipReport)> {
    let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut report = SkipReport::default();
    for ds in datasets {
        let labels = ds.labels().map_err(|e| e.context(format!("dataset {}", ds.name)))?;
        for (r, t) in ds.records.iter().zip(&labels) {
            if !t.has_wildcards() {
                continue;
            }
            match extract_variables(&r.content, t) {
                Ok(vars) => {
                    for v in vars.into_iter().filter(|v| is_poolable(v)) {
                        map.entry(v).or_default().insert(r.source.clone());
                    }
                }
                Err(_) => report.record(&ds.name, r.line_id),
            }
        }
    }
    Ok((VariablePool::from_map(map), report))
}

/// Writes both pools into `dir` under their standard file names.
pub fn save_pools(dir: impl AsRef<Path>, outliers: &OutlierPool, variables: &VariablePool) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    outliers.save(dir.join(OUTLIER_POOL_FILE))?;
    variables.save(dir.join(VARIABLE_POOL_FILE))?;
    let readme = dir.join("POOLS.txt");
    let mut f = fs::File::create(&readme).map_err(|e| Error::io(&readme, e))?;
    writeln!(
        f,
        "{OUTLIER_POOL_FILE}\t{} entries\tsha256 {}\n{VARIABLE_POOL_FILE}\t{} values\tsha256 {}",
        outliers.len(),
        outliers.digest()?,
        variables.len(),
        variables.digest()
    )
    .map_err(|e| Error::io(&readme, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(name: &str, rows: &[(&str, &str)]) -> Dataset {
        Dataset::from_pairs(name, rows.iter().map(|(c, t)| (*c, Some(*t)))).unwrap()
    }

    #[test]
    fn rarest_first_with_positional_fill() {
        let mut rows: Vec<(String, String)> =
            (0..96).map(|i| (format!("frequent {i}"), "frequent <*>".to_string())).collect();
        for i in 0..4 {
            rows.insert(10 + 20 * i, (format!("rare{i} line"), format!("rare{i} line")));
        }
        let ds = Dataset::from_pairs("d", rows.iter().map(|(c, t)| (c.as_str(), Some(t.as_str()))))
            .unwrap();
        let pool = build_outlier_pool(&[ds], 0.05).unwrap();
        let contents: Vec<&str> = pool.entries.iter().map(|e| e.content.as_str()).collect();
        assert_eq!(
            contents,
            vec!["rare0 line", "rare1 line", "rare2 line", "rare3 line", "frequent 0"]
        );
    }

    #[test]
    fn unique_templates_take_ceil() {
        let rows: Vec<(String, String)> = (0..30).map(|i| (format!("l{i}"), format!("l{i}"))).collect();
        let ds = Dataset::from_pairs("d", rows.iter().map(|(c, t)| (c.as_str(), Some(t.as_str()))))
            .unwrap();
        // ceil(0.05 * 30) = 2
        assert_eq!(build_outlier_pool(&[ds], 0.05).unwrap().len(), 2);
    }

    #[test]
    fn outlier_pool_requires_labels() {
        let ds = Dataset::from_lines("d", ["a"]).unwrap();
        assert!(build_outlier_pool(&[ds], 0.5).is_err());
        let ds = labeled("d", &[("a", "a")]);
        assert!(build_outlier_pool(std::slice::from_ref(&ds), 0.0).is_err());
        assert!(build_outlier_pool(&[ds], 1.5).is_err());
    }

    #[test]
    fn dedup_by_content_across_datasets() {
        let a = labeled("A", &[("same line", "same line")]);
        let b = labeled("B", &[("same line", "same line"), ("other", "other")]);
        let pool = build_outlier_pool(&[a, b], 1.0).unwrap();
        assert_eq!(pool.len(), 2);
        assert_eq!(pool.entries[0].source, "A");
    }

    #[test]
    fn variable_pool_from_messages() {
        let ds = labeled(
            "d",
            &[("Template log 1", "Template log <*>"), ("Template log 2", "Template log <*>")],
        );
        let (pool, skips) = build_variable_pool(&[ds]).unwrap();
        let values: Vec<&str> = pool.values.iter().map(|e| e.value.as_str()).collect();
        assert_eq!(values, vec!["1", "2"]);
        assert_eq!(skips.skipped, 0);
    }

    #[test]
    fn variable_pool_no_wildcards() {
        let ds = labeled("d", &[("a b", "a b"), ("c", "c")]);
        assert!(build_variable_pool(&[ds]).unwrap().0.is_empty());
    }

    #[test]
    fn variable_pool_merges_sources() {
        let a = labeled("A", &[("from 10.0.0.1", "from <*>")]);
        let b = labeled("B", &[("to 10.0.0.1", "to <*>")]);
        let (pool, _) = build_variable_pool(&[a, b]).unwrap();
        assert_eq!(pool.len(), 1);
        let sources: Vec<&str> = pool.values[0].sources.iter().map(String::as_str).collect();
        assert_eq!(sources, vec!["A", "B"]);
    }

    #[test]
    fn variable_pool_counts_misaligned() {
        let ds = labeled("d", &[("x 1", "y <*>"), ("y 2", "y <*>")]);
        let (pool, skips) = build_variable_pool(&[ds]).unwrap();
        assert_eq!(pool.len(), 1);
        assert_eq!(skips.skipped, 1);
        assert_eq!(skips.examples, vec![("d".to_string(), 1)]);
    }

    #[test]
    fn pool_files_round_trip() {
        let ds = labeled("A", &[("x, \"quoted\" 1", "x, \"quoted\" <*>"), ("y 2", "y <*>")]);
        let outliers = build_outlier_pool(std::slice::from_ref(&ds), 1.0).unwrap();
        assert_eq!(OutlierPool::from_bytes(&outliers.to_bytes().unwrap()).unwrap(), outliers);
        let (vars, _) = build_variable_pool(&[ds]).unwrap();
        let text = String::from_utf8(vars.to_bytes()).unwrap();
        assert_eq!(text, "1\tA\n2\tA\n");
        assert_eq!(VariablePool::from_text(&text).unwrap(), vars);
    }

    #[test]
    fn selection_size_rounding() {
        assert_eq!(selection_size(0.05, 100), 5);
        assert_eq!(selection_size(0.05, 2000), 100);
        assert_eq!(selection_size(0.05, 1), 1);
        assert_eq!(selection_size(1.0, 7), 7);
    }
}
