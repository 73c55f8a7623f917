//! Raising heterogeneity by swapping a dataset's most repetitive lines for
//! rare lines taken from other datasets.
//!
//! The strength knob in `[0, 1]` maps linearly to a replacement fraction in
//! `[0, 0.25]`. With `N` records, `k = floor(0.25 * strength * N)` records are
//! replaced in place, so the line count and line ids never change.
//!
//! Target order: templates by descending frequency; templates of equal
//! frequency (in order of first appearance) are visited round-robin, one
//! record at a time, so none is exhausted before the others; within a
//! template, records go by ascending line id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{groups_by_template, Dataset, Template};
use crate::error::{Error, Result};
use crate::metrics::ParseResult;
use crate::pool::{OutlierPool, PoolEntry};

/// Largest fraction of a dataset that mixing will replace.
pub const MAX_REPLACEMENT_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixConfig {
    pub strength: f64,
    pub seed: u64,
    #[serde(default = "default_true")]
    pub exclude_source: bool,
}

fn default_true() -> bool {
    true
}

impl MixConfig {
    pub fn new(strength: f64, seed: u64) -> Self {
        MixConfig {
            strength,
            seed,
            exclude_source: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.strength) {
            return Err(Error::Config(format!(
                "mixing strength must be in [0, 1], got {}",
                self.strength
            )));
        }
        Ok(())
    }

    pub fn replacement_fraction(&self) -> f64 {
        MAX_REPLACEMENT_FRACTION * self.strength
    }
}

/// Number of records replaced at `strength` in a dataset of `n` records.
pub fn replacement_count(n: usize, strength: f64) -> usize {
    ((MAX_REPLACEMENT_FRACTION * strength * n as f64) + 1e-9).floor() as usize
}

/// Record indices in replacement priority order.
pub fn replacement_order(templates: &[Template]) -> Vec<usize> {
    let mut groups = groups_by_template(templates);
    // Stable: equal sizes stay in first-appearance order.
    groups.sort_by_key(|g| std::cmp::Reverse(g.len()));
    let mut order = Vec::with_capacity(templates.len());
    let mut start = 0;
    while start < groups.len() {
        let size = groups[start].len();
        let end = start + groups[start..].iter().take_while(|g| g.len() == size).count();
        for i in 0..size {
            order.extend(groups[start..end].iter().map(|g| g[i]));
        }
        start = end;
    }
    order
}

/// Mixes using the dataset's own ground-truth templates for ranking.
pub fn mix(ds: &Dataset, pool: &OutlierPool, cfg: &MixConfig) -> Result<Dataset> {
    let labels = ds.labels()?;
    mix_ranked(ds, &labels, pool, cfg)
}

/// Mixes using a parser's templates as surrogate labels for ranking.
pub fn mix_with_parser_labels(
    ds: &Dataset,
    parsed: &ParseResult,
    pool: &OutlierPool,
    cfg: &MixConfig,
) -> Result<Dataset> {
    if parsed.len() != ds.len() {
        return Err(Error::Shape {
            predicted: parsed.len(),
            truth: ds.len(),
        });
    }
    mix_ranked(ds, &parsed.templates, pool, cfg)
}

fn mix_ranked(
    ds: &Dataset,
    ranking: &[Template],
    pool: &OutlierPool,
    cfg: &MixConfig,
) -> Result<Dataset> {
    cfg.validate()?;
    let k = replacement_count(ds.len(), cfg.strength);
    let mut out = ds.clone();
    if k == 0 {
        return Ok(out);
    }
    let eligible: Vec<&PoolEntry> = pool
        .entries
        .iter()
        .filter(|e| !(cfg.exclude_source && e.source == ds.name))
        .collect();
    if eligible.is_empty() {
        return Err(Error::EmptyPool(format!(
            "no outlier pool entries left after excluding source {:?}",
            ds.name
        )));
    }
    let mut targets: Vec<usize> = replacement_order(ranking).into_iter().take(k).collect();
    targets.sort_unstable();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in targets {
        let entry = eligible[rng.gen_range(0..eligible.len())];
        let r = &mut out.records[i];
        r.content = entry.content.clone();
        r.ground_truth = Some(entry.template.clone());
        r.source = entry.source.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Template {
        Template::new(s).unwrap()
    }

    fn pool(sources: &[&str]) -> OutlierPool {
        OutlierPool {
            entries: sources
                .iter()
                .enumerate()
                .map(|(i, s)| PoolEntry {
                    content: format!("outlier {i} from {s}"),
                    template: t(&format!("outlier {i} from {s}")),
                    source: s.to_string(),
                })
                .collect(),
        }
    }

    fn dataset(n: usize) -> Dataset {
        let rows: Vec<(String, String)> = (0..n)
            .map(|i| {
                if i % 4 == 3 {
                    (format!("rare event {i}"), "rare event <*>".to_string())
                } else {
                    (format!("common event {i}"), "common event <*>".to_string())
                }
            })
            .collect();
        Dataset::from_pairs("home", rows.iter().map(|(c, t)| (c.as_str(), Some(t.as_str()))))
            .unwrap()
    }

    #[test]
    fn strength_zero_is_identity() {
        let ds = dataset(40);
        assert_eq!(mix(&ds, &pool(&["x"]), &MixConfig::new(0.0, 1)).unwrap(), ds);
        // Even an unusable pool is fine when nothing is replaced.
        assert_eq!(mix(&ds, &OutlierPool::default(), &MixConfig::new(0.0, 1)).unwrap(), ds);
    }

    #[test]
    fn exact_replacement_count() {
        let ds = dataset(100);
        let out = mix(&ds, &pool(&["a", "b", "c"]), &MixConfig::new(0.2, 9)).unwrap();
        assert_eq!(out.len(), 100);
        let changed: Vec<usize> = ds
            .records
            .iter()
            .zip(&out.records)
            .filter(|(a, b)| a != b)
            .map(|(a, _)| a.line_id)
            .collect();
        // 0.25 * 0.2 * 100 = 5, all from the most frequent template, lowest ids first.
        assert_eq!(changed, vec![1, 2, 3, 5, 6]);
    }

    #[test]
    fn replaced_records_adopt_pool_labels() {
        let ds = dataset(100);
        let out = mix(&ds, &pool(&["a", "home"]), &MixConfig::new(1.0, 3)).unwrap();
        let replaced: Vec<_> = out.records.iter().filter(|r| r.source != "home").collect();
        assert_eq!(replaced.len(), 25);
        for r in replaced {
            assert_eq!(r.source, "a");
            assert_eq!(r.ground_truth.as_ref().unwrap().as_str(), r.content);
        }
    }

    #[test]
    fn empty_pool_after_exclusion() {
        let ds = dataset(100);
        let err = mix(&ds, &pool(&["home"]), &MixConfig::new(0.5, 1)).unwrap_err();
        assert!(matches!(err, Error::EmptyPool(_)));
        let cfg = MixConfig {
            exclude_source: false,
            ..MixConfig::new(0.5, 1)
        };
        assert!(mix(&ds, &pool(&["home"]), &cfg).is_ok());
    }

    #[test]
    fn invalid_strength() {
        assert!(mix(&dataset(4), &pool(&["a"]), &MixConfig::new(1.5, 1)).is_err());
    }

    #[test]
    fn round_robin_across_equal_frequencies() {
        let ts: Vec<Template> = ["a", "b", "a", "c", "b", "c", "d"].iter().map(|s| t(s)).collect();
        assert_eq!(replacement_order(&ts), vec![0, 1, 3, 2, 4, 5, 6]);
    }

    #[test]
    fn descending_frequency_first() {
        let ts: Vec<Template> = ["a", "b", "b", "c", "b"].iter().map(|s| t(s)).collect();
        assert_eq!(replacement_order(&ts), vec![1, 2, 4, 0, 3]);
    }

    #[test]
    fn single_surrogate_template_goes_in_line_order() {
        let ds = Dataset::from_lines("home", (0..10).map(|i| format!("line {i}"))).unwrap();
        let parsed = ParseResult::new(vec![t("line <*>"); 10]);
        // k = floor(0.25 * 1.0 * 10) = 2
        let out =
            mix_with_parser_labels(&ds, &parsed, &pool(&["a"]), &MixConfig::new(1.0, 5)).unwrap();
        let changed: Vec<usize> = (0..10).filter(|&i| out.records[i] != ds.records[i]).collect();
        assert_eq!(changed, vec![0, 1]);
    }

    #[test]
    fn surrogate_equal_to_truth_matches_labeled_mix() {
        let ds = dataset(60);
        let parsed = ParseResult::from_ground_truth(&ds).unwrap();
        let p = pool(&["a", "b"]);
        let cfg = MixConfig::new(0.7, 11);
        assert_eq!(
            mix(&ds, &p, &cfg).unwrap(),
            mix_with_parser_labels(&ds, &parsed, &p, &cfg).unwrap()
        );
    }

    #[test]
    fn count_rounding() {
        assert_eq!(replacement_count(100, 0.2), 5);
        assert_eq!(replacement_count(2000, 1.0), 500);
        assert_eq!(replacement_count(2000, 0.6), 300);
        assert_eq!(replacement_count(7, 0.1), 0);
    }
}
