//! Heterogeneity of a log dataset.
//!
//! Three cheap proxies describe how varied a dataset is: the number of distinct
//! words, distinct characters and distinct line lengths. Each is divided by
//! the value of a reference corpus (by default a production dataset from a
//! large enterprise, which therefore scores exactly 1), capped at 1, and the
//! three ratios are combined with weights 0.4 / 0.2 / 0.4:
//!
//! ```text
//! H = 0.4 * min(words / ref_words, 1)
//!   + 0.2 * min(chars / ref_chars, 1)
//!   + 0.4 * min(lengths / ref_lengths, 1)
//! ```
//!
//! Characters get half the weight because their spread across known datasets
//! is about half that of the other two proxies (see [`metric_variability`]).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProxyStats {
    /// Distinct whitespace-delimited words.
    pub nuw: usize,
    /// Distinct characters, spaces included, line terminators excluded.
    pub nuc: usize,
    /// Distinct line lengths, in characters.
    pub nuldl: usize,
}

impl ProxyStats {
    pub const fn new(nuw: usize, nuc: usize, nuldl: usize) -> Self {
        ProxyStats { nuw, nuc, nuldl }
    }

    fn as_array(&self) -> [f64; 3] {
        [self.nuw as f64, self.nuc as f64, self.nuldl as f64]
    }
}

/// Normalization anchor for [`h_score`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceStats {
    pub nuw_ref: f64,
    pub nuc_ref: f64,
    pub nuldl_ref: f64,
}

impl ReferenceStats {
    pub fn new(nuw_ref: f64, nuc_ref: f64, nuldl_ref: f64) -> Result<Self> {
        let r = ReferenceStats {
            nuw_ref,
            nuc_ref,
            nuldl_ref,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.nuw_ref, "word reference must be positive"),
            (self.nuc_ref, "character reference must be positive"),
            (self.nuldl_ref, "line-length reference must be positive"),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidReference(name));
            }
        }
        Ok(())
    }

    fn as_array(&self) -> [f64; 3] {
        [self.nuw_ref, self.nuc_ref, self.nuldl_ref]
    }
}

impl Default for ReferenceStats {
    fn default() -> Self {
        INDUSTRY_REFERENCE
    }
}

impl From<ProxyStats> for ReferenceStats {
    fn from(s: ProxyStats) -> Self {
        ReferenceStats {
            nuw_ref: s.nuw as f64,
            nuc_ref: s.nuc as f64,
            nuldl_ref: s.nuldl as f64,
        }
    }
}

/// Proxy statistics of the enterprise production log sample (2K lines).
pub const INDUSTRY_REFERENCE: ReferenceStats = ReferenceStats {
    nuw_ref: 4421.0,
    nuc_ref: 92.0,
    nuldl_ref: 181.0,
};

/// Published proxy statistics of the 2K-line loghub samples, the uniform
/// cross-dataset sample, and the enterprise dataset.
pub const KNOWN_DATASET_STATS: [(&str, ProxyStats); 11] = [
    ("Apache", ProxyStats::new(874, 46, 9)),
    ("BGL", ProxyStats::new(2068, 75, 114)),
    ("HDFS", ProxyStats::new(3599, 56, 59)),
    ("HealthApp", ProxyStats::new(1512, 71, 55)),
    ("HPC", ProxyStats::new(510, 65, 50)),
    ("Mac", ProxyStats::new(2981, 90, 186)),
    ("OpenStack", ProxyStats::new(1445, 72, 50)),
    ("Spark", ProxyStats::new(1970, 70, 63)),
    ("Windows", ProxyStats::new(1206, 82, 66)),
    ("Combined", ProxyStats::new(3123, 91, 157)),
    ("Industry", ProxyStats::new(4421, 92, 181)),
];

/// Looks up a row of [`KNOWN_DATASET_STATS`] by (case-insensitive) name.
pub fn known_stats(name: &str) -> Option<ProxyStats> {
    KNOWN_DATASET_STATS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, s)| *s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub words: f64,
    pub chars: f64,
    pub lengths: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            words: 0.4,
            chars: 0.2,
            lengths: 0.4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Components {
    pub words: f64,
    pub chars: f64,
    pub lengths: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeterogeneityScore {
    pub h: f64,
    pub components: Components,
}

pub fn proxy_stats(ds: &Dataset) -> Result<ProxyStats> {
    if ds.is_empty() {
        return Err(Error::EmptyInput("proxy statistics need at least one record"));
    }
    let mut words = HashSet::new();
    let mut chars = HashSet::new();
    let mut lengths = HashSet::new();
    for content in ds.contents() {
        words.extend(content.split_whitespace());
        let mut len = 0usize;
        for c in content.chars().filter(|c| !matches!(c, '\n' | '\r')) {
            chars.insert(c);
            len += 1;
        }
        lengths.insert(len);
    }
    Ok(ProxyStats::new(words.len(), chars.len(), lengths.len()))
}

pub fn h_score(stats: &ProxyStats, reference: &ReferenceStats) -> Result<HeterogeneityScore> {
    h_score_weighted(stats, reference, &Weights::default())
}

pub fn h_score_weighted(
    stats: &ProxyStats,
    reference: &ReferenceStats,
    weights: &Weights,
) -> Result<HeterogeneityScore> {
    reference.validate()?;
    let [w, c, l] = stats.as_array();
    let components = Components {
        words: (w / reference.nuw_ref).min(1.0),
        chars: (c / reference.nuc_ref).min(1.0),
        lengths: (l / reference.nuldl_ref).min(1.0),
    };
    let h = weights.words * components.words
        + weights.chars * components.chars
        + weights.lengths * components.lengths;
    Ok(HeterogeneityScore { h, components })
}

/// Convenience: `h_score(proxy_stats(ds), reference)`.
pub fn dataset_h(ds: &Dataset, reference: &ReferenceStats) -> Result<(ProxyStats, HeterogeneityScore)> {
    let stats = proxy_stats(ds)?;
    Ok((stats, h_score(&stats, reference)?))
}

/// Spread of each proxy across datasets: the sample standard deviation
/// (divisor n - 1) of the reference-normalized values.
pub fn metric_variability(stats: &[ProxyStats], reference: &ReferenceStats) -> Result<[f64; 3]> {
    if stats.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "variability needs at least 2 datasets, got {}",
            stats.len()
        )));
    }
    reference.validate()?;
    let refs = reference.as_array();
    let n = stats.len() as f64;
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let values: Vec<f64> = stats.iter().map(|s| s.as_array()[k] / refs[k]).collect();
        let mean = values.iter().sum::<f64>() / n;
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        *slot = (ss / (n - 1.0)).sqrt();
    }
    Ok(out)
}
