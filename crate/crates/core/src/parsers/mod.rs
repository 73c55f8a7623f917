//! Reference log parsers and the parser-output file format.
//!
//! Two built-in parsers are provided: an online fixed-depth prefix-tree parser
//! ([`TreeParser`]) and an offline positional token-frequency parser
//! ([`token_frequency::parse`]). Any other parser plugs in by writing a
//! `LineId,EventTemplate` file index-aligned with the input dataset; see
//! [`read_parse_result`].

mod output;
pub mod token_frequency;
pub mod tree;

use regex::Regex;
use serde::{Deserialize, Serialize};

pub use output::{load_parse_result, read_parse_result, save_parse_result, write_parse_result};
pub use token_frequency::TokenFrequencyConfig;
pub use tree::{ClusterId, TreeConfig, TreeParser};

use crate::corpus::{Dataset, WILDCARD};
use crate::error::{Error, Result};
use crate::metrics::ParseResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ParserConfig {
    Tree(TreeConfig),
    TokenFrequency(TokenFrequencyConfig),
}

impl ParserConfig {
    pub fn tree() -> Self {
        ParserConfig::Tree(TreeConfig::default())
    }

    pub fn token_frequency() -> Self {
        ParserConfig::TokenFrequency(TokenFrequencyConfig::default())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ParserConfig::Tree(c) => c.validate(),
            ParserConfig::TokenFrequency(c) => c.validate(),
        }
    }

    /// Short human-readable label, e.g. `tree(d=4,st=0.4)`.
    pub fn label(&self) -> String {
        match self {
            ParserConfig::Tree(c) => format!("tree(d={},st={})", c.depth, c.similarity_threshold),
            ParserConfig::TokenFrequency(c) => format!("token-frequency(t={})", c.threshold),
        }
    }
}

/// Parses every record of `ds` into a template.
pub fn parse(ds: &Dataset, cfg: &ParserConfig) -> Result<ParseResult> {
    if ds.is_empty() {
        return Err(Error::EmptyInput("cannot parse an empty dataset"));
    }
    cfg.validate()?;
    match cfg {
        ParserConfig::Tree(c) => {
            let mut parser = TreeParser::new(c.clone())?;
            parser.parse(ds)
        }
        ParserConfig::TokenFrequency(c) => token_frequency::parse(ds, c),
    }
}

/// Returns each record's stored ground truth.
pub fn identity_parser(ds: &Dataset) -> Result<ParseResult> {
    ParseResult::from_ground_truth(ds)
}

/// Optional message-level masking: every regex match is replaced by `<*>`
/// before tokenization. Empty by default.
#[derive(Debug, Clone, Default)]
pub(crate) struct Masker {
    rules: Vec<Regex>,
}

impl Masker {
    pub(crate) fn new(patterns: &[String]) -> Result<Self> {
        let rules = patterns
            .iter()
            .map(|p| Regex::new(p).map_err(|e| Error::Config(format!("mask {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Masker { rules })
    }

    pub(crate) fn tokens(&self, content: &str) -> Vec<String> {
        if self.rules.is_empty() {
            return content.split_whitespace().map(str::to_string).collect();
        }
        let mut text = content.to_string();
        for r in &self.rules {
            text = r.replace_all(&text, WILDCARD).into_owned();
        }
        text.split_whitespace().map(str::to_string).collect()
    }
}
