//! Offline positional token-frequency parsing.
//!
//! Lines are grouped into length classes by token count. A first pass counts
//! how often each token occurs at each position within its class. In the
//! second pass a token is kept when its count is at least `threshold` times
//! the count of the most frequent token of the same line, and is replaced by
//! `<*>` otherwise.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Masker;
use crate::corpus::{Dataset, Template};
use crate::error::{Error, Result};
use crate::metrics::ParseResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenFrequencyConfig {
    pub threshold: f64,
    pub masks: Vec<String>,
}

impl Default for TokenFrequencyConfig {
    fn default() -> Self {
        TokenFrequencyConfig {
            threshold: 0.6,
            masks: Vec::new(),
        }
    }
}

impl TokenFrequencyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::Config(format!(
                "token-frequency threshold must be in (0, 1], got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

pub fn parse(ds: &Dataset, cfg: &TokenFrequencyConfig) -> Result<ParseResult> {
    cfg.validate()?;
    let masker = Masker::new(&cfg.masks)?;
    let lines: Vec<Vec<String>> = ds.contents().map(|c| masker.tokens(c)).collect();

    let mut counts: HashMap<(usize, usize, &str), usize> = HashMap::new();
    for tokens in &lines {
        for (pos, tok) in tokens.iter().enumerate() {
            *counts.entry((tokens.len(), pos, tok.as_str())).or_insert(0) += 1;
        }
    }

    let mut templates = Vec::with_capacity(lines.len());
    for (tokens, content) in lines.iter().zip(ds.contents()) {
        let freq: Vec<usize> = tokens
            .iter()
            .enumerate()
            .map(|(pos, tok)| counts[&(tokens.len(), pos, tok.as_str())])
            .collect();
        let max = freq.iter().copied().max().ok_or_else(|| Error::InvalidTemplate {
            text: content.to_string(),
            reason: "message has no tokens",
        })? as f64;
        let out: Vec<&str> = tokens
            .iter()
            .zip(&freq)
            .map(|(tok, &f)| {
                if (f as f64) < cfg.threshold * max {
                    "<*>"
                } else {
                    tok.as_str()
                }
            })
            .collect();
        templates.push(Template::from_tokens(&out)?);
    }
    Ok(ParseResult::new(templates))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(lines: &[&str]) -> Vec<String> {
        let ds = Dataset::from_lines("d", lines.iter().copied()).unwrap();
        parse(&ds, &TokenFrequencyConfig::default())
            .unwrap()
            .templates
            .into_iter()
            .map(|t| t.as_str().to_string())
            .collect()
    }

    #[test]
    fn rare_positions_become_wildcards() {
        let lines = ["send 1 bytes", "send 2 bytes", "send 3 bytes", "recv ok"];
        assert_eq!(
            run(&lines),
            vec!["send <*> bytes", "send <*> bytes", "send <*> bytes", "recv ok"]
        );
    }

    #[test]
    fn length_classes_are_separate() {
        // "a" at position 0 is counted per class, so the lone 2-token line keeps it.
        let lines = ["a x y", "a x z", "a q"];
        assert_eq!(run(&lines), vec!["a x <*>", "a x <*>", "a q"]);
    }

    #[test]
    fn deterministic() {
        let lines = ["p 1", "p 2", "q 3 4", "q 5 4"];
        assert_eq!(run(&lines), run(&lines));
    }

    #[test]
    fn threshold_bounds() {
        assert!(TokenFrequencyConfig { threshold: 0.0, masks: vec![] }.validate().is_err());
        assert!(TokenFrequencyConfig { threshold: 1.0, masks: vec![] }.validate().is_ok());
    }
}
