use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The placeholder standing in for a variable part of a log message.
pub const WILDCARD: &str = "<*>";

/// A log template: literal tokens plus `<*>` placeholders, kept in canonical
/// form (single spaces between tokens, no surrounding whitespace).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Template(String);

impl Template {
    /// Canonicalizes `text` and rejects it if nothing remains.
    pub fn new(text: &str) -> Result<Self> {
        let canonical = canonicalize(text);
        if canonical.is_empty() {
            return Err(Error::InvalidTemplate {
                text: text.to_string(),
                reason: "template has no tokens",
            });
        }
        Ok(Template(canonical))
    }

    /// Like [`Template::new`], but maps blank text to `None`.
    pub fn parse_optional(text: &str) -> Option<Self> {
        Template::new(text).ok()
    }

    /// Builds a template from tokens that are already free of whitespace.
    pub(crate) fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let joined = tokens
            .iter()
            .map(AsRef::as_ref)
            .collect::<Vec<_>>()
            .join(" ");
        Template::new(&joined)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.0.split(' ')
    }

    pub fn token_count(&self) -> usize {
        self.tokens().count()
    }

    pub fn wildcard_count(&self) -> usize {
        self.0.matches(WILDCARD).count()
    }

    pub fn has_wildcards(&self) -> bool {
        self.0.contains(WILDCARD)
    }

    /// Replaces the placeholders left to right with `values`.
    ///
    /// This is the right inverse of [`crate::corpus::extract_variables`].
    pub fn substitute<S: AsRef<str>>(&self, values: &[S]) -> Result<String> {
        let slots = self.wildcard_count();
        if values.len() != slots {
            return Err(Error::Config(format!(
                "template {:?} has {slots} slots, got {} values",
                self.0,
                values.len()
            )));
        }
        let mut out = String::with_capacity(self.0.len() + 16 * slots);
        let mut pieces = self.0.split(WILDCARD);
        out.push_str(pieces.next().unwrap_or_default());
        for (piece, value) in pieces.zip(values) {
            out.push_str(value.as_ref());
            out.push_str(piece);
        }
        Ok(out)
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Template {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Template {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Template::new(&text).map_err(serde::de::Error::custom)
    }
}

/// Collapses whitespace runs to single spaces and trims both ends.
pub fn canonicalize(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}
