//! Alignment of log content against a template.
//!
//! Matching runs at token level first: both sides are split on single spaces,
//! literal tokens must match exactly, a bare `<*>` absorbs one or more content
//! tokens, and a token that mixes literal text with `<*>` (e.g. `blk_<*>`)
//! matches a single content token character by character. When no token-level
//! alignment exists (a variable that swallows part of a neighbouring token,
//! say), matching falls back to the whole string at character level.
//!
//! Both stages return the leftmost, shortest assignment: each placeholder takes
//! as little as it can while still letting the rest of the template consume the
//! full content. Every placeholder must capture at least one character.

use std::collections::HashSet;

use super::template::{Template, WILDCARD};
use crate::error::{Error, Result};

/// Returns the text captured by each `<*>` of `template`, in order.
pub fn extract_variables(content: &str, template: &Template) -> Result<Vec<String>> {
    if let Some(vars) = align_tokens(content, template) {
        return Ok(vars);
    }
    align_chars(content, template.as_str()).ok_or_else(|| Error::Alignment {
        content: content.to_string(),
        template: template.as_str().to_string(),
    })
}

/// True when `content` can be produced from `template` by filling its slots.
pub fn matches(content: &str, template: &Template) -> bool {
    extract_variables(content, template).is_ok()
}

enum Piece<'a> {
    Literal(&'a str),
    Wildcard,
    Mixed(&'a str),
}

fn classify(token: &str) -> Piece<'_> {
    if token == WILDCARD {
        Piece::Wildcard
    } else if token.contains(WILDCARD) {
        Piece::Mixed(token)
    } else {
        Piece::Literal(token)
    }
}

fn align_tokens(content: &str, template: &Template) -> Option<Vec<String>> {
    let pieces: Vec<Piece<'_>> = template.tokens().map(classify).collect();
    let tokens: Vec<&str> = content.split(' ').collect();
    let mut failed = HashSet::new();
    let mut captures = Vec::with_capacity(template.wildcard_count());
    if token_step(&pieces, &tokens, 0, 0, &mut failed, &mut captures) {
        Some(captures)
    } else {
        None
    }
}

fn token_step(
    pieces: &[Piece<'_>],
    tokens: &[&str],
    pi: usize,
    ti: usize,
    failed: &mut HashSet<(usize, usize)>,
    captures: &mut Vec<String>,
) -> bool {
    if pi == pieces.len() {
        return ti == tokens.len();
    }
    if ti == tokens.len() || failed.contains(&(pi, ti)) {
        return false;
    }
    let mark = captures.len();
    let ok = match &pieces[pi] {
        Piece::Literal(lit) => {
            *lit == tokens[ti] && token_step(pieces, tokens, pi + 1, ti + 1, failed, captures)
        }
        Piece::Mixed(pattern) => match align_chars(tokens[ti], pattern) {
            Some(inner) => {
                captures.extend(inner);
                token_step(pieces, tokens, pi + 1, ti + 1, failed, captures)
            }
            None => false,
        },
        Piece::Wildcard => {
            // Leave at least one content token for every remaining piece.
            let remaining = pieces.len() - pi - 1;
            let max_span = tokens.len() - ti - remaining.min(tokens.len() - ti);
            let mut found = false;
            for span in 1..=max_span {
                let value = tokens[ti..ti + span].join(" ");
                if value.is_empty() {
                    continue;
                }
                captures.push(value);
                if token_step(pieces, tokens, pi + 1, ti + span, failed, captures) {
                    found = true;
                    break;
                }
                captures.truncate(mark);
            }
            found
        }
    };
    if !ok {
        captures.truncate(mark);
        failed.insert((pi, ti));
    }
    ok
}

/// Character-level alignment of `text` against a `<*>` pattern.
fn align_chars(text: &str, pattern: &str) -> Option<Vec<String>> {
    let literals: Vec<&str> = pattern.split(WILDCARD).collect();
    let rest = text.strip_prefix(literals[0])?;
    let offset = text.len() - rest.len();
    let mut failed = HashSet::new();
    let mut captures = Vec::with_capacity(literals.len() - 1);
    if char_step(text, &literals, 1, offset, &mut failed, &mut captures) {
        Some(captures)
    } else {
        None
    }
}

/// Matches placeholder `li - 1` followed by `literals[li]`, starting at byte `pos`.
fn char_step(
    text: &str,
    literals: &[&str],
    li: usize,
    pos: usize,
    failed: &mut HashSet<(usize, usize)>,
    captures: &mut Vec<String>,
) -> bool {
    if li == literals.len() {
        return pos == text.len();
    }
    if failed.contains(&(li, pos)) {
        return false;
    }
    let literal = literals[li];
    let last = li + 1 == literals.len();
    let tail = &text[pos..];
    // Candidate capture ends, shortest first, at least one character long.
    let ends = tail
        .char_indices()
        .map(|(i, _)| i)
        .skip(1)
        .chain(std::iter::once(tail.len()));
    for end in ends {
        if end == 0 {
            continue;
        }
        let after = &tail[end..];
        if last {
            if after == literal {
                captures.push(tail[..end].to_string());
                return true;
            }
            continue;
        }
        if after.starts_with(literal) {
            captures.push(tail[..end].to_string());
            if char_step(text, literals, li + 1, pos + end + literal.len(), failed, captures) {
                return true;
            }
            captures.pop();
        }
    }
    failed.insert((li, pos));
    false
}
