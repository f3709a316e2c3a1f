//! Shared plumbing for the line-oriented UTF-8 data files.

use std::fmt;

/// A data file failed to parse. Carries the origin (usually a path) and the
/// 1-based line number so callers can print `file:line: message`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct LexiconError {
    pub origin: String,
    pub line: usize,
    pub message: String,
}

impl LexiconError {
    pub fn at(origin: &str, line: usize, message: impl Into<String>) -> Self {
        Self { origin: origin.to_string(), line, message: message.into() }
    }
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.origin, self.message)
        } else {
            write!(f, "{}:{}: {}", self.origin, self.line, self.message)
        }
    }
}

/// Yields `(line_number, line)` for every non-blank, non-comment line.
///
/// A comment is a line whose first character is `#` followed by a space or
/// nothing, so a data line may still start with a literal `#` symbol.
pub fn content_lines(source: &str) -> impl Iterator<Item = (usize, &str)> {
    source.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || is_comment(line) {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn is_comment(line: &str) -> bool {
    let mut chars = line.trim_start_matches([' ', '\t']).chars();
    chars.next() == Some('#') && matches!(chars.next(), None | Some(' '))
}
