//! Diacritic folding for letters outside the Estonian alphabet.

use std::collections::{BTreeMap, BTreeSet};

use unicode_normalization::char::{decompose_canonical, is_combining_mark};

use crate::lexicon::{self, LexiconError};

/// Letters of the Estonian alphabet, both cases. These are never folded.
pub const ESTONIAN_LETTERS: &str =
    "abcdefghijklmnopqrstuvwxyzõäöüšžABCDEFGHIJKLMNOPQRSTUVWXYZÕÄÖÜŠŽ";

/// Latin letters whose diacritic is not a combining mark under canonical
/// decomposition (stroke, ligature, dotless forms).
const NON_DECOMPOSABLE: &[(char, char)] = &[
    ('ß', 's'),
    ('ø', 'o'),
    ('Ø', 'O'),
    ('æ', 'a'),
    ('Æ', 'A'),
    ('œ', 'o'),
    ('Œ', 'O'),
    ('ł', 'l'),
    ('Ł', 'L'),
    ('đ', 'd'),
    ('Đ', 'D'),
    ('ð', 'd'),
    ('Ð', 'D'),
    ('þ', 't'),
    ('Þ', 'T'),
    ('ı', 'i'),
    ('ħ', 'h'),
    ('Ħ', 'H'),
    ('ŧ', 't'),
    ('Ŧ', 'T'),
];

/// Returns true for letters of the Estonian alphabet (a–z, õ, ä, ö, ü, š, ž, either case).
pub fn is_estonian_letter(c: char) -> bool {
    matches!(c, 'a'..='z' | 'A'..='Z' | 'õ' | 'ä' | 'ö' | 'ü' | 'š' | 'ž' | 'Õ' | 'Ä' | 'Ö' | 'Ü' | 'Š' | 'Ž')
}

/// Codepoint-to-base-letter map plus the set of letters that must survive untouched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingTable {
    protected: BTreeSet<char>,
    extra: BTreeMap<char, char>,
}

impl Default for FoldingTable {
    fn default() -> Self {
        Self::with_protected(ESTONIAN_LETTERS.chars())
    }
}

impl FoldingTable {
    pub fn with_protected(protected: impl IntoIterator<Item = char>) -> Self {
        Self {
            protected: protected.into_iter().collect(),
            extra: NON_DECOMPOSABLE.iter().copied().collect(),
        }
    }

    /// Parses a protected-set override: one codepoint per line, either the
    /// literal character or `U+XXXX`. Blank lines and `#` comments are skipped.
    pub fn parse_protected(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut set = BTreeSet::new();
        for (line_no, line) in lexicon::content_lines(source) {
            let c = parse_codepoint(line)
                .ok_or_else(|| LexiconError::at(origin, line_no, format!("expected one codepoint, got {line:?}")))?;
            set.insert(c);
        }
        Ok(Self::with_protected(set))
    }

    pub fn is_protected(&self, c: char) -> bool {
        self.protected.contains(&c)
    }

    pub fn protected(&self) -> impl Iterator<Item = char> + '_ {
        self.protected.iter().copied()
    }

    /// Folds a single character. Non-letters and protected letters pass through.
    pub fn fold_char(&self, c: char) -> char {
        if self.protected.contains(&c) || !c.is_alphabetic() {
            return c;
        }
        if let Some(&base) = self.extra.get(&c) {
            return base;
        }
        let mut base = None;
        let mut marks_only = true;
        decompose_canonical(c, |d| {
            if base.is_none() {
                base = Some(d);
            } else if !is_combining_mark(d) {
                marks_only = false;
            }
        });
        match base {
            Some(b) if marks_only && b != c && b.is_alphabetic() => b,
            _ => c,
        }
    }
}

fn parse_codepoint(line: &str) -> Option<char> {
    if let Some(hex) = line.strip_prefix("U+").or_else(|| line.strip_prefix("u+")) {
        return u32::from_str_radix(hex, 16).ok().and_then(char::from_u32);
    }
    let mut chars = line.chars();
    let c = chars.next()?;
    chars.next().is_none().then_some(c)
}

/// Replaces every non-protected letter carrying a diacritic with its base letter.
/// The output has exactly as many characters as the input.
pub fn fold_diacritics(text: &str, table: &FoldingTable) -> String {
    text.chars().map(|c| table.fold_char(c)).collect()
}
