//! Roman numeral recognition with stoplist and context gating.

use crate::numspell::Case;
use crate::textcore::{Token, TokenKind};

use super::config::RuleConfig;

const NUMERALS: [(u32, &str); 13] = [
    (1000, "M"),
    (900, "CM"),
    (500, "D"),
    (400, "CD"),
    (100, "C"),
    (90, "XC"),
    (50, "L"),
    (40, "XL"),
    (10, "X"),
    (9, "IX"),
    (5, "V"),
    (4, "IV"),
    (1, "I"),
];

/// Canonical subtractive form of 1..=3999.
pub fn to_roman(mut n: u32) -> Option<String> {
    if n == 0 || n > 3999 {
        return None;
    }
    let mut out = String::new();
    for (value, glyphs) in NUMERALS {
        while n >= value {
            out.push_str(glyphs);
            n -= value;
        }
    }
    Some(out)
}

/// Parses a well-formed Roman numeral. Non-canonical spellings such as
/// `IIII`, `VX` or `IC` are rejected.
pub fn parse_roman(s: &str) -> Option<u32> {
    let value = |c| match c {
        'I' => Some(1),
        'V' => Some(5),
        'X' => Some(10),
        'L' => Some(50),
        'C' => Some(100),
        'D' => Some(500),
        'M' => Some(1000),
        _ => None,
    };
    let digits: Vec<u32> = s.chars().map(value).collect::<Option<_>>()?;
    if digits.is_empty() {
        return None;
    }
    let mut total: i64 = 0;
    for (i, &d) in digits.iter().enumerate() {
        match digits.get(i + 1) {
            Some(&next) if next > d => total -= i64::from(d),
            _ => total += i64::from(d),
        }
    }
    let n = u32::try_from(total).ok()?;
    (to_roman(n)? == s).then_some(n)
}

fn is_capitalized_name(t: &Token) -> bool {
    if t.kind != TokenKind::Word {
        return false;
    }
    let mut chars = t.text.chars();
    chars.next().is_some_and(char::is_uppercase) && chars.clone().next().is_some() && chars.all(char::is_lowercase)
}

/// Ordinal reading of a Roman numeral, or `None` when the token should be
/// handled as an ordinary letter sequence.
///
/// Requires a well-formed numeral outside the stoplist plus one context cue: a
/// following century/part keyword, a directly attached ordinal dot, or a
/// preceding capitalized name (`Karl XII`).
pub fn expand_roman(
    token: &str,
    left: Option<&Token>,
    right: Option<&Token>,
    config: &RuleConfig,
) -> Option<String> {
    if config.roman_stoplist.contains(token) {
        return None;
    }
    let n = parse_roman(token)?;
    let keyword_case = right
        .filter(|t| t.kind == TokenKind::Word || t.kind == TokenKind::LowercaseConsonants)
        .and_then(|t| config.roman_keywords.case_for(&t.text));
    let case = if let Some(case) = keyword_case {
        case
    } else if right.is_some_and(|t| t.is_symbol(".")) || left.is_some_and(is_capitalized_name) {
        Case::Nominative
    } else {
        return None;
    };
    config.numbers.ordinal(u64::from(n), case).ok()
}
