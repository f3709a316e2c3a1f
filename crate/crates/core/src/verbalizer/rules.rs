//! Individual token rules used by the pipeline.

use crate::numspell::Case;
use crate::textcore::{is_estonian_letter, is_estonian_vowel, Token, TokenKind};

use super::config::{AbbreviationEntry, LetterNameTable, RuleConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpellError {
    #[error("no spoken name for letter {0:?}")]
    MissingLetter(char),
}

/// Letter-by-letter reading: hyphen-joined letter names, with an optional case
/// ending glued straight onto the last name (`MTÜ` + `le` → `emm-tee-üüle`).
pub fn spell_letters(
    token: &str,
    names: &LetterNameTable,
    case_suffix: Option<&str>,
) -> Result<String, SpellError> {
    let mut parts = Vec::with_capacity(token.len());
    for c in token.chars() {
        parts.push(names.name(c).ok_or(SpellError::MissingLetter(c))?);
    }
    let mut out = parts.join("-");
    if let Some(suffix) = case_suffix {
        out.push_str(suffix);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UppercaseClass {
    /// Long enough to be a heading word; read as an ordinary word.
    Title,
    /// Conventionally pronounced as a word (NATO).
    SpokenWordAcronym,
    SpellOut,
}

pub fn classify_uppercase(token: &str, config: &RuleConfig) -> UppercaseClass {
    if token.chars().count() >= config.title_min_length {
        UppercaseClass::Title
    } else if config.spoken_acronyms.contains(token) {
        UppercaseClass::SpokenWordAcronym
    } else {
        UppercaseClass::SpellOut
    }
}

/// `PEALKIRI` → `Pealkiri`.
pub(crate) fn title_case(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars.flat_map(char::to_lowercase)).collect(),
        None => String::new(),
    }
}

/// Renders an all-uppercase letter sequence according to [`classify_uppercase`].
pub(crate) fn render_uppercase(token: &str, suffix: Option<&str>, config: &RuleConfig) -> String {
    let suffix_str = suffix.unwrap_or("");
    match classify_uppercase(token, config) {
        UppercaseClass::Title => format!("{}{suffix_str}", title_case(token)),
        UppercaseClass::SpokenWordAcronym => format!("{token}{suffix_str}"),
        UppercaseClass::SpellOut => spell_or_filter(token, suffix, config),
    }
}

/// Spells a token; letters without a name are dropped rather than failing.
pub(crate) fn spell_or_filter(token: &str, suffix: Option<&str>, config: &RuleConfig) -> String {
    let known: String = token.chars().filter(|&c| config.letter_names.name(c).is_some()).collect();
    if known.is_empty() {
        return suffix.unwrap_or("").to_string();
    }
    spell_letters(&known, &config.letter_names, suffix).expect("filtered to known letters")
}

fn keyword_matches(keyword: &str, word: &str) -> bool {
    match keyword.strip_suffix('*') {
        Some(prefix) => word.starts_with(prefix),
        None => word == keyword,
    }
}

/// Picks the expansion maximizing `weight × (1 + matched keywords)`, ties
/// going to the earlier dictionary line. `None` when the entry has no
/// expansions (spell-out or read-as-word entries).
pub fn expand_abbreviation<'a>(entry: &'a AbbreviationEntry, sentence_context: &[Token]) -> Option<&'a str> {
    let words: Vec<String> = sentence_context
        .iter()
        .filter(|t| t.text.chars().any(char::is_alphabetic))
        .map(|t| t.text.to_lowercase())
        .collect();
    let mut best: Option<(f64, &str)> = None;
    for exp in &entry.expansions {
        let hits = exp
            .context_keywords
            .iter()
            .filter(|k| words.iter().any(|w| keyword_matches(k, w)))
            .count();
        let score = exp.weight * (1.0 + hits as f64);
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, &exp.text));
        }
    }
    best.map(|(_, text)| text)
}

fn is_dash(t: &Token) -> bool {
    t.is_symbol("-") || t.is_symbol("–")
}

/// `2-3` / `10–12` / `10 - 12` → `kaks kuni kolm`. `None` unless the three
/// tokens are number, dash, number, spaced either on both sides or on neither.
pub fn verbalize_range(a: &Token, dash: &Token, b: &Token, config: &RuleConfig) -> Option<String> {
    let plain = |t: &Token| t.kind == TokenKind::CardinalNumber;
    let symmetric = a.joined_right == dash.joined_right;
    if !(plain(a) && is_dash(dash) && plain(b) && symmetric) {
        return None;
    }
    Some(format!(
        "{} kuni {}",
        config.numbers.number_or_digits(&a.text),
        config.numbers.number_or_digits(&b.text)
    ))
}

/// Colon between two numbers: a ratio (`koolon`) when spaced on both sides or
/// when both operands are small, otherwise division (`jagatud`).
pub fn verbalize_colon(a: &Token, colon: &Token, b: &Token, config: &RuleConfig) -> Option<String> {
    if !(a.kind == TokenKind::CardinalNumber && colon.is_symbol(":") && b.kind == TokenKind::CardinalNumber) {
        return None;
    }
    let spaced = !a.joined_right && !colon.joined_right;
    let unspaced = a.joined_right && colon.joined_right;
    let small = |t: &Token| t.text.parse::<u64>().is_ok_and(|n| n <= config.colon.ratio_max);
    let word = if spaced || (unspaced && small(a) && small(b)) { "koolon" } else { "jagatud" };
    Some(format!(
        "{} {word} {}",
        config.numbers.number_or_digits(&a.text),
        config.numbers.number_or_digits(&b.text)
    ))
}

/// Digit-by-digit reading for identifiers and phone numbers. Group separators
/// become commas, a leading `+` is read by its symbol name. Plain digit runs
/// shorter than the threshold are read as cardinals instead.
pub fn verbalize_digit_sequence(token: &str, config: &RuleConfig) -> String {
    let digit_count = token.bytes().filter(u8::is_ascii_digit).count();
    let plain = token.bytes().all(|b| b.is_ascii_digit());
    if plain && digit_count < config.digit_group_threshold {
        return config.numbers.number_or_digits(token);
    }
    let mut groups = Vec::new();
    let mut prefix = None;
    let mut current = String::new();
    for c in token.chars() {
        if c.is_ascii_digit() {
            current.push(c);
        } else if c == '+' && groups.is_empty() && current.is_empty() {
            prefix = Some(config.symbols.name('+').unwrap_or("pluss"));
        } else if !current.is_empty() {
            groups.push(config.numbers.digits(&current));
            current.clear();
        }
    }
    if !current.is_empty() {
        groups.push(config.numbers.digits(&current));
    }
    let body = groups.join(", ");
    match prefix {
        Some(p) => format!("{p} {body}"),
        None => body,
    }
}

/// Foreign `c` inside brand-like names: `ts` before a front vowel, `k` otherwise.
fn respell_c(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    let mut out = String::with_capacity(word.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        if c == 'c' {
            match next {
                Some('e' | 'i' | 'y') => out.push_str("ts"),
                Some('k') => {}
                _ => out.push('k'),
            }
        } else {
            out.push(c);
        }
        i += 1;
    }
    out
}

#[derive(Debug, PartialEq)]
enum Segment {
    Letters(String),
    Digits(String),
}

fn segment_mixed(token: &str) -> Vec<Segment> {
    let chars: Vec<char> = token.chars().collect();
    let mut segments = Vec::new();
    let mut start = 0;
    for i in 1..=chars.len() {
        let boundary = i == chars.len() || {
            let (prev, cur) = (chars[i - 1], chars[i]);
            let next = chars.get(i + 1).copied();
            (prev.is_lowercase() && cur.is_uppercase())
                || (prev.is_alphabetic() != cur.is_alphabetic())
                || (prev.is_uppercase() && cur.is_uppercase() && next.is_some_and(char::is_lowercase))
        };
        if boundary {
            let seg: String = chars[start..i].iter().collect();
            segments.push(if chars[start].is_ascii_digit() { Segment::Digits(seg) } else { Segment::Letters(seg) });
            start = i;
        }
    }
    segments
}

/// Splits names like `eCoop` or `DigiDoc4` at case and letter/digit
/// boundaries. Single letters are spelled, all-caps runs go through the
/// uppercase rules, lowercase consonant clusters are spelled, and remaining
/// letter runs are read as one lowercase word (adjacent runs merged).
pub fn verbalize_mixed_case(token: &str, config: &RuleConfig) -> String {
    let mut words: Vec<String> = Vec::new();
    let mut pending_word = String::new();
    let flush = |pending: &mut String, words: &mut Vec<String>| {
        if !pending.is_empty() {
            words.push(respell_c(pending));
            pending.clear();
        }
    };
    for seg in segment_mixed(token) {
        match seg {
            Segment::Digits(d) => {
                flush(&mut pending_word, &mut words);
                words.push(config.numbers.number_or_digits(&d));
            }
            Segment::Letters(l) => {
                let count = l.chars().count();
                let all_upper = l.chars().all(char::is_uppercase);
                let consonants = l.chars().all(char::is_lowercase) && !l.chars().any(is_estonian_vowel);
                if count == 1 || consonants {
                    flush(&mut pending_word, &mut words);
                    words.push(spell_or_filter(&l, None, config));
                } else if all_upper {
                    flush(&mut pending_word, &mut words);
                    words.push(render_uppercase(&l, None, config));
                } else {
                    pending_word.extend(l.chars().flat_map(char::to_lowercase).filter(|&c| is_estonian_letter(c)));
                }
            }
        }
    }
    flush(&mut pending_word, &mut words);
    words.retain(|w| !w.is_empty());
    words.join(" ")
}

/// Day-ordinal, month name and year for `dd.mm.yyyy`.
pub(crate) fn verbalize_date(token: &str, config: &RuleConfig) -> String {
    let mut fields = token.split('.');
    let (Some(d), Some(m), Some(y)) = (fields.next(), fields.next(), fields.next()) else {
        return config.numbers.digits(token);
    };
    let day = d.parse::<u64>().ok().and_then(|d| config.numbers.ordinal(d, Case::Nominative).ok());
    let month = m.parse::<u32>().ok().and_then(|m| config.numbers.month(m));
    match (day, month) {
        (Some(day), Some(month)) => format!("{day} {month} {}", config.numbers.number_or_digits(y)),
        _ => config.numbers.digits(token),
    }
}

/// `14:30` → `neliteist kolmkümmend`, `14:05` → `neliteist null viis`.
pub(crate) fn verbalize_time(token: &str, config: &RuleConfig) -> String {
    let (h, m) = token.split_once(':').unwrap_or((token, "00"));
    let hour = config.numbers.number_or_digits(h);
    match m {
        "00" => hour,
        _ if m.starts_with('0') => format!("{hour} {}", config.numbers.digits(m)),
        _ => format!("{hour} {}", config.numbers.number_or_digits(m)),
    }
}

/// Reads an alphanumeric run inside a URL or e-mail address.
fn verbalize_address_part(part: &str, config: &RuleConfig) -> String {
    let letters = part.chars().all(char::is_alphabetic);
    if !letters || part.chars().any(char::is_uppercase) && part.chars().any(char::is_lowercase) {
        return verbalize_mixed_case(part, config);
    }
    if part.chars().all(char::is_uppercase) && part.chars().count() > 1 {
        return render_uppercase(part, None, config);
    }
    if part.chars().count() == 1 || !part.chars().any(is_estonian_vowel) {
        return spell_or_filter(part, None, config);
    }
    part.chars().filter(|&c| is_estonian_letter(c)).flat_map(char::to_lowercase).collect()
}

/// URLs and e-mail addresses: scheme dropped, separators read by name,
/// alphanumeric runs read through the mixed-case rules.
pub(crate) fn verbalize_address(token: &str, config: &RuleConfig) -> String {
    let lower = token.to_lowercase();
    let body = ["https://", "http://"]
        .iter()
        .find(|p| lower.starts_with(*p))
        .map_or(token, |p| &token[p.len()..]);
    let mut words = Vec::new();
    let mut run = String::new();
    for c in body.chars() {
        if c.is_alphanumeric() {
            run.push(c);
            continue;
        }
        if !run.is_empty() {
            words.push(verbalize_address_part(&run, config));
            run.clear();
        }
        if let Some(name) = config.symbols.name(c) {
            words.push(name.to_string());
        }
    }
    if !run.is_empty() {
        words.push(verbalize_address_part(&run, config));
    }
    words.retain(|w| !w.is_empty());
    words.join(" ")
}
