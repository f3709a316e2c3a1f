//! The rule pipeline that rewrites text into spoken form.
//!
//! Order: NFC composition, diacritic folding, tokenization, then per-token
//! rules (addresses and phones, dates, number ranges and ratios, Roman
//! numerals, case-suffixed acronyms, uppercase sequences, mixed case,
//! consonant clusters, dictionary abbreviations, numbers, symbols). Original
//! whitespace between tokens is kept; a space is inserted where two joined
//! tokens both render to words.

mod config;
mod roman;
mod rules;

use unicode_normalization::UnicodeNormalization;

use crate::textcore::{fold_diacritics, is_estonian_letter, is_sentence_punct, tokenize, Token, TokenKind};

pub use config::{
    AbbreviationDictionary, AbbreviationEntry, ColonPolicy, ConfigError, Expansion, LetterNameTable,
    RomanKeywords, RomanStoplist, RuleConfig, SymbolNames, WordSet,
};
pub use roman::{expand_roman, parse_roman, to_roman};
pub use rules::{
    classify_uppercase, expand_abbreviation, spell_letters, verbalize_colon, verbalize_digit_sequence,
    verbalize_mixed_case, verbalize_range, SpellError, UppercaseClass,
};

use rules::{render_uppercase, spell_or_filter};

/// Rewrites `text` into fully spoken form under `config`.
pub fn verbalize(text: &str, config: &RuleConfig) -> String {
    let composed: String = text.nfc().collect();
    let folded = fold_diacritics(&composed, &config.folding);
    let tokens = tokenize(&folded);

    let mut out = tokens.leading.clone();
    let mut pending_gap: Option<String> = None;
    let mut i = 0;
    while i < tokens.len() {
        let (rendered, consumed) = render_at(&tokens, i, config);
        let last = &tokens[i + consumed - 1];
        i += consumed;
        if rendered.is_empty() {
            if pending_gap.as_deref().is_none_or(str::is_empty) {
                pending_gap = Some(last.space_after.clone());
            }
            continue;
        }
        if let Some(gap) = pending_gap.take() {
            if gap.is_empty() {
                if ends_with_letter(&out) && starts_with_letter(&rendered) {
                    out.push(' ');
                }
            } else {
                out.push_str(&gap);
            }
        }
        out.push_str(&rendered);
        pending_gap = Some(last.space_after.clone());
    }
    if let Some(gap) = pending_gap {
        out.push_str(&gap);
    }
    out
}

fn ends_with_letter(s: &str) -> bool {
    s.chars().next_back().is_some_and(char::is_alphabetic)
}

fn starts_with_letter(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_alphabetic)
}

fn estonian_only(word: &str) -> String {
    word.chars().filter(|&c| is_estonian_letter(c)).collect()
}

/// Renders the token at `i`; returns the text and how many tokens it used.
fn render_at(tokens: &[Token], i: usize, config: &RuleConfig) -> (String, usize) {
    let t = &tokens[i];
    let prev = i.checked_sub(1).map(|p| &tokens[p]);
    let next = tokens.get(i + 1);

    if t.kind == TokenKind::CardinalNumber {
        if let (Some(op), Some(b)) = (next, tokens.get(i + 2)) {
            if let Some(r) = verbalize_range(t, op, b, config).or_else(|| verbalize_colon(t, op, b, config)) {
                return (r, 3);
            }
        }
    }

    let rendered = match t.kind {
        TokenKind::Url | TokenKind::Email => rules::verbalize_address(&t.text, config),
        TokenKind::Phone => verbalize_digit_sequence(&t.text, config),
        TokenKind::DateLike => rules::verbalize_date(&t.text, config),
        TokenKind::TimeLike => rules::verbalize_time(&t.text, config),
        TokenKind::RomanCandidate => {
            if let Some(ordinal) = expand_roman(&t.text, prev, next, config) {
                let dot_follows = next.is_some_and(|n| n.is_symbol(".")) && t.joined_right;
                let lowercase_after = tokens
                    .get(i + 2)
                    .is_some_and(|n| n.text.chars().next().is_some_and(char::is_lowercase));
                if dot_follows && lowercase_after {
                    return (ordinal, 2);
                }
                return (ordinal, 1);
            }
            render_letters(t, tokens, config)
        }
        TokenKind::CaseSuffixedAcronym => match config.abbreviations.get(&t.text) {
            Some(entry) => render_entry(entry, t, tokens, config),
            None => {
                let stem: String = t.text.chars().take_while(|c| c.is_uppercase()).collect();
                let suffix = t.text[stem.len()..].trim_start_matches('-');
                render_uppercase(&stem, Some(suffix), config)
            }
        },
        TokenKind::UppercaseSeq
        | TokenKind::MixedCase
        | TokenKind::LowercaseConsonants
        | TokenKind::Word => render_letters(t, tokens, config),
        TokenKind::CardinalNumber => verbalize_digit_sequence(&t.text, config),
        TokenKind::DecimalNumber => {
            let (int_part, frac) = t.text.split_once(',').unwrap_or((&t.text, "0"));
            config.numbers.decimal(int_part, frac).unwrap_or_else(|_| config.numbers.digits(&t.text))
        }
        TokenKind::DigitGroupSeq => {
            let digits: String = t.text.chars().filter(char::is_ascii_digit).collect();
            config.numbers.number_or_digits(&digits)
        }
        TokenKind::OrdinalDot => {
            let digits = t.text.trim_end_matches('.');
            match digits.parse::<u64>().ok().and_then(|n| config.numbers.ordinal(n, Default::default()).ok()) {
                Some(ordinal) if !digits.starts_with('0') => ordinal,
                _ => format!("{}.", config.numbers.number_or_digits(digits)),
            }
        }
        TokenKind::Symbol => render_symbol(t, prev, config),
        TokenKind::Punct => t.text.chars().filter(|&c| is_sentence_punct(c)).collect(),
    };
    (rendered, 1)
}

/// Letter tokens: dictionary first, then the class-specific rule.
fn render_letters(t: &Token, tokens: &[Token], config: &RuleConfig) -> String {
    if let Some(entry) = config.abbreviations.lookup(&t.text) {
        return render_entry(entry, t, tokens, config);
    }
    let upper = t.text.chars().all(char::is_uppercase);
    match t.kind {
        TokenKind::UppercaseSeq | TokenKind::RomanCandidate if upper => render_uppercase(&t.text, None, config),
        TokenKind::MixedCase => verbalize_mixed_case(&t.text, config),
        TokenKind::LowercaseConsonants => spell_or_filter(&t.text, None, config),
        _ => estonian_only(&t.text),
    }
}

fn render_entry(entry: &AbbreviationEntry, t: &Token, tokens: &[Token], config: &RuleConfig) -> String {
    if entry.force_spellout {
        return spell_or_filter(&t.text, None, config);
    }
    if entry.speak_as_word {
        return estonian_only(&t.text);
    }
    match expand_abbreviation(entry, tokens) {
        Some(text) if starts_uppercase(&t.text) && !starts_uppercase(text) && t.text.chars().skip(1).all(char::is_lowercase) => {
            title_case_first(text)
        }
        Some(text) => text.to_string(),
        None => spell_or_filter(&t.text, None, config),
    }
}

fn starts_uppercase(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

/// Capitalizes only the first letter, keeping the rest as written.
fn title_case_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn render_symbol(t: &Token, prev: Option<&Token>, config: &RuleConfig) -> String {
    let c = t.text.chars().next().unwrap_or(' ');
    match c {
        '-' if prev.is_some_and(|p| p.joined_right) && t.joined_right => "-".to_string(),
        // a free-standing hyphen is a dash
        '-' => "–".to_string(),
        '–' | '—' => c.to_string(),
        _ => config.symbols.name(c).unwrap_or_default().to_string(),
    }
}
