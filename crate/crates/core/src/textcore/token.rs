//! Left-to-right longest-match tokenizer.
//!
//! At every non-whitespace position each pattern proposes a match length; the
//! longest wins and ties go to the earlier kind in [`TokenKind::PRIORITY`].
//! Whitespace is never part of a match except inside digit groupings and phone
//! numbers, where a single space separates groups.

use std::ops::Deref;

use serde::Serialize;

use super::fold::is_estonian_letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TokenKind {
    Url,
    Email,
    Phone,
    DateLike,
    TimeLike,
    DecimalNumber,
    DigitGroupSeq,
    CardinalNumber,
    OrdinalDot,
    CaseSuffixedAcronym,
    RomanCandidate,
    UppercaseSeq,
    MixedCase,
    LowercaseConsonants,
    Word,
    Symbol,
    Punct,
}

impl TokenKind {
    /// Tie-break order when two patterns match the same length.
    pub const PRIORITY: [TokenKind; 17] = [
        TokenKind::Url,
        TokenKind::Email,
        TokenKind::Phone,
        TokenKind::DateLike,
        TokenKind::TimeLike,
        TokenKind::DecimalNumber,
        TokenKind::DigitGroupSeq,
        TokenKind::OrdinalDot,
        TokenKind::CardinalNumber,
        TokenKind::CaseSuffixedAcronym,
        TokenKind::RomanCandidate,
        TokenKind::UppercaseSeq,
        TokenKind::MixedCase,
        TokenKind::LowercaseConsonants,
        TokenKind::Word,
        TokenKind::Symbol,
        TokenKind::Punct,
    ];

    fn rank(self) -> usize {
        Self::PRIORITY.iter().position(|&k| k == self).unwrap_or(usize::MAX)
    }

    pub fn is_number(self) -> bool {
        matches!(
            self,
            TokenKind::CardinalNumber
                | TokenKind::DecimalNumber
                | TokenKind::DigitGroupSeq
                | TokenKind::OrdinalDot
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    /// Exact surface slice of the source.
    pub text: String,
    pub kind: TokenKind,
    /// Byte offsets `(start, end)` into the source.
    pub span: (usize, usize),
    /// No whitespace between this token and the next one.
    pub joined_right: bool,
    /// The whitespace that follows this token in the source.
    pub space_after: String,
}

impl Token {
    pub fn is_symbol(&self, s: &str) -> bool {
        matches!(self.kind, TokenKind::Symbol | TokenKind::Punct) && self.text == s
    }
}

/// Output of [`tokenize`]: the tokens plus any whitespace that precedes the
/// first one, which together reproduce the input exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tokenized {
    pub leading: String,
    pub tokens: Vec<Token>,
}

impl Tokenized {
    pub fn detokenize(&self) -> String {
        let mut out = self.leading.clone();
        for t in &self.tokens {
            out.push_str(&t.text);
            out.push_str(&t.space_after);
        }
        out
    }
}

impl Deref for Tokenized {
    type Target = [Token];

    fn deref(&self) -> &[Token] {
        &self.tokens
    }
}

pub const SENTENCE_PUNCT: &[char] = &[
    '.', ',', '!', '?', ';', ':', '…', '(', ')', '[', ']', '{', '}', '"', '\'', '„', '“', '”', '«',
    '»', '‹', '›', '‘', '’', '‚',
];

pub fn is_sentence_punct(c: char) -> bool {
    SENTENCE_PUNCT.contains(&c)
}

pub fn is_estonian_vowel(c: char) -> bool {
    matches!(c.to_lowercase().next().unwrap_or(c), 'a' | 'e' | 'i' | 'o' | 'u' | 'õ' | 'ä' | 'ö' | 'ü' | 'y')
}

fn is_group_space(c: char) -> bool {
    matches!(c, ' ' | '\u{a0}' | '\u{202f}')
}

pub fn tokenize(text: &str) -> Tokenized {
    let mut out = Tokenized::default();
    let mut pos = skip_ws(text, 0);
    out.leading = text[..pos].to_string();
    while pos < text.len() {
        let (kind, len) = best_match(text, pos);
        let end = pos + len;
        let next = skip_ws(text, end);
        out.tokens.push(Token {
            text: text[pos..end].to_string(),
            kind,
            span: (pos, end),
            joined_right: next == end && end < text.len(),
            space_after: text[end..next].to_string(),
        });
        pos = next;
    }
    out
}

fn skip_ws(text: &str, mut pos: usize) -> usize {
    for c in text[pos..].chars() {
        if !c.is_whitespace() {
            break;
        }
        pos += c.len_utf8();
    }
    pos
}

fn best_match(text: &str, pos: usize) -> (TokenKind, usize) {
    let rest = &text[pos..];
    let mut candidates: Vec<(TokenKind, usize)> = Vec::with_capacity(6);
    let mut push = |kind, len: Option<usize>| {
        if let Some(len) = len.filter(|&l| l > 0) {
            candidates.push((kind, len));
        }
    };
    push(TokenKind::Url, match_url(rest));
    push(TokenKind::Email, match_email(rest));
    push(TokenKind::Phone, match_phone(rest));
    push(TokenKind::DateLike, match_date(rest));
    push(TokenKind::TimeLike, match_time(rest));
    push(TokenKind::DecimalNumber, match_decimal(rest));
    push(TokenKind::DigitGroupSeq, match_digit_groups(rest));
    push(TokenKind::OrdinalDot, match_ordinal_dot(rest));
    push(TokenKind::CardinalNumber, digit_run(rest));
    push(TokenKind::CaseSuffixedAcronym, match_case_suffixed(rest));
    push(TokenKind::MixedCase, match_mixed_case(rest));
    if let Some(len) = letter_run(rest) {
        push(classify_letter_run(&rest[..len]), Some(len));
    }
    let fallback = rest.chars().next().expect("non-empty remainder");
    let kind = if is_sentence_punct(fallback) { TokenKind::Punct } else { TokenKind::Symbol };
    push(kind, Some(fallback.len_utf8()));

    candidates
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.rank().cmp(&a.0.rank())))
        .expect("fallback candidate always present")
}

/// Kind of a maximal run of alphabetic characters.
fn classify_letter_run(run: &str) -> TokenKind {
    let estonian = run.chars().all(is_estonian_letter);
    let count = run.chars().count();
    if estonian && run.chars().all(|c| "IVXLCDM".contains(c)) {
        TokenKind::RomanCandidate
    } else if estonian && count >= 2 && run.chars().all(char::is_uppercase) {
        TokenKind::UppercaseSeq
    } else if estonian
        && run.chars().all(char::is_lowercase)
        && !run.chars().any(is_estonian_vowel)
    {
        TokenKind::LowercaseConsonants
    } else {
        TokenKind::Word
    }
}

fn digit_run(s: &str) -> Option<usize> {
    let n = s.bytes().take_while(u8::is_ascii_digit).count();
    (n > 0).then_some(n)
}

fn letter_run(s: &str) -> Option<usize> {
    let n: usize = s.chars().take_while(|c| c.is_alphabetic()).map(char::len_utf8).sum();
    (n > 0).then_some(n)
}

fn next_char(s: &str, at: usize) -> Option<char> {
    s.get(at..).and_then(|r| r.chars().next())
}

fn followed_by_digit(s: &str, at: usize) -> bool {
    next_char(s, at).is_some_and(|c| c.is_ascii_digit())
}

fn match_url(s: &str) -> Option<usize> {
    let lower_prefix: String = s.chars().take(8).flat_map(char::to_lowercase).collect();
    let prefix_len = ["https://", "http://", "www."]
        .into_iter()
        .find(|p| lower_prefix.starts_with(p))?
        .len();
    let mut end: usize = s.chars().take_while(|c| !c.is_whitespace()).map(char::len_utf8).sum();
    while end > prefix_len {
        let last = s[..end].chars().next_back()?;
        if ".,;:!?)]}\"'»”“’".contains(last) {
            end -= last.len_utf8();
        } else {
            break;
        }
    }
    (end > prefix_len).then_some(end)
}

fn match_email(s: &str) -> Option<usize> {
    let local: usize = s
        .chars()
        .take_while(|&c| c.is_alphanumeric() || "._%+-".contains(c))
        .map(char::len_utf8)
        .sum();
    if local == 0 || !s.starts_with(|c: char| c.is_alphanumeric()) || next_char(s, local) != Some('@') {
        return None;
    }
    let mut pos = local + 1;
    let mut labels = 0;
    let mut last_label = "";
    loop {
        let label: usize = s[pos..]
            .chars()
            .take_while(|&c| c.is_alphanumeric() || c == '-')
            .map(char::len_utf8)
            .sum();
        if label == 0 {
            break;
        }
        last_label = &s[pos..pos + label];
        labels += 1;
        pos += label;
        if next_char(s, pos) == Some('.')
            && next_char(s, pos + 1).is_some_and(|c| c.is_alphanumeric())
        {
            pos += 1;
        } else {
            break;
        }
    }
    let tld_ok = last_label.chars().count() >= 2 && last_label.chars().all(char::is_alphabetic);
    (labels >= 2 && tld_ok).then_some(pos)
}

/// Consumes digit groups separated by one separator char accepted by `sep`.
/// Returns the byte length and the group lengths.
fn digit_groups(s: &str, sep: impl Fn(char) -> bool) -> (usize, Vec<usize>) {
    let mut pos = 0;
    let mut groups = Vec::new();
    while let Some(n) = digit_run(&s[pos..]) {
        groups.push(n);
        pos += n;
        match next_char(s, pos) {
            Some(c) if sep(c) && followed_by_digit(s, pos + c.len_utf8()) => pos += c.len_utf8(),
            _ => break,
        }
    }
    (pos, groups)
}

fn is_thousands_grouping(groups: &[usize]) -> bool {
    groups.len() >= 2 && (1..=3).contains(&groups[0]) && groups[1..].iter().all(|&g| g == 3)
}

fn match_phone(s: &str) -> Option<usize> {
    if let Some(rest) = s.strip_prefix('+') {
        let (len, groups) = digit_groups(rest, |c| c == ' ' || c == '-');
        let digits: usize = groups.iter().sum();
        return (7..=15).contains(&digits).then_some(len + 1);
    }
    let (len, groups) = digit_groups(s, |c| c == ' ');
    let digits: usize = groups.iter().sum();
    (groups.len() >= 2 && (7..=15).contains(&digits) && !is_thousands_grouping(&groups))
        .then_some(len)
}

fn match_digit_groups(s: &str) -> Option<usize> {
    let (len, groups) = digit_groups(s, is_group_space);
    if !is_thousands_grouping(&groups) {
        // keep the longest thousands-grouped prefix
        let first = *groups.first()?;
        if first > 3 {
            return None;
        }
        let mut pos = first;
        let mut n = 0;
        for &g in &groups[1..] {
            if g != 3 {
                break;
            }
            pos += next_char(s, pos)?.len_utf8() + 3;
            n += 1;
        }
        return (n > 0).then_some(pos);
    }
    Some(len)
}

fn two_digit_field(s: &str, at: usize, min: u32, max: u32) -> Option<usize> {
    let n = digit_run(s.get(at..)?)?;
    if n > 2 {
        return None;
    }
    let v: u32 = s[at..at + n].parse().ok()?;
    (min..=max).contains(&v).then_some(n)
}

fn match_date(s: &str) -> Option<usize> {
    let d = two_digit_field(s, 0, 1, 31)?;
    if next_char(s, d) != Some('.') {
        return None;
    }
    let m = two_digit_field(s, d + 1, 1, 12)?;
    let y_at = d + 1 + m;
    if next_char(s, y_at) != Some('.') {
        return None;
    }
    let y = digit_run(&s[y_at + 1..])?;
    (y == 4).then_some(y_at + 1 + y)
}

fn match_time(s: &str) -> Option<usize> {
    let h = two_digit_field(s, 0, 0, 23)?;
    if next_char(s, h) != Some(':') {
        return None;
    }
    let m = digit_run(&s[h + 1..])?;
    if m != 2 || s[h + 1..h + 3].parse::<u32>().ok()? > 59 {
        return None;
    }
    Some(h + 3)
}

fn match_decimal(s: &str) -> Option<usize> {
    let i = digit_run(s)?;
    if next_char(s, i) != Some(',') {
        return None;
    }
    let f = digit_run(&s[i + 1..])?;
    Some(i + 1 + f)
}

/// `5. mail`: digits, a dot, whitespace, then a lowercase letter.
fn match_ordinal_dot(s: &str) -> Option<usize> {
    let n = digit_run(s)?;
    if next_char(s, n) != Some('.') {
        return None;
    }
    let after = skip_ws(s, n + 1);
    if after == n + 1 {
        return None;
    }
    next_char(s, after).filter(|c| c.is_lowercase()).map(|_| n + 1)
}

fn match_case_suffixed(s: &str) -> Option<usize> {
    let stem: usize = s
        .chars()
        .take_while(|&c| c.is_uppercase() && is_estonian_letter(c))
        .map(char::len_utf8)
        .sum();
    if s[..stem].chars().count() < 2 {
        return None;
    }
    let mut pos = stem;
    if next_char(s, pos) == Some('-') {
        pos += 1;
    }
    let suffix: usize = s[pos..]
        .chars()
        .take_while(|&c| c.is_lowercase() && is_estonian_letter(c))
        .map(char::len_utf8)
        .sum();
    let count = s[pos..pos + suffix].chars().count();
    if !(1..=4).contains(&count) || next_char(s, pos + suffix).is_some_and(char::is_alphanumeric) {
        return None;
    }
    Some(pos + suffix)
}

/// Alphanumeric run starting with a letter that has a lower→upper or a
/// letter→digit transition (eCoop, DigiDoc4).
fn match_mixed_case(s: &str) -> Option<usize> {
    let first = s.chars().next()?;
    if !is_estonian_letter(first) {
        return None;
    }
    let len: usize = s
        .chars()
        .take_while(|&c| is_estonian_letter(c) || c.is_ascii_digit())
        .map(char::len_utf8)
        .sum();
    let run: Vec<char> = s[..len].chars().collect();
    let mixed = run.windows(2).any(|w| {
        (w[0].is_lowercase() && w[1].is_uppercase()) || (w[0].is_alphabetic() && w[1].is_ascii_digit())
    });
    mixed.then_some(len)
}
