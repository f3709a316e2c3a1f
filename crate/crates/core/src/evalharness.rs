//! Gold-corpus scoring of normalizer output.
//!
//! A sentence counts as correct only when the hypothesis equals the gold
//! verbalization after [`canonicalize`]. Annotated abbreviation spans earn
//! separate points: a minus point when the hypothesis reads the abbreviation
//! as some other word, a plus point when a span the gold spells letter by
//! letter is instead correctly expanded to a full word.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::textcore::is_sentence_punct;
use crate::verbalizer::LetterNameTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedMode {
    Word,
    Spellout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbbrevSpan {
    pub surface: String,
    pub expected_mode: ExpectedMode,
    /// Correct full-word renderings.
    #[serde(default)]
    pub acceptable: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldRecord {
    pub id: String,
    pub raw: String,
    pub gold: String,
    #[serde(default)]
    pub abbrev_spans: Vec<AbbrevSpan>,
}

impl GoldRecord {
    pub fn validate(&self) -> Result<(), EvalError> {
        if self.gold.trim().is_empty() {
            return Err(EvalError::InvalidRecord { id: self.id.clone(), reason: "empty gold".into() });
        }
        if let Some(span) = self.abbrev_spans.iter().find(|s| !self.raw.contains(&s.surface)) {
            return Err(EvalError::InvalidRecord {
                id: self.id.clone(),
                reason: format!("span {:?} does not occur in raw text", span.surface),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpanPoint {
    None,
    Minus,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanOutcome {
    pub surface: String,
    /// Hypothesis words aligned to the span, if alignment succeeded.
    pub rendering: Option<String>,
    pub point: SpanPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceScore {
    pub id: String,
    pub matched: bool,
    /// Empty when matched, otherwise the first differing word pair.
    pub diff: String,
    pub spans: Vec<SpanOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreReport {
    pub total: usize,
    pub matched: usize,
    pub percent: i64,
    pub minus_points: usize,
    pub plus_points: usize,
    pub per_sentence: Vec<SentenceScore>,
}

impl ScoreReport {
    /// `"<matched> lauset ehk <percent>%"`.
    pub fn summary_line(&self) -> String {
        format!("{} lauset ehk {}%", self.matched, self.percent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no hypothesis for ids: {}", .0.join(", "))]
    MissingHypotheses(Vec<String>),
    #[error("duplicate gold id {0}")]
    DuplicateId(String),
    #[error("invalid gold record {id}: {reason}")]
    InvalidRecord { id: String, reason: String },
    #[error("empty gold corpus")]
    EmptyCorpus,
    #[error("reports cover different corpus sizes ({before} vs {after})")]
    TotalMismatch { before: usize, after: usize },
    #[error("{origin}:{line}: {message}")]
    Parse { origin: String, line: usize, message: String },
}

/// Lowercases, collapses whitespace runs to one space, trims the ends.
pub fn canonicalize(text: &str) -> String {
    text.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

/// `round(100 · matched / total)` with halves rounded up.
pub fn percent_half_up(matched: usize, total: usize) -> i64 {
    if total == 0 {
        return 0;
    }
    ((200 * matched + total) / (2 * total)) as i64
}

fn is_strippable(c: char) -> bool {
    is_sentence_punct(c) || c == '–' || c == '—'
}

/// Canonical words with surrounding punctuation removed.
fn words(text: &str) -> Vec<String> {
    canonicalize(text)
        .split(' ')
        .map(|w| w.trim_matches(is_strippable).to_string())
        .filter(|w| !w.is_empty())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Anchor {
    Edge,
    Word(String),
}

/// Context words around the `occurrence`-th appearance of `surface` in `raw`.
/// Returns `None` when a neighbour is not a plain lowercase-able word that the
/// normalizer would leave untouched.
fn anchors(raw: &str, surface: &str, occurrence: usize) -> Option<(Anchor, Anchor)> {
    let raw_words: Vec<&str> = raw.split_whitespace().map(|w| w.trim_matches(is_strippable)).collect();
    let positions: Vec<usize> = raw_words
        .iter()
        .enumerate()
        .filter(|(_, w)| **w == surface)
        .map(|(i, _)| i)
        .collect();
    let positions = if positions.is_empty() {
        raw_words.iter().enumerate().filter(|(_, w)| w.starts_with(surface)).map(|(i, _)| i).collect()
    } else {
        positions
    };
    let idx = *positions.get(occurrence)?;
    let plain = |w: &str| -> Option<Anchor> {
        let ok = !w.is_empty() && w.chars().all(crate::textcore::is_estonian_letter);
        ok.then(|| Anchor::Word(w.to_lowercase()))
    };
    let left = if idx == 0 { Anchor::Edge } else { plain(raw_words[idx - 1])? };
    let right = if idx + 1 == raw_words.len() { Anchor::Edge } else { plain(raw_words[idx + 1])? };
    Some((left, right))
}

/// The words of `text` lying strictly between the two anchors.
fn extract(text: &str, left: &Anchor, right: &Anchor) -> Option<String> {
    let ws = words(text);
    let starts: Vec<usize> = match left {
        Anchor::Edge => vec![0],
        Anchor::Word(w) => ws.iter().enumerate().filter(|(_, x)| *x == w).map(|(i, _)| i + 1).collect(),
    };
    for start in starts {
        let end = match right {
            Anchor::Edge => Some(ws.len()),
            Anchor::Word(w) => ws[start.min(ws.len())..].iter().position(|x| x == w).map(|p| p + start),
        };
        if let Some(end) = end.filter(|&e| e > start) {
            return Some(ws[start..end].join(" "));
        }
    }
    None
}

/// Hyphen-joined letter names, the last one optionally carrying a case ending.
fn is_spellout(rendering: &str, names: &LetterNameTable) -> bool {
    let known: HashSet<&str> = crate::textcore::ESTONIAN_LETTERS.chars().filter_map(|c| names.name(c)).collect();
    let parts: Vec<&str> = rendering.split('-').collect();
    let (last, init) = parts.split_last().expect("split yields at least one part");
    init.iter().all(|p| known.contains(p))
        && (known.contains(last) || (!init.is_empty() && known.iter().any(|n| last.starts_with(n))))
}

fn classify_span(
    span: &AbbrevSpan,
    hyp_rendering: Option<&str>,
    gold_rendering: Option<&str>,
    names: &LetterNameTable,
) -> SpanPoint {
    let Some(r) = hyp_rendering else {
        return SpanPoint::None;
    };
    let acceptable = span.acceptable.iter().any(|a| canonicalize(a) == r);
    if acceptable {
        return match span.expected_mode {
            ExpectedMode::Spellout => SpanPoint::Plus,
            ExpectedMode::Word => SpanPoint::None,
        };
    }
    if gold_rendering == Some(r) || r == canonicalize(&span.surface) || is_spellout(r, names) {
        return SpanPoint::None;
    }
    SpanPoint::Minus
}

fn first_difference(gold: &str, hyp: &str) -> String {
    let (g, h): (Vec<&str>, Vec<&str>) = (gold.split(' ').collect(), hyp.split(' ').collect());
    let i = g.iter().zip(&h).position(|(a, b)| a != b).unwrap_or(g.len().min(h.len()));
    format!(
        "word {}: gold {:?} vs hyp {:?}",
        i + 1,
        g.get(i).copied().unwrap_or(""),
        h.get(i).copied().unwrap_or("")
    )
}

fn score_record(record: &GoldRecord, hyp: &str, names: &LetterNameTable) -> SentenceScore {
    let (gold_c, hyp_c) = (canonicalize(&record.gold), canonicalize(hyp));
    let matched = gold_c == hyp_c;
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let spans = record
        .abbrev_spans
        .iter()
        .map(|span| {
            let occurrence = seen.entry(span.surface.as_str()).or_default();
            let found = anchors(&record.raw, &span.surface, *occurrence);
            *occurrence += 1;
            let (hyp_r, gold_r) = match &found {
                Some((l, r)) => (extract(hyp, l, r), extract(&record.gold, l, r)),
                None => (None, None),
            };
            SpanOutcome {
                surface: span.surface.clone(),
                point: classify_span(span, hyp_r.as_deref(), gold_r.as_deref(), names),
                rendering: hyp_r,
            }
        })
        .collect();
    SentenceScore {
        id: record.id.clone(),
        matched,
        diff: if matched { String::new() } else { first_difference(&gold_c, &hyp_c) },
        spans,
    }
}

/// Scores every gold record against its hypothesis (keyed by id) using the
/// shipped letter-name table to recognise spelled renderings.
pub fn score_corpus(gold: &[GoldRecord], hypotheses: &HashMap<String, String>) -> Result<ScoreReport, EvalError> {
    score_corpus_with(gold, hypotheses, &LetterNameTable::default())
}

pub fn score_corpus_with(
    gold: &[GoldRecord],
    hypotheses: &HashMap<String, String>,
    names: &LetterNameTable,
) -> Result<ScoreReport, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    let mut ids = HashSet::new();
    for r in gold {
        r.validate()?;
        if !ids.insert(r.id.as_str()) {
            return Err(EvalError::DuplicateId(r.id.clone()));
        }
    }
    let missing: Vec<String> = gold.iter().filter(|r| !hypotheses.contains_key(&r.id)).map(|r| r.id.clone()).collect();
    if !missing.is_empty() {
        return Err(EvalError::MissingHypotheses(missing));
    }
    let per_sentence: Vec<SentenceScore> =
        gold.iter().map(|r| score_record(r, &hypotheses[&r.id], names)).collect();
    let matched = per_sentence.iter().filter(|s| s.matched).count();
    let count = |p: SpanPoint| per_sentence.iter().flat_map(|s| &s.spans).filter(|o| o.point == p).count();
    Ok(ScoreReport {
        total: gold.len(),
        matched,
        percent: percent_half_up(matched, gold.len()),
        minus_points: count(SpanPoint::Minus),
        plus_points: count(SpanPoint::Plus),
        per_sentence,
    })
}

/// Percentage-point change from `before` to `after`.
pub fn improvement(before: &ScoreReport, after: &ScoreReport) -> Result<i64, EvalError> {
    if before.total != after.total {
        return Err(EvalError::TotalMismatch { before: before.total, after: after.total });
    }
    Ok(after.percent - before.percent)
}

/// One [`GoldRecord`] JSON object per line; blank lines are skipped.
pub fn parse_gold_jsonl(source: &str, origin: &str) -> Result<Vec<GoldRecord>, EvalError> {
    source
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str::<GoldRecord>(line).map_err(|e| EvalError::Parse {
                origin: origin.to_string(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// `id<TAB>text` per line.
pub fn parse_hypotheses_tsv(source: &str, origin: &str) -> Result<HashMap<String, String>, EvalError> {
    let mut map = HashMap::new();
    for (i, line) in source.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| EvalError::Parse { origin: origin.to_string(), line: i + 1, message };
        let (id, text) = line.split_once('\t').ok_or_else(|| err("expected id<TAB>text".into()))?;
        if map.insert(id.to_string(), text.to_string()).is_some() {
            return Err(err(format!("duplicate id {id}")));
        }
    }
    Ok(map)
}
