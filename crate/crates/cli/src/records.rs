//! CSV/TSV record readers. The first row must name the columns.

use anyhow::{anyhow, bail, Result};
use estnorm::ratestats::{AnnotationRecord, ErrorCategory, LikertRecord, RatingRecord};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::str::FromStr;

fn delimiter(source: &str) -> u8 {
    match source.lines().next() {
        Some(header) if header.contains('\t') => b'\t',
        _ => b',',
    }
}

/// Deserializes rows after checking that every `required` column is present.
fn read_rows<R: DeserializeOwned>(source: &str, origin: &str, required: &[&str]) -> Result<Vec<R>> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter(source))
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let headers = reader.headers().map_err(|e| anyhow!("{origin}: {e}"))?.clone();
    let missing: Vec<&str> = required.iter().copied().filter(|c| !headers.iter().any(|h| h == *c)).collect();
    if !missing.is_empty() {
        bail!("{origin}:1: missing column(s): {}", missing.join(", "));
    }
    let mut rows = Vec::new();
    for result in reader.deserialize() {
        let row = result.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            match e.kind() {
                csv::ErrorKind::Deserialize { err, .. } => {
                    let column = err.field().and_then(|i| headers.get(i as usize)).unwrap_or("?");
                    anyhow!("{origin}:{line}: column {column}: {}", err.kind())
                }
                _ => anyhow!("{origin}:{line}: {e}"),
            }
        })?;
        rows.push(row);
    }
    Ok(rows)
}

fn row_error(origin: &str, index: usize, column: &str, e: impl std::fmt::Display) -> anyhow::Error {
    // header is line 1
    anyhow!("{origin}:{}: column {column}: {e}", index + 2)
}

fn parse_field<T: FromStr>(origin: &str, index: usize, column: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| row_error(origin, index, column, e))
}

#[derive(Deserialize)]
struct RatingRow {
    rater: String,
    sentence: String,
    voice: String,
    voice_type: String,
    domain: String,
    score: f64,
}

pub fn ratings(source: &str, origin: &str) -> Result<Vec<RatingRecord<f64>>> {
    let rows: Vec<RatingRow> =
        read_rows(source, origin, &["rater", "sentence", "voice", "voice_type", "domain", "score"])?;
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| {
            let record = RatingRecord {
                voice_type: parse_field(origin, i, "voice_type", &r.voice_type)?,
                domain: parse_field(origin, i, "domain", &r.domain)?,
                rater: r.rater,
                sentence: r.sentence,
                voice: r.voice,
                score: r.score,
            };
            record.validate().map_err(|e| row_error(origin, i, "score", e))?;
            Ok(record)
        })
        .collect()
}

#[derive(Deserialize)]
struct AnnotationRow {
    annotator: String,
    sentence: String,
    voice: String,
    #[serde(default)]
    flags: String,
}

pub fn annotations(source: &str, origin: &str) -> Result<Vec<AnnotationRecord>> {
    let rows: Vec<AnnotationRow> = read_rows(source, origin, &["annotator", "sentence", "voice", "flags"])?;
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| {
            let flags = ErrorCategory::parse_list(&r.flags).map_err(|e| row_error(origin, i, "flags", e))?;
            Ok(AnnotationRecord { annotator: r.annotator, sentence: r.sentence, voice: r.voice, flags })
        })
        .collect()
}

#[derive(Deserialize)]
struct LikertRow {
    rater: String,
    voice: String,
    text_kind: String,
    score: u8,
}

pub fn likert(source: &str, origin: &str) -> Result<Vec<LikertRecord>> {
    let rows: Vec<LikertRow> = read_rows(source, origin, &["rater", "voice", "text_kind", "score"])?;
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| {
            let record = LikertRecord {
                text_kind: parse_field(origin, i, "text_kind", &r.text_kind)?,
                rater: r.rater,
                voice: r.voice,
                score: r.score,
            };
            record.validate().map_err(|e| row_error(origin, i, "score", e))?;
            Ok(record)
        })
        .collect()
}

#[derive(Deserialize)]
struct IccRow {
    rater: String,
    target: String,
    score: f64,
}

/// Long-format `rater,target,score` rows.
pub fn icc_triples(source: &str, origin: &str) -> Result<Vec<(String, String, f64)>> {
    let rows: Vec<IccRow> = read_rows(source, origin, &["rater", "target", "score"])?;
    Ok(rows.into_iter().map(|r| (r.rater, r.target, r.score)).collect())
}
