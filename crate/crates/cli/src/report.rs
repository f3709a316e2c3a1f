//! Output rendering. Data only; no timestamps.

use std::fmt::Write;

use anyhow::Result;
use estnorm::evalharness::ScoreReport;
use estnorm::ratestats::{ErrorCategory, ErrorRateTable, IccResult, LikertRow, MosReport};
use serde::Serialize;

use crate::Format;

fn json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn score(report: &ScoreReport, improvement: Option<i64>, format: Format) -> Result<String> {
    if format == Format::Json {
        return json(&serde_json::json!({
            "summary": report.summary_line(),
            "improvement": improvement,
            "report": report,
        }));
    }
    let mut out = String::new();
    if format == Format::Tsv {
        out.push_str("id\tmatched\tminus\tplus\tdiff\n");
        for s in &report.per_sentence {
            let count = |p| s.spans.iter().filter(|o| o.point == p).count();
            use estnorm::evalharness::SpanPoint::{Minus, Plus};
            writeln!(out, "{}\t{}\t{}\t{}\t{}", s.id, s.matched, count(Minus), count(Plus), s.diff)?;
        }
        return Ok(out);
    }
    writeln!(out, "{}", report.summary_line())?;
    writeln!(out, "miinuspunkte {}, plusspunkte {}", report.minus_points, report.plus_points)?;
    if let Some(delta) = improvement {
        writeln!(out, "muutus {delta:+} protsendipunkti")?;
    }
    for s in report.per_sentence.iter().filter(|s| !s.matched) {
        writeln!(out, "{}\t{}", s.id, s.diff)?;
    }
    Ok(out)
}

pub fn mos(report: &MosReport<f64>, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => return json(report),
        Format::Tsv => {
            out.push_str("voice_type\tvoice\tdomain\tn\tmos\tci_half_width\n");
            for r in &report.results {
                let domain = r.domain.map_or("", |d| d.label());
                writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", r.voice_type, r.voice, domain, r.n, r.mos, r.ci_half_width)?;
            }
        }
        Format::Text => {
            for r in &report.results {
                let domain = r.domain.map(|d| format!(" ({d})")).unwrap_or_default();
                writeln!(out, "{} {}{}: {:.2} ± {:.3} (n={})", r.voice_type, r.voice, domain, r.mos, r.ci_half_width, r.n)?;
            }
        }
    }
    Ok(out)
}

pub fn errors(table: &ErrorRateTable<f64>, format: Format) -> Result<String> {
    if format == Format::Json {
        return json(table);
    }
    let mut out = String::new();
    let sep = if format == Format::Tsv { "\t" } else { " | " };
    let heading: Vec<&str> = match format {
        Format::Tsv => ErrorCategory::ALL.iter().map(|c| c.id()).collect(),
        _ => ErrorCategory::ALL.iter().map(|c| c.label()).collect(),
    };
    writeln!(out, "voice{sep}sentences{sep}{}", heading.join(sep))?;
    for row in &table.rows {
        let cells: Vec<String> = row.percentages.iter().map(|p| format!("{p:.1}")).collect();
        writeln!(out, "{}{sep}{}{sep}{}", row.voice, row.sentences, cells.join(sep))?;
    }
    Ok(out)
}

pub fn likert(rows: &[LikertRow<f64>], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => return json(&rows),
        Format::Tsv => {
            out.push_str("voice\ttext_kind\tn\tmean\tsd\n");
            for r in rows {
                writeln!(out, "{}\t{}\t{}\t{:.2}\t{:.2}", r.voice, r.text_kind, r.n, r.mean, r.sd)?;
            }
        }
        Format::Text => {
            for r in rows {
                writeln!(out, "{} ({}): {:.2} (sd {:.2}, n={})", r.voice, r.text_kind, r.mean, r.sd, r.n)?;
            }
        }
    }
    Ok(out)
}

pub fn icc(result: &IccResult<f64>, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json(result)?,
        Format::Tsv => format!(
            "icc\tf_value\tdf1\tdf2\tp_value\n{}\t{}\t{}\t{}\t{}\n",
            result.icc, result.f_value, result.df1, result.df2, result.p_value
        ),
        Format::Text => format!(
            "ICC(2,k) = {:.2}, F({}, {}) = {:.2}, p = {:.4}\n",
            result.icc, result.df1, result.df2, result.f_value, result.p_value
        ),
    })
}
