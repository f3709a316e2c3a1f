//! TOML configuration. Lexicon paths are resolved relative to the config file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use estnorm::ratestats::FlagPolicy;
use estnorm::textcore::FoldingTable;
use estnorm::verbalizer::{
    AbbreviationDictionary, LetterNameTable, RomanKeywords, RomanStoplist, RuleConfig, SymbolNames, WordSet,
};
use estnorm::NumberLexicon;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    lexicons: Lexicons,
    #[serde(default)]
    rules: Rules,
    #[serde(default)]
    stats: Stats,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Lexicons {
    letter_names: Option<PathBuf>,
    abbreviations: Option<PathBuf>,
    roman_stoplist: Option<PathBuf>,
    roman_keywords: Option<PathBuf>,
    spoken_acronyms: Option<PathBuf>,
    symbols: Option<PathBuf>,
    numbers: Option<PathBuf>,
    protected_letters: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Rules {
    title_min_length: Option<usize>,
    digit_group_threshold: Option<usize>,
    colon_ratio_max: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Stats {
    policy: Option<FlagPolicy>,
    ci_multiplier: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub rules: RuleConfig,
    pub policy: FlagPolicy,
    pub ci_multiplier: f64,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self { rules: RuleConfig::default(), policy: FlagPolicy::Any, ci_multiplier: estnorm::ratestats::Z_95 }
    }
}

fn line_of(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].matches('\n').count() + 1
}

/// Reads a file that must be valid UTF-8.
pub fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("{}: cannot read", path.display()))?;
    decode_utf8(bytes, &path.display().to_string())
}

pub fn decode_utf8(bytes: Vec<u8>, origin: &str) -> Result<String> {
    String::from_utf8(bytes).map_err(|e| {
        let offset = e.utf8_error().valid_up_to();
        let line = line_of(&String::from_utf8_lossy(&e.as_bytes()[..offset]), offset);
        anyhow::anyhow!("{origin}:{line}: invalid UTF-8 at byte {offset}")
    })
}

fn load<T>(
    base: &Path,
    path: &Option<PathBuf>,
    parse: impl Fn(&str, &str) -> Result<T, estnorm::lexicon::LexiconError>,
) -> Result<Option<T>> {
    let Some(rel) = path else { return Ok(None) };
    let full = base.join(rel);
    let source = read_utf8(&full)?;
    Ok(Some(parse(&source, &full.display().to_string())?))
}

impl CliConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let source = read_utf8(path)?;
        let raw: RawConfig = toml::from_str(&source).map_err(|e| {
            let line = e.span().map_or(0, |s| line_of(&source, s.start));
            anyhow::anyhow!("{}:{}: {}", path.display(), line, e.message())
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut cfg = CliConfig::default();
        let rules = &mut cfg.rules;
        let lx = &raw.lexicons;
        if let Some(t) = load(base, &lx.letter_names, LetterNameTable::parse)? {
            rules.letter_names = t;
        }
        if let Some(t) = load(base, &lx.abbreviations, AbbreviationDictionary::parse)? {
            rules.abbreviations = t;
        }
        if let Some(t) = load(base, &lx.roman_stoplist, RomanStoplist::parse)? {
            rules.roman_stoplist = t;
        }
        if let Some(t) = load(base, &lx.roman_keywords, RomanKeywords::parse)? {
            rules.roman_keywords = t;
        }
        if let Some(t) = load(base, &lx.spoken_acronyms, WordSet::parse)? {
            rules.spoken_acronyms = t;
        }
        if let Some(t) = load(base, &lx.symbols, SymbolNames::parse)? {
            rules.symbols = t;
        }
        if let Some(t) = load(base, &lx.numbers, NumberLexicon::parse)? {
            rules.numbers = t;
        }
        if let Some(t) = load(base, &lx.protected_letters, FoldingTable::parse_protected)? {
            rules.folding = t;
        }
        if let Some(v) = raw.rules.title_min_length {
            rules.title_min_length = v;
        }
        if let Some(v) = raw.rules.digit_group_threshold {
            rules.digit_group_threshold = v;
        }
        if let Some(v) = raw.rules.colon_ratio_max {
            rules.colon.ratio_max = v;
        }
        rules.validate().with_context(|| format!("{}", path.display()))?;
        if let Some(p) = raw.stats.policy {
            cfg.policy = p;
        }
        if let Some(z) = raw.stats.ci_multiplier {
            if !(z.is_finite() && z > 0.0) {
                bail!("{}: ci_multiplier must be positive, got {z}", path.display());
            }
            cfg.ci_multiplier = z;
        }
        Ok(cfg)
    }
}
