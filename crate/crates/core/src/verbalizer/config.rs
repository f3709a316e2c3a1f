//! Rule configuration and the lexicon files behind it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::lexicon::{self, LexiconError};
use crate::numspell::{Case, NumberLexicon};
use crate::textcore::{FoldingTable, ESTONIAN_LETTERS};

pub(crate) const SHIPPED_LETTER_NAMES: &str = include_str!("../../data/letter_names.txt");
pub(crate) const SHIPPED_ABBREVIATIONS: &str = include_str!("../../data/abbreviations.tsv");
pub(crate) const SHIPPED_ROMAN_STOPLIST: &str = include_str!("../../data/roman_stoplist.txt");
pub(crate) const SHIPPED_SPOKEN_ACRONYMS: &str = include_str!("../../data/spoken_acronyms.txt");
pub(crate) const SHIPPED_SYMBOLS: &str = include_str!("../../data/symbols.txt");
pub(crate) const SHIPPED_ROMAN_KEYWORDS: &str = include_str!("../../data/roman_keywords.txt");

/// Spoken letter names. Both cases of a letter map to the same name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterNameTable {
    names: BTreeMap<char, String>,
}

impl Default for LetterNameTable {
    fn default() -> Self {
        Self::parse(SHIPPED_LETTER_NAMES, "letter_names.txt").expect("shipped letter names are valid")
    }
}

impl LetterNameTable {
    /// `<letter><TAB><name>` per line.
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut names = BTreeMap::new();
        for (line_no, line) in lexicon::content_lines(source) {
            let (letter, name) = line
                .split_once('\t')
                .ok_or_else(|| LexiconError::at(origin, line_no, "expected <letter>\\t<name>"))?;
            let mut chars = letter.trim().chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(LexiconError::at(origin, line_no, format!("{letter:?} is not a single letter")));
            };
            let name = name.trim();
            if name.is_empty() {
                return Err(LexiconError::at(origin, line_no, format!("empty name for {c}")));
            }
            for variant in c.to_lowercase().chain(c.to_uppercase()).chain([c]) {
                names.insert(variant, name.to_string());
            }
        }
        Ok(Self { names })
    }

    pub fn name(&self, c: char) -> Option<&str> {
        self.names.get(&c).map(String::as_str)
    }

    pub fn is_total_over_estonian_alphabet(&self) -> bool {
        ESTONIAN_LETTERS.chars().all(|c| self.names.contains_key(&c))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub text: String,
    /// Lowercase words; a trailing `*` matches any word with that prefix.
    pub context_keywords: Vec<String>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbbreviationEntry {
    pub surface: String,
    pub expansions: Vec<Expansion>,
    /// Read the surface itself as a word (NATO-class).
    pub speak_as_word: bool,
    pub force_spellout: bool,
}

/// Abbreviation entries in file order, indexed by surface.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AbbreviationDictionary {
    entries: Vec<AbbreviationEntry>,
    index: HashMap<String, usize>,
}

impl AbbreviationDictionary {
    /// TSV: surface, expansion, keywords, weight, flags. Expansion `-` means none.
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut dict = Self::default();
        for (line_no, line) in lexicon::content_lines(source) {
            let err = |msg: String| LexiconError::at(origin, line_no, msg);
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() < 2 || cols.len() > 5 {
                return Err(err(format!("expected 2 to 5 tab-separated columns, got {}", cols.len())));
            }
            let surface = cols[0];
            if surface.is_empty() {
                return Err(err("empty surface".into()));
            }
            let weight = match cols.get(3).copied().unwrap_or("") {
                "" => 1.0,
                w => w.parse::<f64>().map_err(|_| err(format!("bad weight {w:?}")))?,
            };
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(err(format!("weight must be positive, got {weight}")));
            }
            let mut speak_as_word = false;
            let mut force_spellout = false;
            for flag in cols.get(4).copied().unwrap_or("").split(',').map(str::trim).filter(|f| !f.is_empty()) {
                match flag {
                    "word" => speak_as_word = true,
                    "spellout" => force_spellout = true,
                    other => return Err(err(format!("unknown flag {other:?}"))),
                }
            }
            let idx = *dict.index.entry(surface.to_string()).or_insert_with(|| {
                dict.entries.push(AbbreviationEntry {
                    surface: surface.to_string(),
                    expansions: Vec::new(),
                    speak_as_word: false,
                    force_spellout: false,
                });
                dict.entries.len() - 1
            });
            let entry = &mut dict.entries[idx];
            entry.speak_as_word |= speak_as_word;
            entry.force_spellout |= force_spellout;
            if cols[1] != "-" && !cols[1].is_empty() {
                entry.expansions.push(Expansion {
                    text: cols[1].to_string(),
                    context_keywords: cols
                        .get(2)
                        .copied()
                        .unwrap_or("")
                        .split(',')
                        .map(|k| k.trim().to_lowercase())
                        .filter(|k| !k.is_empty())
                        .collect(),
                    weight,
                });
            }
        }
        for e in &dict.entries {
            if e.expansions.is_empty() && !e.force_spellout && !e.speak_as_word {
                return Err(LexiconError::at(origin, 0, format!("{} has no expansion and no flag", e.surface)));
            }
        }
        Ok(dict)
    }

    /// The dictionary shipped with the crate.
    pub fn default_shipped() -> Self {
        Self::parse(SHIPPED_ABBREVIATIONS, "abbreviations.tsv").expect("shipped abbreviations are valid")
    }

    pub fn get(&self, surface: &str) -> Option<&AbbreviationEntry> {
        self.index.get(surface).map(|&i| &self.entries[i])
    }

    /// Exact match, then a lowercase match for a capitalized word (`Nt` → `nt`).
    pub fn lookup(&self, surface: &str) -> Option<&AbbreviationEntry> {
        self.get(surface).or_else(|| {
            let mut chars = surface.chars();
            let first = chars.next()?;
            (first.is_uppercase() && chars.all(char::is_lowercase))
                .then(|| self.get(&surface.to_lowercase()))
                .flatten()
        })
    }

    pub fn entries(&self) -> &[AbbreviationEntry] {
        &self.entries
    }
}

/// A set of uppercase strings, one per line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordSet(BTreeSet<String>);

impl WordSet {
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut set = BTreeSet::new();
        for (line_no, line) in lexicon::content_lines(source) {
            let word = line.trim();
            if word.chars().any(char::is_whitespace) {
                return Err(LexiconError::at(origin, line_no, format!("{word:?} contains whitespace")));
            }
            set.insert(word.to_string());
        }
        Ok(Self(set))
    }

    pub fn contains(&self, s: &str) -> bool {
        self.0.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn insert(&mut self, s: impl Into<String>) {
        self.0.insert(s.into());
    }
}

/// Letter sequences never read as Roman numerals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RomanStoplist(WordSet);

impl Default for RomanStoplist {
    fn default() -> Self {
        Self::parse(SHIPPED_ROMAN_STOPLIST, "roman_stoplist.txt").expect("shipped stoplist is valid")
    }
}

impl RomanStoplist {
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut set = WordSet::parse(source, origin)?;
        // these three must never be dropped by an override file
        for required in ["MM", "CV", "DVD"] {
            set.insert(required);
        }
        Ok(Self(set))
    }

    pub fn contains(&self, s: &str) -> bool {
        self.0.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter()
    }
}

/// Spoken names of symbols (`%` → `protsenti`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolNames(HashMap<char, String>);

impl Default for SymbolNames {
    fn default() -> Self {
        Self::parse(SHIPPED_SYMBOLS, "symbols.txt").expect("shipped symbols are valid")
    }
}

impl SymbolNames {
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut map = HashMap::new();
        for (line_no, line) in lexicon::content_lines(source) {
            let (sym, name) = line
                .split_once('\t')
                .ok_or_else(|| LexiconError::at(origin, line_no, "expected <symbol>\\t<name>"))?;
            let mut chars = sym.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(LexiconError::at(origin, line_no, format!("{sym:?} is not a single character")));
            };
            if name.trim().is_empty() {
                return Err(LexiconError::at(origin, line_no, "empty name"));
            }
            map.insert(c, name.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn name(&self, c: char) -> Option<&str> {
        self.0.get(&c).map(String::as_str)
    }
}

/// Words after a Roman numeral that cue an ordinal reading, with the case the
/// ordinal should take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RomanKeywords(HashMap<String, Case>);

impl Default for RomanKeywords {
    fn default() -> Self {
        Self::parse(SHIPPED_ROMAN_KEYWORDS, "roman_keywords.txt").expect("shipped keywords are valid")
    }
}

impl RomanKeywords {
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut map = HashMap::new();
        for (line_no, line) in lexicon::content_lines(source) {
            let (word, case) = line.split_once('\t').unwrap_or((line, "nom"));
            let case = match case.trim() {
                "nom" => Case::Nominative,
                "gen" => Case::Genitive,
                other => return Err(LexiconError::at(origin, line_no, format!("unknown case {other:?}"))),
            };
            map.entry(word.trim().to_lowercase()).or_insert(case);
        }
        Ok(Self(map))
    }

    pub fn case_for(&self, word: &str) -> Option<Case> {
        self.0.get(&word.to_lowercase()).copied()
    }
}

/// How to read a colon between two numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColonPolicy {
    /// Unspaced operands up to this value are read as a ratio ("koolon").
    pub ratio_max: u64,
}

impl Default for ColonPolicy {
    fn default() -> Self {
        Self { ratio_max: 999 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("title_min_length must be at least 4, got {0}")]
    TitleMinLength(usize),
    #[error("digit_group_threshold must be at least 5, got {0}")]
    DigitGroupThreshold(usize),
    #[error("letter-name table does not cover the Estonian alphabet")]
    IncompleteLetterNames,
}

/// Everything the rule pipeline reads. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleConfig {
    pub letter_names: LetterNameTable,
    pub abbreviations: AbbreviationDictionary,
    pub roman_stoplist: RomanStoplist,
    pub roman_keywords: RomanKeywords,
    pub spoken_acronyms: WordSet,
    pub symbols: SymbolNames,
    pub numbers: NumberLexicon,
    pub folding: FoldingTable,
    pub title_min_length: usize,
    pub digit_group_threshold: usize,
    pub colon: ColonPolicy,
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self {
            letter_names: LetterNameTable::default(),
            abbreviations: AbbreviationDictionary::default_shipped(),
            roman_stoplist: RomanStoplist::default(),
            roman_keywords: RomanKeywords::default(),
            spoken_acronyms: WordSet::parse(SHIPPED_SPOKEN_ACRONYMS, "spoken_acronyms.txt")
                .expect("shipped spoken acronyms are valid"),
            symbols: SymbolNames::default(),
            numbers: NumberLexicon::default(),
            folding: FoldingTable::default(),
            title_min_length: 6,
            digit_group_threshold: 7,
            colon: ColonPolicy::default(),
        }
    }
}

impl RuleConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.title_min_length < 4 {
            return Err(ConfigError::TitleMinLength(self.title_min_length));
        }
        if self.digit_group_threshold < 5 {
            return Err(ConfigError::DigitGroupThreshold(self.digit_group_threshold));
        }
        if !self.letter_names.is_total_over_estonian_alphabet() {
            return Err(ConfigError::IncompleteLetterNames);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_config_is_valid() {
        let cfg = RuleConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.title_min_length, 6);
        assert_eq!(cfg.digit_group_threshold, 7);
        for s in ["MM", "CV", "DVD"] {
            assert!(cfg.roman_stoplist.contains(s));
        }
        assert!(cfg.spoken_acronyms.contains("NATO"));
        assert_eq!(cfg.symbols.name('#'), Some("trellid"));
        assert_eq!(cfg.roman_keywords.case_for("Sajandi"), Some(Case::Genitive));
    }

    #[test]
    fn letter_names_of_common_abbreviations() {
        let t = LetterNameTable::default();
        for (c, name) in [('M', "emm"), ('T', "tee"), ('Ü', "üü"), ('E', "ee"), ('A', "aa"), ('S', "ess"), ('C', "tsee")] {
            assert_eq!(t.name(c), Some(name));
            assert_eq!(t.name(c.to_lowercase().next().unwrap()), Some(name));
        }
    }

    #[test]
    fn abbreviation_parsing() {
        let d = AbbreviationDictionary::default_shipped();
        let km = d.get("km").unwrap();
        assert_eq!(km.expansions.len(), 2);
        assert_eq!(km.expansions[0].text, "käibemaks");
        assert!(d.get("spp").unwrap().force_spellout);
        assert!(d.get("NATO").unwrap().speak_as_word);
        assert_eq!(d.lookup("Nt").unwrap().surface, "nt");
        assert!(d.lookup("NT").is_none());

        let err = AbbreviationDictionary::parse("km\tkilomeeter\t\t-1\n", "a.tsv").unwrap_err();
        assert_eq!((err.line, err.origin.as_str()), (1, "a.tsv"));
        assert!(AbbreviationDictionary::parse("km\t-\n", "a.tsv").is_err());
        assert!(AbbreviationDictionary::parse("km\tx\t\t1\tbogus\n", "a.tsv").is_err());
    }

    #[test]
    fn stoplist_override_keeps_required_entries() {
        let s = RomanStoplist::parse("XL\n", "s.txt").unwrap();
        assert!(s.contains("XL") && s.contains("MM") && s.contains("CV") && s.contains("DVD"));
    }

    #[test]
    fn validation_bounds() {
        let cfg = RuleConfig { title_min_length: 3, ..RuleConfig::default() };
        assert_eq!(cfg.validate(), Err(ConfigError::TitleMinLength(3)));
        let cfg = RuleConfig { digit_group_threshold: 4, ..RuleConfig::default() };
        assert_eq!(cfg.validate(), Err(ConfigError::DigitGroupThreshold(4)));
    }
}
