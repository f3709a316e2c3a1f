//! Estonian number verbalization.
//!
//! All words come from a [`NumberLexicon`] (a `key=value` data file); this
//! module only composes them. Cardinals and ordinals are produced in the
//! nominative or genitive. In a compound ordinal every component except the
//! last stands in the genitive (`kahekümne esimene`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::lexicon::{self, LexiconError};

/// Largest value accepted by [`NumberLexicon::cardinal`], exclusive.
pub const CARDINAL_LIMIT: u64 = 1_000_000_000;
/// Largest value accepted by [`NumberLexicon::ordinal`], inclusive (MMMCMXCIX).
pub const ORDINAL_MAX: u32 = 3999;

const SHIPPED: &str = include_str!("../data/numbers.lex");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Case {
    #[default]
    Nominative,
    Genitive,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberError {
    #[error("{0} is outside the cardinal range [0, 10^9)")]
    CardinalRange(u64),
    #[error("{0} is outside the ordinal range [1, 3999]")]
    OrdinalRange(u64),
    #[error("malformed decimal {int_part:?},{frac_part:?}")]
    MalformedDecimal { int_part: String, frac_part: String },
}

const REQUIRED_KEYS: &[&str] = &[
    "ten", "ten.gen", "teen", "teen.gen", "tens", "tens.gen", "hundred", "hundred.gen",
    "scale.3", "scale.3.plural", "scale.3.gen", "scale.6", "scale.6.plural", "scale.6.gen",
    "ordinal.ten", "ordinal.ten.gen", "ordinal.teen", "ordinal.teen.gen", "ordinal.tens",
    "ordinal.tens.gen", "ordinal.hundred", "ordinal.hundred.gen", "ordinal.scale.3",
    "ordinal.scale.3.gen", "decimal",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberLexicon {
    entries: HashMap<String, String>,
    /// `[nominative, genitive]` words resolved once for the cardinal path.
    units: [[String; 10]; 2],
    ten: [String; 2],
    teen: [String; 2],
    tens: [String; 2],
    hundred: [String; 2],
}

impl Default for NumberLexicon {
    fn default() -> Self {
        Self::parse(SHIPPED, "numbers.lex").expect("shipped number lexicon is valid")
    }
}

/// One word position inside a compound number, in both the form it takes
/// when something follows (genitive-stem) and when it ends the phrase.
struct Part {
    genitive: String,
    ordinal: String,
    ordinal_gen: String,
}

impl NumberLexicon {
    pub fn parse(source: &str, origin: &str) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (line_no, line) in lexicon::content_lines(source) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| LexiconError::at(origin, line_no, "expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(LexiconError::at(origin, line_no, format!("empty value for {key}")));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(LexiconError::at(origin, line_no, format!("duplicate key {key}")));
            }
        }
        let mut missing: Vec<String> = REQUIRED_KEYS.iter().map(|k| k.to_string()).collect();
        for d in 0..10 {
            missing.push(format!("unit.{d}"));
            missing.push(format!("unit.gen.{d}"));
        }
        for d in 1..10 {
            missing.push(format!("ordinal.{d}"));
            missing.push(format!("ordinal.gen.{d}"));
        }
        for m in 1..=12 {
            missing.push(format!("month.{m}"));
        }
        missing.retain(|k| !entries.contains_key(k));
        if !missing.is_empty() {
            return Err(LexiconError::at(origin, 0, format!("missing keys: {}", missing.join(", "))));
        }
        let get = |k: &str| entries[k].clone();
        let pair = |k: &str| [get(k), get(&format!("{k}.gen"))];
        Ok(Self {
            units: [
                std::array::from_fn(|d| get(&format!("unit.{d}"))),
                std::array::from_fn(|d| get(&format!("unit.gen.{d}"))),
            ],
            ten: pair("ten"),
            teen: pair("teen"),
            tens: pair("tens"),
            hundred: pair("hundred"),
            entries,
        })
    }

    fn word(&self, key: &str) -> &str {
        self.entries.get(key).map(String::as_str).unwrap_or_default()
    }

    fn unit(&self, d: u64, case: Case) -> &str {
        &self.units[case as usize][d as usize]
    }

    pub fn decimal_word(&self) -> &str {
        self.word("decimal")
    }

    pub fn month(&self, m: u32) -> Option<&str> {
        self.entries.get(&format!("month.{m}")).map(String::as_str)
    }

    /// Words for 1..=999 (empty for 0).
    fn below_thousand(&self, n: u64, case: Case, out: &mut Vec<String>) {
        let (h, r) = (n / 100, n % 100);
        let c = case as usize;
        if h > 0 {
            let hundred = &self.hundred[c];
            out.push(if h == 1 { hundred.clone() } else { format!("{}{hundred}", self.unit(h, case)) });
        }
        match r {
            0 => {}
            1..=9 => out.push(self.unit(r, case).to_string()),
            10 => out.push(self.ten[c].clone()),
            11..=19 => out.push(format!("{}{}", self.unit(r - 10, case), self.teen[c])),
            _ => {
                out.push(format!("{}{}", self.unit(r / 10, case), self.tens[c]));
                if r % 10 > 0 {
                    out.push(self.unit(r % 10, case).to_string());
                }
            }
        }
    }

    fn scale(&self, count: u64, exp: u32, case: Case, out: &mut Vec<String>) {
        if count == 0 {
            return;
        }
        let key = match case {
            Case::Genitive => format!("scale.{exp}.gen"),
            Case::Nominative if count == 1 => format!("scale.{exp}"),
            Case::Nominative => format!("scale.{exp}.plural"),
        };
        if count > 1 {
            self.below_thousand(count, case, out);
        }
        out.push(self.word(&key).to_string());
    }

    /// Cardinal number phrase, e.g. `2020 → "kaks tuhat kakskümmend"`.
    pub fn cardinal(&self, n: u64, case: Case) -> Result<String, NumberError> {
        if n >= CARDINAL_LIMIT {
            return Err(NumberError::CardinalRange(n));
        }
        if n == 0 {
            return Ok(self.unit(0, case).to_string());
        }
        let mut words = Vec::new();
        self.scale(n / 1_000_000, 6, case, &mut words);
        self.scale(n / 1000 % 1000, 3, case, &mut words);
        self.below_thousand(n % 1000, case, &mut words);
        Ok(words.join(" "))
    }

    fn ordinal_parts(&self, n: u64) -> Vec<Part> {
        let mut parts = Vec::new();
        let part = |gen_prefix: &str, gen_key: &str, ord_key: &str| Part {
            genitive: format!("{gen_prefix}{}", self.word(gen_key)),
            ordinal: format!("{gen_prefix}{}", self.word(ord_key)),
            ordinal_gen: format!("{gen_prefix}{}", self.word(&format!("{ord_key}.gen"))),
        };
        let thousands = n / 1000;
        if thousands > 0 {
            let prefix = if thousands == 1 {
                String::new()
            } else {
                let mut w = Vec::new();
                self.below_thousand(thousands, Case::Genitive, &mut w);
                w.push(String::new());
                w.join(" ")
            };
            parts.push(part(&prefix, "scale.3.gen", "ordinal.scale.3"));
        }
        let h = n / 100 % 10;
        if h > 0 {
            let prefix = if h == 1 { "" } else { self.unit(h, Case::Genitive) };
            parts.push(part(prefix, "hundred.gen", "ordinal.hundred"));
        }
        let r = n % 100;
        let (t, u) = (r / 10, r % 10);
        match r {
            0 => {}
            10 => parts.push(part("", "ten.gen", "ordinal.ten")),
            11..=19 => parts.push(part(self.unit(u, Case::Genitive), "teen.gen", "ordinal.teen")),
            _ => {
                if t > 0 {
                    parts.push(part(self.unit(t, Case::Genitive), "tens.gen", "ordinal.tens"));
                }
                if u > 0 {
                    parts.push(Part {
                        genitive: self.unit(u, Case::Genitive).to_string(),
                        ordinal: self.word(&format!("ordinal.{u}")).to_string(),
                        ordinal_gen: self.word(&format!("ordinal.gen.{u}")).to_string(),
                    });
                }
            }
        }
        parts
    }

    /// Ordinal phrase for 1..=3999, e.g. `20 → "kahekümnes"`.
    pub fn ordinal(&self, n: u64, case: Case) -> Result<String, NumberError> {
        if n == 0 || n > u64::from(ORDINAL_MAX) {
            return Err(NumberError::OrdinalRange(n));
        }
        let parts = self.ordinal_parts(n);
        let (last, init) = parts.split_last().expect("n > 0 has at least one part");
        let mut words: Vec<&str> = init.iter().map(|p| p.genitive.as_str()).collect();
        words.push(match case {
            Case::Nominative => &last.ordinal,
            Case::Genitive => &last.ordinal_gen,
        });
        Ok(words.join(" "))
    }

    /// Reads each digit separately: `"372" → "kolm seitse kaks"`. Non-digits are skipped.
    pub fn digits(&self, s: &str) -> String {
        s.bytes()
            .filter(u8::is_ascii_digit)
            .map(|b| self.unit(u64::from(b - b'0'), Case::Nominative))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Reads a digit string as a cardinal when it fits and has no leading zero,
    /// digit by digit otherwise.
    pub fn number_or_digits(&self, s: &str) -> String {
        let plain = !(s.len() > 1 && s.starts_with('0'));
        match s.parse::<u64>() {
            Ok(n) if plain && n < CARDINAL_LIMIT => self.cardinal(n, Case::Nominative).unwrap_or_default(),
            _ => self.digits(s),
        }
    }

    /// `3,14 → "kolm koma neliteist"`. Fractions of one or two digits are read
    /// as a cardinal, longer ones (or ones with a leading zero) digit by digit.
    pub fn decimal(&self, int_part: &str, frac_part: &str) -> Result<String, NumberError> {
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(NumberError::MalformedDecimal {
                int_part: int_part.to_string(),
                frac_part: frac_part.to_string(),
            });
        }
        let frac = if frac_part.len() <= 2 && !(frac_part.len() > 1 && frac_part.starts_with('0')) {
            self.number_or_digits(frac_part)
        } else {
            self.digits(frac_part)
        };
        Ok(format!("{} {} {frac}", self.number_or_digits(int_part), self.decimal_word()))
    }
}
