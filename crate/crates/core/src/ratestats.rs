//! Listening-test analytics: MOS with confidence intervals, error-category
//! percentages, Likert summaries and ICC(2,k).
//!
//! Everything is generic over the float type; see the crate root for `f64`
//! and `f32` aliases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("no records")]
    Empty,
    #[error("score {score} out of range: {expected}")]
    InvalidScore { score: String, expected: &'static str },
    #[error("unknown error category {0:?}")]
    UnknownCategory(String),
    #[error("unknown {kind} {value:?}")]
    UnknownLabel { kind: &'static str, value: String },
    #[error("group {0} has fewer than 2 ratings")]
    GroupTooSmall(String),
    #[error("rating matrix is incomplete: {0}")]
    IncompleteMatrix(String),
    #[error("rating matrix needs at least 2 raters and 2 targets (got {raters}×{targets})")]
    MatrixTooSmall { raters: usize, targets: usize },
    #[error("rating matrix has no variance")]
    DegenerateMatrix,
}

macro_rules! labelled_enum {
    ($name:ident, $kind:literal, { $($variant:ident => $label:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $label)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn label(self) -> &'static str {
                match self { $($name::$variant => $label),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.label())
            }
        }

        impl FromStr for $name {
            type Err = StatsError;
            fn from_str(s: &str) -> Result<Self, StatsError> {
                Self::ALL
                    .iter()
                    .copied()
                    .find(|v| v.label() == s.trim())
                    .ok_or_else(|| StatsError::UnknownLabel { kind: $kind, value: s.to_string() })
            }
        }
    };
}

labelled_enum!(VoiceType, "voice type", {
    Konekorpus => "Kõnekorpus",
    DeepVoice3 => "DeepVoice3",
    DeepVoice3Vana => "DeepVoice3-vana",
    Hts => "HTS",
    Google => "Google",
});

labelled_enum!(Domain, "domain", {
    Uudised => "uudised",
    Ilukirjandus => "ilukirjandus",
});

labelled_enum!(TextKind, "text kind", {
    Uudis => "uudis",
    Ilukirjandus => "ilukirjandus",
});

/// The nine annotation error categories, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCategory {
    WordSkipping,
    Repetition,
    IncompleteSentence,
    Volume,
    AbruptEdges,
    UnnaturalPhrasing,
    NativePronunciation,
    ForeignPronunciation,
    SymbolsNumbersAbbreviations,
}

impl ErrorCategory {
    pub const ALL: [ErrorCategory; 9] = [
        Self::WordSkipping,
        Self::Repetition,
        Self::IncompleteSentence,
        Self::Volume,
        Self::AbruptEdges,
        Self::UnnaturalPhrasing,
        Self::NativePronunciation,
        Self::ForeignPronunciation,
        Self::SymbolsNumbersAbbreviations,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::WordSkipping => "word_skipping",
            Self::Repetition => "repetition",
            Self::IncompleteSentence => "incomplete_sentence",
            Self::Volume => "volume",
            Self::AbruptEdges => "abrupt_edges",
            Self::UnnaturalPhrasing => "unnatural_phrasing",
            Self::NativePronunciation => "native_pronunciation",
            Self::ForeignPronunciation => "foreign_pronunciation",
            Self::SymbolsNumbersAbbreviations => "symbols_numbers_abbreviations",
        }
    }

    /// Short Estonian column heading.
    pub fn label(self) -> &'static str {
        match self {
            Self::WordSkipping => "Sõnade vahele jätmine",
            Self::Repetition => "Kordamine, venitamine",
            Self::IncompleteSentence => "Poolik lause",
            Self::Volume => "Helitugevuse probleemid",
            Self::AbruptEdges => "Järsk lõpp/algus",
            Self::UnnaturalPhrasing => "Ebaloomulik fraseerimine",
            Self::NativePronunciation => "Omasõnade hääldamine",
            Self::ForeignPronunciation => "Võõrsõnade hääldamine",
            Self::SymbolsNumbersAbbreviations => "Numbrite, sümbolite, lühendite vead",
        }
    }

    /// Parses a `;`- or `,`-separated list of category ids.
    pub fn parse_list(s: &str) -> Result<BTreeSet<ErrorCategory>, StatsError> {
        s.split([';', ','])
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for ErrorCategory {
    type Err = StatsError;
    fn from_str(s: &str) -> Result<Self, StatsError> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|c| c.id() == s || c.label() == s)
            .ok_or_else(|| StatsError::UnknownCategory(s.to_string()))
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn cast<T: FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in float type")
}

fn count<T: FromPrimitive>(n: usize) -> T {
    T::from_usize(n).expect("count representable in float type")
}

fn round_to<T: Float + FromPrimitive>(x: T, decimals: i32) -> T {
    let scale: T = cast(10f64.powi(decimals));
    (x * scale).round() / scale
}

fn mean<T: Float + FromPrimitive>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |a, &b| a + b) / count(xs.len())
}

/// Sample standard deviation (n − 1 denominator); 0 for fewer than two values.
pub fn sample_sd<T: Float + FromPrimitive>(xs: &[T]) -> T {
    if xs.len() < 2 {
        return T::zero();
    }
    let m = mean(xs);
    let ss = xs.iter().fold(T::zero(), |a, &x| a + (x - m) * (x - m));
    (ss / count(xs.len() - 1)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingRecord<T> {
    pub rater: String,
    pub sentence: String,
    pub voice: String,
    pub voice_type: VoiceType,
    pub domain: Domain,
    pub score: T,
}

impl<T: Float + FromPrimitive + fmt::Display> RatingRecord<T> {
    /// Scores must lie in [1, 5] on a 0.5 grid.
    pub fn validate(&self) -> Result<(), StatsError> {
        let doubled = self.score * cast(2.0);
        let ok = self.score >= T::one() && self.score <= cast(5.0) && doubled == doubled.round();
        if ok {
            Ok(())
        } else {
            Err(StatsError::InvalidScore { score: self.score.to_string(), expected: "1..5 in steps of 0.5" })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub annotator: String,
    pub sentence: String,
    pub voice: String,
    pub flags: BTreeSet<ErrorCategory>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LikertRecord {
    pub rater: String,
    pub voice: String,
    pub text_kind: TextKind,
    pub score: u8,
}

impl LikertRecord {
    pub fn validate(&self) -> Result<(), StatsError> {
        if (1..=7).contains(&self.score) {
            Ok(())
        } else {
            Err(StatsError::InvalidScore { score: self.score.to_string(), expected: "integer 1..7" })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MosGrouping {
    #[default]
    Voice,
    VoiceDomain,
}

/// Normal-approximation multiplier for a 95% interval.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MosResult<T> {
    pub voice_type: VoiceType,
    pub voice: String,
    pub domain: Option<Domain>,
    pub n: usize,
    pub mos: T,
    pub ci_half_width: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MosReport<T> {
    pub results: Vec<MosResult<T>>,
    pub warnings: Vec<String>,
}

/// Mean opinion score per voice (and optionally domain) with a
/// `z · s / √n` confidence half-width. Voices are keyed by type and name,
/// since the same speaker appears under several voice types.
pub fn mos<T>(records: &[RatingRecord<T>], grouping: MosGrouping, z: T) -> Result<MosReport<T>, StatsError>
where
    T: Float + FromPrimitive + fmt::Display,
{
    if records.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut groups: BTreeMap<(VoiceType, &str, Option<Domain>), Vec<T>> = BTreeMap::new();
    for r in records {
        r.validate()?;
        let domain = (grouping == MosGrouping::VoiceDomain).then_some(r.domain);
        groups.entry((r.voice_type, r.voice.as_str(), domain)).or_default().push(r.score);
    }
    let mut warnings = Vec::new();
    let mut results: Vec<MosResult<T>> = groups
        .into_iter()
        .map(|((voice_type, voice, domain), scores)| {
            let n = scores.len();
            if n == 1 {
                let msg = format!("degenerate group {voice_type}/{voice}: single rating, CI reported as 0");
                log::warn!("{msg}");
                warnings.push(msg);
            }
            MosResult {
                voice_type,
                voice: voice.to_string(),
                domain,
                n,
                mos: mean(&scores),
                ci_half_width: z * sample_sd(&scores) / count::<T>(n).sqrt(),
            }
        })
        .collect();
    results.sort_by(|a, b| {
        b.mos
            .partial_cmp(&a.mos)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.voice.cmp(&b.voice))
            .then_with(|| a.voice_type.cmp(&b.voice_type))
            .then_with(|| a.domain.cmp(&b.domain))
    });
    Ok(MosReport { results, warnings })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagPolicy {
    /// A sentence counts if any annotator flagged it.
    #[default]
    Any,
    /// A sentence counts if strictly more than half of its annotators did.
    Majority,
}

impl FromStr for FlagPolicy {
    type Err = StatsError;
    fn from_str(s: &str) -> Result<Self, StatsError> {
        match s.trim() {
            "any" => Ok(Self::Any),
            "majority" => Ok(Self::Majority),
            other => Err(StatsError::UnknownLabel { kind: "policy", value: other.to_string() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRateRow<T> {
    pub voice: String,
    pub sentences: usize,
    /// Percentages in [`ErrorCategory::ALL`] order, one decimal place.
    pub percentages: Vec<T>,
}

impl<T: Copy> ErrorRateRow<T> {
    pub fn get(&self, category: ErrorCategory) -> T {
        self.percentages[category as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRateTable<T> {
    pub policy: FlagPolicy,
    pub rows: Vec<ErrorRateRow<T>>,
    pub warnings: Vec<String>,
}

/// Share of annotated sentences per voice flagged with each category.
/// Rows are ordered by voice name.
pub fn error_rates<T>(annotations: &[AnnotationRecord], policy: FlagPolicy) -> Result<ErrorRateTable<T>, StatsError>
where
    T: Float + FromPrimitive,
{
    if annotations.is_empty() {
        return Err(StatsError::Empty);
    }
    // voice -> sentence -> annotator -> flags
    let mut tree: BTreeMap<&str, BTreeMap<&str, BTreeMap<&str, BTreeSet<ErrorCategory>>>> = BTreeMap::new();
    for a in annotations {
        tree.entry(&a.voice)
            .or_default()
            .entry(&a.sentence)
            .or_default()
            .entry(&a.annotator)
            .or_default()
            .extend(a.flags.iter().copied());
    }
    let mut warnings = Vec::new();
    let rows = tree
        .into_iter()
        .map(|(voice, sentences)| {
            let mut flagged = [0usize; 9];
            for (sentence, by_annotator) in &sentences {
                let k = by_annotator.len();
                if k < 2 {
                    let msg = format!("{voice}/{sentence}: only {k} annotator");
                    log::warn!("{msg}");
                    warnings.push(msg);
                }
                for (slot, category) in flagged.iter_mut().zip(ErrorCategory::ALL) {
                    let votes = by_annotator.values().filter(|f| f.contains(&category)).count();
                    let counted = match policy {
                        FlagPolicy::Any => votes > 0,
                        FlagPolicy::Majority => 2 * votes > k,
                    };
                    *slot += usize::from(counted);
                }
            }
            let total = sentences.len();
            ErrorRateRow {
                voice: voice.to_string(),
                sentences: total,
                percentages: flagged
                    .iter()
                    .map(|&f| round_to(cast::<T>(100.0) * count(f) / count(total), 1))
                    .collect(),
            }
        })
        .collect();
    Ok(ErrorRateTable { policy, rows, warnings })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LikertRow<T> {
    pub voice: String,
    pub text_kind: TextKind,
    pub n: usize,
    /// Rounded to two decimals.
    pub mean: T,
    /// Sample standard deviation, rounded to two decimals.
    pub sd: T,
}

/// Mean and standard deviation per voice and text kind, ordered by
/// descending mean.
pub fn likert_summary<T>(records: &[LikertRecord]) -> Result<Vec<LikertRow<T>>, StatsError>
where
    T: Float + FromPrimitive,
{
    if records.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut groups: BTreeMap<(&str, TextKind), Vec<T>> = BTreeMap::new();
    for r in records {
        r.validate()?;
        groups.entry((&r.voice, r.text_kind)).or_default().push(count(usize::from(r.score)));
    }
    let mut rows = groups
        .into_iter()
        .map(|((voice, text_kind), scores)| {
            if scores.len() < 2 {
                return Err(StatsError::GroupTooSmall(format!("{voice}/{text_kind}")));
            }
            Ok(LikertRow {
                voice: voice.to_string(),
                text_kind,
                n: scores.len(),
                mean: round_to(mean(&scores), 2),
                sd: round_to(sample_sd(&scores), 2),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| {
        b.mean
            .partial_cmp(&a.mean)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.voice.cmp(&b.voice))
            .then_with(|| a.text_kind.cmp(&b.text_kind))
    });
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IccResult<T> {
    pub icc: T,
    pub f_value: T,
    pub df1: usize,
    pub df2: usize,
    pub p_value: T,
}

/// Two-way ANOVA mean squares for a raters × targets matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSquares<T> {
    /// Between targets.
    pub msr: T,
    /// Between raters.
    pub msc: T,
    /// Residual.
    pub mse: T,
}

fn check_matrix<T: Float>(matrix: &[Vec<T>]) -> Result<(usize, usize), StatsError> {
    let k = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    if let Some(i) = matrix.iter().position(|row| row.len() != n) {
        return Err(StatsError::IncompleteMatrix(format!("rater {} has {} scores, expected {n}", i + 1, matrix[i].len())));
    }
    if k < 2 || n < 2 {
        return Err(StatsError::MatrixTooSmall { raters: k, targets: n });
    }
    for (i, row) in matrix.iter().enumerate() {
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(StatsError::IncompleteMatrix(format!("rater {} target {} has no score", i + 1, j + 1)));
        }
    }
    Ok((k, n))
}

/// Mean squares of `matrix[rater][target]`. Sums of squares below rounding
/// noise relative to the total are set to zero.
pub fn mean_squares<T: Float + FromPrimitive>(matrix: &[Vec<T>]) -> Result<MeanSquares<T>, StatsError> {
    let (k, n) = check_matrix(matrix)?;
    let all: Vec<T> = matrix.iter().flatten().copied().collect();
    let grand = mean(&all);
    let rater_means: Vec<T> = matrix.iter().map(|row| mean(row)).collect();
    let target_means: Vec<T> =
        (0..n).map(|j| matrix.iter().fold(T::zero(), |a, row| a + row[j]) / count(k)).collect();
    let sq = |x: T| x * x;
    let sst = all.iter().fold(T::zero(), |a, &x| a + sq(x - grand));
    let ssr = target_means.iter().fold(T::zero(), |a, &m| a + sq(m - grand)) * count(k);
    let ssc = rater_means.iter().fold(T::zero(), |a, &m| a + sq(m - grand)) * count(n);
    let mut sse = T::zero();
    for (i, row) in matrix.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            sse = sse + sq(x - rater_means[i] - target_means[j] + grand);
        }
    }
    let noise = sst * T::epsilon() * cast(64.0);
    let clean = |s: T| if s <= noise { T::zero() } else { s };
    Ok(MeanSquares {
        msr: clean(ssr) / count(n - 1),
        msc: clean(ssc) / count(k - 1),
        mse: clean(sse) / count((n - 1) * (k - 1)),
    })
}

/// ICC(2,k): two-way random effects, average measures, absolute agreement,
/// over `matrix[rater][target]`.
pub fn icc2k<T: Float + FromPrimitive>(matrix: &[Vec<T>]) -> Result<IccResult<T>, StatsError> {
    let (k, n) = check_matrix(matrix)?;
    let MeanSquares { msr, msc, mse } = mean_squares(matrix)?;
    let denom = msr + (msc - mse) / count(n);
    if denom <= T::zero() {
        return Err(StatsError::DegenerateMatrix);
    }
    let (df1, df2) = (n - 1, (n - 1) * (k - 1));
    let f_value = if mse == T::zero() { T::infinity() } else { msr / mse };
    Ok(IccResult {
        icc: (msr - mse) / denom,
        f_value,
        df1,
        df2,
        p_value: f_upper_tail(f_value, count(df1), count(df2)),
    })
}

/// Builds a `matrix[rater][target]` from long-format triples. Raters and
/// targets are ordered by id; any missing or duplicated cell is an error.
pub fn matrix_from_triples<T: Float>(triples: &[(String, String, T)]) -> Result<Vec<Vec<T>>, StatsError> {
    let raters: BTreeSet<&str> = triples.iter().map(|t| t.0.as_str()).collect();
    let targets: BTreeSet<&str> = triples.iter().map(|t| t.1.as_str()).collect();
    let mut cells: BTreeMap<(&str, &str), T> = BTreeMap::new();
    for (r, t, x) in triples {
        if cells.insert((r, t), *x).is_some() {
            return Err(StatsError::IncompleteMatrix(format!("duplicate score for rater {r} target {t}")));
        }
    }
    raters
        .iter()
        .map(|r| {
            targets
                .iter()
                .map(|t| {
                    cells
                        .get(&(*r, *t))
                        .copied()
                        .ok_or_else(|| StatsError::IncompleteMatrix(format!("rater {r} has no score for target {t}")))
                })
                .collect()
        })
        .collect()
}

/// Natural log of the gamma function (Lanczos, g = 7).
pub fn ln_gamma<T: Float + FromPrimitive>(x: T) -> T {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let half: T = cast(0.5);
    if x < half {
        let pi: T = cast(std::f64::consts::PI);
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut a: T = cast(COEF[0]);
    let t = x + cast(7.5);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a = a + cast::<T>(c) / (x + count(i));
    }
    cast::<T>(0.5 * (2.0 * std::f64::consts::PI).ln()) + (x + half) * t.ln() - t + a.ln()
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_cf<T: Float + FromPrimitive>(a: T, b: T, x: T) -> T {
    let tiny: T = cast(1e-300_f64.max(T::min_positive_value().to_f64().unwrap_or(1e-300)));
    let eps: T = cast(1e-12_f64.max(T::epsilon().to_f64().unwrap_or(1e-12)));
    let one = T::one();
    let two: T = cast(2.0);
    let guard = |v: T| if v.abs() < tiny { tiny } else { v };
    let mut c = one;
    let mut d = one / guard(one - (a + b) * x / (a + one));
    let mut h = d;
    for m in 1..=10_000usize {
        let m: T = count(m);
        let m2 = two * m;
        let aa = m * (b - m) * x / ((a + m2 - one) * (a + m2));
        d = one / guard(one + aa * d);
        c = guard(one + aa / c);
        h = h * d * c;
        let aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + one));
        d = one / guard(one + aa * d);
        c = guard(one + aa / c);
        let delta = d * c;
        h = h * delta;
        if (delta - one).abs() < eps {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b).
pub fn incomplete_beta<T: Float + FromPrimitive>(a: T, b: T, x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x >= T::one() {
        return T::one();
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (T::one() - x).ln();
    let front = ln_front.exp();
    if x < (a + T::one()) / (a + b + cast(2.0)) {
        front * beta_cf(a, b, x) / a
    } else {
        T::one() - front * beta_cf(b, a, T::one() - x) / b
    }
}

/// P(F > f) for an F distribution with `d1`, `d2` degrees of freedom.
pub fn f_upper_tail<T: Float + FromPrimitive>(f: T, d1: T, d2: T) -> T {
    if f.is_nan() {
        return f;
    }
    if f <= T::zero() {
        return T::one();
    }
    if f.is_infinite() {
        return T::zero();
    }
    let half: T = cast(0.5);
    incomplete_beta(d2 * half, d1 * half, d2 / (d2 + d1 * f))
}
