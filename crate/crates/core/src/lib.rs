//! Estonian text normalization for speech synthesis, with corpus scoring and
//! listening-test statistics.

pub mod evalharness;
pub mod lexicon;
pub mod numspell;
pub mod ratestats;
pub mod textcore;
pub mod verbalizer;

pub use evalharness::{score_corpus, GoldRecord, ScoreReport};
pub use numspell::{Case, NumberLexicon};
pub use textcore::{fold_diacritics, tokenize, Token, TokenKind};
pub use verbalizer::{spell_letters, verbalize, RuleConfig};

pub type RatingRecord = ratestats::RatingRecord<f64>;
pub type MosResult = ratestats::MosResult<f64>;
pub type MosReport = ratestats::MosReport<f64>;
pub type ErrorRateTable = ratestats::ErrorRateTable<f64>;
pub type LikertRow = ratestats::LikertRow<f64>;
pub type IccResult = ratestats::IccResult<f64>;

pub type RatingRecordF32 = ratestats::RatingRecord<f32>;
pub type MosResultF32 = ratestats::MosResult<f32>;
pub type MosReportF32 = ratestats::MosReport<f32>;
pub type ErrorRateTableF32 = ratestats::ErrorRateTable<f32>;
pub type LikertRowF32 = ratestats::LikertRow<f32>;
pub type IccResultF32 = ratestats::IccResult<f32>;
