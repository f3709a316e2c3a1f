//! Tokenization of raw text into classified spans, and diacritic folding.

mod fold;
mod token;

pub use fold::{fold_diacritics, is_estonian_letter, FoldingTable, ESTONIAN_LETTERS};
pub use token::{
    is_estonian_vowel, is_sentence_punct, tokenize, Token, TokenKind, Tokenized, SENTENCE_PUNCT,
};
