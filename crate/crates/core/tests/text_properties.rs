use std::collections::HashSet;

use estnorm::numspell::{Case, NumberLexicon};
use estnorm::textcore::{fold_diacritics, tokenize, FoldingTable, TokenKind};
use estnorm::verbalizer::{classify_uppercase, expand_roman, parse_roman, to_roman, verbalize, RuleConfig};
use proptest::prelude::*;

fn mixed_text() -> impl Strategy<Value = String> {
    prop_oneof![
        any::<String>(),
        "[a-zšžõäöüA-ZŠŽÕÄÖÜ0-9 .,:;!?%€/+@#'\"()\\-–\t\n\u{a0}]{0,60}",
        "[IVXLCDM ]{0,20}",
        "[éçñåßøł\u{301}\u{308}абвΩ☺ a-z]{0,30}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn tokenizer_round_trips(s in mixed_text()) {
        prop_assert_eq!(tokenize(&s).detokenize(), s);
    }

    #[test]
    fn spans_index_the_input(s in mixed_text()) {
        let toks = tokenize(&s);
        let mut last = 0;
        for t in toks.iter() {
            prop_assert!(t.span.0 >= last);
            prop_assert_eq!(&s[t.span.0..t.span.1], t.text.as_str());
            last = t.span.1;
        }
    }

    #[test]
    fn folding_is_idempotent(s in mixed_text()) {
        let table = FoldingTable::default();
        let once = fold_diacritics(&s, &table);
        prop_assert_eq!(fold_diacritics(&once, &table), once);
    }

    #[test]
    fn folding_keeps_estonian_letters(s in "[a-zšžõäöüA-ZŠŽÕÄÖÜ ]{0,40}") {
        prop_assert_eq!(fold_diacritics(&s, &FoldingTable::default()), s);
    }

    #[test]
    fn output_has_no_digits(s in mixed_text()) {
        let out = verbalize(&s, &RuleConfig::default());
        prop_assert!(!out.chars().any(|c| c.is_ascii_digit()), "{:?} -> {:?}", s, out);
    }

    #[test]
    fn verbalize_is_deterministic(s in mixed_text()) {
        let cfg = RuleConfig::default();
        prop_assert_eq!(verbalize(&s, &cfg), verbalize(&s, &cfg));
    }

    #[test]
    fn uppercase_kind_ignores_neighbours(
        w in "[A-ZŠŽÕÄÖÜ]{2,9}",
        left in "[a-zäöü]{1,8}",
        right in "[a-zäöü]{1,8}",
    ) {
        let alone = tokenize(&w)[0].kind;
        let in_sentence = tokenize(&format!("{left} {w} {right}."))[1].kind;
        prop_assert_eq!(alone, in_sentence);
        prop_assert!(matches!(alone, TokenKind::UppercaseSeq | TokenKind::RomanCandidate));
        let cfg = RuleConfig::default();
        prop_assert_eq!(classify_uppercase(&w, &cfg), classify_uppercase(&w, &cfg));
    }

    #[test]
    fn stoplist_beats_every_context(
        idx in 0usize..64,
        left in "(Karl|Peeter|osa|ta|[A-Z][a-z]{2,6})",
        right in "(sajand|sajandi|peatükk|klass|\\.|[a-z]{1,6})",
    ) {
        let cfg = RuleConfig::default();
        let stop: Vec<&str> = cfg.roman_stoplist.iter().collect();
        let word = stop[idx % stop.len()];
        let toks = tokenize(&format!("{left} {word} {right}"));
        let pos = toks.iter().position(|t| t.text == word).unwrap();
        prop_assert_eq!(expand_roman(word, toks.get(pos.wrapping_sub(1)), toks.get(pos + 1), &cfg), None);
    }

    #[test]
    fn roman_round_trip(n in 1u32..=3999) {
        prop_assert_eq!(parse_roman(&to_roman(n).unwrap()), Some(n));
    }

    #[test]
    fn cardinal_scales_compose(m in 1u64..1000, t in 0u64..1000, r in 0u64..1000) {
        let lex = NumberLexicon::default();
        let c = |n| lex.cardinal(n, Case::Nominative).unwrap();
        let n = m * 1_000_000 + t * 1000 + r;
        let mut parts = vec![if m == 1 { "miljon".to_string() } else { format!("{} miljonit", c(m)) }];
        if t > 0 {
            parts.push(if t == 1 { "tuhat".to_string() } else { format!("{} tuhat", c(t)) });
        }
        if r > 0 {
            parts.push(c(r));
        }
        prop_assert_eq!(c(n), parts.join(" "));
    }
}

#[test]
fn ordinals_are_injective() {
    let lex = NumberLexicon::default();
    for case in [Case::Nominative, Case::Genitive] {
        let words: HashSet<String> = (1..=3999).map(|n| lex.ordinal(n, case).unwrap()).collect();
        assert_eq!(words.len(), 3999);
    }
}

#[test]
fn genitive_cardinals_are_injective() {
    let lex = NumberLexicon::default();
    let words: HashSet<String> = (0..=10_000).map(|n| lex.cardinal(n, Case::Genitive).unwrap()).collect();
    assert_eq!(words.len(), 10_001);
}
