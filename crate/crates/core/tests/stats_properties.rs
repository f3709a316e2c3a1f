use std::collections::HashMap;

use approx::assert_relative_eq;
use estnorm::evalharness::{canonicalize, percent_half_up, score_corpus, AbbrevSpan, ExpectedMode, GoldRecord};
use estnorm::ratestats::{
    f_upper_tail, icc2k, incomplete_beta, mos, Domain, MosGrouping, RatingRecord, VoiceType, Z_95,
};
use proptest::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF, FisherSnedecor};

fn ratings(doubled: &[u8]) -> Vec<RatingRecord<f64>> {
    doubled
        .iter()
        .enumerate()
        .map(|(i, &d)| RatingRecord {
            rater: format!("r{i}"),
            sentence: format!("s{i}"),
            voice: "Mari".into(),
            voice_type: VoiceType::DeepVoice3,
            domain: Domain::Uudised,
            score: f64::from(d) / 2.0,
        })
        .collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..6, 2usize..8).prop_flat_map(|(k, n)| prop::collection::vec(prop::collection::vec(1u8..=7, n), k))
        .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(f64::from).collect()).collect())
}

proptest! {
    #[test]
    fn mos_ignores_order(mut xs in prop::collection::vec(2u8..=10, 1..80), seed in any::<u64>()) {
        let a = mos(&ratings(&xs), MosGrouping::Voice, Z_95).unwrap().results[0].clone();
        let len = xs.len();
        xs.rotate_left((seed as usize) % len);
        xs.reverse();
        let b = mos(&ratings(&xs), MosGrouping::Voice, Z_95).unwrap().results[0].clone();
        assert_relative_eq!(a.mos, b.mos, max_relative = 1e-12);
        assert_relative_eq!(a.ci_half_width, b.ci_half_width, max_relative = 1e-9);
        prop_assert!((1.0..=5.0).contains(&a.mos));
        prop_assert!(a.ci_half_width >= 0.0);
    }

    #[test]
    fn adding_the_mean_shrinks_the_interval(base in prop::collection::vec(2u8..=10, 2..60)) {
        // duplicate the sample around its own mean so the mean stays on the grid
        let mut xs: Vec<u8> = base.iter().flat_map(|&x| [x, 12 - x]).collect();
        let before = mos(&ratings(&xs), MosGrouping::Voice, Z_95).unwrap().results[0].clone();
        prop_assert_eq!(before.mos, 3.0);
        xs.push(6);
        let after = mos(&ratings(&xs), MosGrouping::Voice, Z_95).unwrap().results[0].clone();
        prop_assert_eq!(after.mos, before.mos);
        if before.ci_half_width > 0.0 {
            prop_assert!(after.ci_half_width < before.ci_half_width);
        } else {
            prop_assert_eq!(after.ci_half_width, 0.0);
        }
    }

    #[test]
    fn icc_is_affine_invariant(m in matrix(), shift in -50.0f64..50.0, scale in 0.01f64..100.0) {
        let Ok(base) = icc2k(&m) else { return Ok(()); };
        let shifted: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|x| x + shift).collect()).collect();
        let scaled: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
        for other in [icc2k(&shifted).unwrap(), icc2k(&scaled).unwrap()] {
            prop_assert!((other.icc - base.icc).abs() < 1e-9, "{} vs {}", other.icc, base.icc);
            prop_assert_eq!((other.df1, other.df2), (base.df1, base.df2));
        }
        prop_assert!(base.icc <= 1.0 + 1e-12);
        prop_assert!((0.0..=1.0).contains(&base.p_value));
    }

    #[test]
    fn f_tail_matches_statrs(f in 0.001f64..50.0, d1 in 1u32..60, d2 in 1u32..200) {
        let oracle = FisherSnedecor::new(f64::from(d1), f64::from(d2)).unwrap();
        let got = f_upper_tail(f, f64::from(d1), f64::from(d2));
        prop_assert!((got - oracle.sf(f)).abs() < 1e-10, "{} vs {}", got, oracle.sf(f));
    }

    #[test]
    fn incomplete_beta_matches_statrs(a in 0.1f64..40.0, b in 0.1f64..40.0, x in 0.0f64..=1.0) {
        let oracle = Beta::new(a, b).unwrap().cdf(x);
        prop_assert!((incomplete_beta(a, b, x) - oracle).abs() < 1e-10);
    }

    #[test]
    fn f_tail_decreases_in_f(f in 0.01f64..30.0, step in 0.01f64..10.0, d1 in 1u32..30, d2 in 1u32..100) {
        let (d1, d2) = (f64::from(d1), f64::from(d2));
        prop_assert!(f_upper_tail(f + step, d1, d2) <= f_upper_tail(f, d1, d2));
    }

    #[test]
    fn percent_is_monotone_and_bounded(total in 1usize..1000, a in 0usize..1000, b in 0usize..1000) {
        let (lo, hi) = (a.min(b).min(total), a.max(b).min(total));
        prop_assert!(percent_half_up(lo, total) <= percent_half_up(hi, total));
        prop_assert!((0..=100).contains(&percent_half_up(hi, total)));
    }

    #[test]
    fn gold_scored_against_itself(
        words in prop::collection::vec("[a-zäöü]{2,8}", 3..10),
        spelled in any::<bool>(),
        listed in any::<bool>(),
    ) {
        let raw = format!("{} MTÜ {}", words[0], words[1..].join(" "));
        let rendering = if spelled { "emm-tee-üü" } else { "mittetulundusühing" };
        let gold = format!("{} {rendering} {}", words[0], words[1..].join(" "));
        let acceptable = if listed { vec!["mittetulundusühing".to_string()] } else { vec![] };
        let mode = if spelled { ExpectedMode::Spellout } else { ExpectedMode::Word };
        let rec = GoldRecord {
            id: "x".into(),
            raw,
            gold: gold.clone(),
            abbrev_spans: vec![AbbrevSpan { surface: "MTÜ".into(), expected_mode: mode, acceptable }],
        };
        let hyps: HashMap<String, String> = [("x".to_string(), gold.to_uppercase())].into();
        let report = score_corpus(&[rec], &hyps).unwrap();
        prop_assert_eq!(report.percent, 100);
        prop_assert_eq!(report.minus_points, 0);
        // plus only when a spelled gold span is itself a listed full word: never here
        prop_assert_eq!(report.plus_points, 0);
        prop_assert_eq!(canonicalize(&gold), canonicalize(&hyps["x"]));
    }
}
