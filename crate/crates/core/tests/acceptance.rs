//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use estnorm::evalharness::{self, canonicalize, parse_gold_jsonl, GoldRecord, ScoreReport};
use estnorm::numspell::{Case, NumberLexicon};
use estnorm::ratestats::{self, AnnotationRecord, Domain, ErrorCategory, FlagPolicy, MosGrouping, RatingRecord};
use estnorm::textcore::{fold_diacritics, tokenize, FoldingTable};
use estnorm::verbalizer::{spell_letters, verbalize, LetterNameTable, RuleConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLD: &str = include_str!("../data/corpus/gold_mini.jsonl");

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cfg = RuleConfig::default();
    let gold = parse_gold_jsonl(GOLD, "gold_mini.jsonl").map_err(|e| e.to_string())?;
    let mut per_category: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &gold {
        *per_category.entry(r.id.split('-').next().unwrap()).or_default() += 1;
    }
    for cat in ["s1", "s2", "s3", "s4", "s5"] {
        let n = per_category.get(cat).copied().unwrap_or(0);
        ensure(n >= 3, || format!("category {cat} has {n} cases"))?;
    }
    let hyps: HashMap<String, String> = gold.iter().map(|r| (r.id.clone(), verbalize(&r.raw, &cfg))).collect();
    let solved: Vec<&GoldRecord> = gold.iter().filter(|r| r.id.starts_with('s')).collect();
    for r in &solved {
        let got = &hyps[&r.id];
        ensure(canonicalize(got) == canonicalize(&r.gold), || format!("{}: {:?} != {:?}", r.id, got, r.gold))?;
    }
    let report = evalharness::score_corpus(&gold, &hyps).map_err(|e| e.to_string())?;
    ensure(report.minus_points == 0, || format!("{} minus points", report.minus_points))?;

    let names = &cfg.letter_names;
    for token in ["MM", "CV", "DVD"] {
        let spelled = spell_letters(token, names, None).map_err(|e| e.to_string())?;
        for context in ["{} sajand", "{}. peatükk", "Karl {}", "{} sajandi lõpus", "{}"] {
            let out = verbalize(&context.replace("{}", token), &cfg);
            ensure(out.contains(&spelled), || format!("{token} in {context:?} read as {out:?}"))?;
        }
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "{} solved cases pass, corpus {} ({} minus), {took:?}",
        solved.len(),
        report.summary_line(),
        report.minus_points
    ))
}

fn synthetic_report(matches: usize) -> Result<ScoreReport, String> {
    let gold: Vec<GoldRecord> = (0..177)
        .map(|i| GoldRecord {
            id: format!("r{i:03}"),
            raw: format!("lause {i}"),
            gold: format!("lause number {i}"),
            abbrev_spans: vec![],
        })
        .collect();
    let hyps = gold
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id.clone(), if i < matches { r.gold.clone() } else { r.raw.clone() }))
        .collect();
    evalharness::score_corpus(&gold, &hyps).map_err(|e| e.to_string())
}

fn criterion_2() -> Outcome {
    let before = synthetic_report(87)?;
    let after = synthetic_report(114)?;
    ensure(before.summary_line() == "87 lauset ehk 49%", || before.summary_line())?;
    ensure(after.summary_line() == "114 lauset ehk 64%", || after.summary_line())?;
    let delta = evalharness::improvement(&before, &after).map_err(|e| e.to_string())?;
    ensure(delta == 15, || format!("improvement {delta}"))?;
    Ok(format!("{}; {}; +{delta} protsendipunkti", before.summary_line(), after.summary_line()))
}

fn rating(voice: String, score: f64) -> RatingRecord<f64> {
    RatingRecord {
        rater: "r".into(),
        sentence: "s".into(),
        voice,
        voice_type: ratestats::VoiceType::DeepVoice3,
        domain: Domain::Uudised,
        score,
    }
}

/// Exact variance from integer sums of doubled scores.
fn ci_oracle(doubled: &[i64]) -> f64 {
    let n = doubled.len() as i64;
    if n < 2 {
        return 0.0;
    }
    let s: i64 = doubled.iter().sum();
    let q: i64 = doubled.iter().map(|x| x * x).sum();
    let var = (n * q - s * s) as f64 / (n * (n - 1)) as f64 / 4.0;
    1.96 * var.sqrt() / (n as f64).sqrt()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // (a) CI against the integer oracle, (b) zero variance
    let mut worst = 0.0f64;
    for g in 0..1000 {
        let n = rng.gen_range(1..=200);
        let doubled: Vec<i64> = if g % 10 == 0 {
            vec![rng.gen_range(2..=10); n]
        } else {
            (0..n).map(|_| rng.gen_range(2..=10)).collect()
        };
        let recs: Vec<_> = doubled.iter().map(|&d| rating(format!("v{g}"), d as f64 / 2.0)).collect();
        let got = ratestats::mos(&recs, MosGrouping::Voice, ratestats::Z_95).map_err(|e| e.to_string())?;
        let ci = got.results[0].ci_half_width;
        if g % 10 == 0 {
            ensure(ci == 0.0, || format!("zero-variance group {g} has ci {ci}"))?;
        }
        let err = (ci - ci_oracle(&doubled)).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9, || format!("group {g}: ci {ci} vs oracle {}", ci_oracle(&doubled)))?;
    }

    // (c) majority <= any
    for set in 0..200 {
        let annotators = rng.gen_range(1..=4);
        let mut recs = Vec::new();
        for voice in ["A", "B", "C"] {
            for sentence in 0..rng.gen_range(1..=15) {
                for a in 0..annotators {
                    let flags =
                        ErrorCategory::ALL.into_iter().filter(|_| rng.gen_bool(0.3)).collect();
                    recs.push(AnnotationRecord {
                        annotator: a.to_string(),
                        sentence: sentence.to_string(),
                        voice: voice.into(),
                        flags,
                    });
                }
            }
        }
        let any = ratestats::error_rates::<f64>(&recs, FlagPolicy::Any).map_err(|e| e.to_string())?;
        let maj = ratestats::error_rates::<f64>(&recs, FlagPolicy::Majority).map_err(|e| e.to_string())?;
        for (ra, rm) in any.rows.iter().zip(&maj.rows) {
            for (a, m) in ra.percentages.iter().zip(&rm.percentages) {
                ensure(m <= a && (0.0..=100.0).contains(a), || format!("set {set} {}: majority {m} > any {a}", ra.voice))?;
            }
        }
    }

    // (d) ICC on a 3 rater × 4 target matrix; hand ANOVA: grand mean 29/4,
    // MSR = 35/4, MSC = 1/4, MSE = 5/4, so ICC = 15/17 and F = 7 on (3, 6).
    let m: Vec<Vec<f64>> = vec![vec![9.0, 6.0, 8.0, 7.0], vec![8.0, 5.0, 9.0, 6.0], vec![10.0, 4.0, 7.0, 8.0]];
    let icc = ratestats::icc2k(&m).map_err(|e| e.to_string())?;
    ensure((icc.icc - 15.0 / 17.0).abs() <= 1e-9, || format!("icc {}", icc.icc))?;
    ensure((icc.f_value - 7.0).abs() <= 1e-9 && (icc.df1, icc.df2) == (3, 6), || format!("{icc:?}"))?;
    let shifted: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|x| x + 13.5).collect()).collect();
    let scaled: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|x| x * 0.37).collect()).collect();
    for (label, variant) in [("shift", shifted), ("scale", scaled)] {
        let v = ratestats::icc2k(&variant).map_err(|e| e.to_string())?;
        ensure((v.icc - icc.icc).abs() <= 1e-9, || format!("{label}: icc {} vs {}", v.icc, icc.icc))?;
    }
    let row = vec![2.0, 5.0, 3.5, 7.0, 1.0];
    let perfect = ratestats::icc2k(&vec![row.clone(), row.clone(), row.clone(), row]).map_err(|e| e.to_string())?;
    ensure(perfect.icc == 1.0, || format!("perfect agreement icc {}", perfect.icc))?;

    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("max CI error {worst:.1e}, ICC {:.6} (p = {:.4}), {took:?}", icc.icc, icc.p_value))
}

fn criterion_4() -> Outcome {
    let names = LetterNameTable::default();
    let spell = |t: &str, s: Option<&str>| spell_letters(t, &names, s).map_err(|e| e.to_string());
    let cases = [("MTÜ", None, "emm-tee-üü"), ("MTÜ", Some("le"), "emm-tee-üüle"), ("EAS", Some("i"), "ee-aa-essi")];
    for (token, suffix, expected) in cases {
        let got = spell(token, suffix)?;
        ensure(got == expected, || format!("{token}+{suffix:?} = {got:?}"))?;
    }
    let cfg = RuleConfig::default();
    ensure(verbalize("MTÜle", &cfg) == "emm-tee-üüle", || verbalize("MTÜle", &cfg))?;
    ensure(verbalize("EAS-i", &cfg) == "ee-aa-essi", || verbalize("EAS-i", &cfg))?;
    Ok("emm-tee-üü, emm-tee-üüle, ee-aa-essi".into())
}

const POOLS: &[&str] = &[
    "abcdefghijklmnopqrstuvwxyzšžõäöü",
    "ABCDEFGHIJKLMNOPQRSTUVWXYZŠŽÕÄÖÜ",
    "0123456789",
    " \t\n\u{a0}\u{202f}",
    ".,;:!?-–—()[]\"'/",
    "%€$&+=@#°*<>|~^_\\",
    "IVXLCDM",
    "éèçñåßøłæœÅ\u{301}\u{308}",
    "абвгдЖЩΩλ你好",
    "☺🎉٣४",
];

fn random_text(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(0..40);
    (0..len)
        .map(|_| {
            let pool: Vec<char> = POOLS[rng.gen_range(0..POOLS.len())].chars().collect();
            pool[rng.gen_range(0..pool.len())]
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let cfg = RuleConfig::default();
    let table = FoldingTable::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..10_000 {
        let s = random_text(&mut rng);
        let back = tokenize(&s).detokenize();
        ensure(back == s, || format!("#{i}: round trip {s:?} -> {back:?}"))?;
        let once = fold_diacritics(&s, &table);
        ensure(fold_diacritics(&once, &table) == once, || format!("#{i}: fold not idempotent on {s:?}"))?;
        let out = verbalize(&s, &cfg);
        ensure(!out.chars().any(|c| c.is_ascii_digit()), || format!("#{i}: digits in {out:?} from {s:?}"))?;
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!("10000 strings, {took:?}"))
}

/// Cardinal words composed from hard-coded Estonian parts.
fn oracle_cardinal(n: u64) -> String {
    const UNITS: [&str; 10] = ["null", "üks", "kaks", "kolm", "neli", "viis", "kuus", "seitse", "kaheksa", "üheksa"];
    fn below_thousand(n: u64) -> Vec<String> {
        let mut words = Vec::new();
        let (h, rest) = (n / 100, n % 100);
        if h > 0 {
            words.push(if h == 1 { "sada".to_string() } else { format!("{}sada", UNITS[h as usize]) });
        }
        match rest {
            0 => {}
            1..=9 => words.push(UNITS[rest as usize].to_string()),
            10 => words.push("kümme".into()),
            11..=19 => words.push(format!("{}teist", UNITS[(rest - 10) as usize])),
            _ => {
                words.push(format!("{}kümmend", UNITS[(rest / 10) as usize]));
                if rest % 10 > 0 {
                    words.push(UNITS[(rest % 10) as usize].to_string());
                }
            }
        }
        words
    }
    if n == 0 {
        return "null".into();
    }
    let (t, rest) = (n / 1000, n % 1000);
    let mut words = Vec::new();
    if t == 1 {
        words.push("tuhat".to_string());
    } else if t > 1 {
        words.extend(below_thousand(t));
        words.push("tuhat".into());
    }
    words.extend(below_thousand(rest));
    words.join(" ")
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let lex = NumberLexicon::default();
    let card = |n| lex.cardinal(n, Case::Nominative).map_err(|e| e.to_string());
    let mut seen = HashSet::new();
    for n in 0..=10_000 {
        let words = card(n)?;
        let expected = oracle_cardinal(n);
        ensure(words == expected, || format!("{n}: {words:?} vs oracle {expected:?}"))?;
        ensure(seen.insert(words), || format!("{n} collides"))?;
    }
    let parts: Vec<String> = (0..1000).map(card).collect::<Result<_, _>>()?;
    for n in 1000..1_000_000u64 {
        let (t, rest) = ((n / 1000) as usize, (n % 1000) as usize);
        let head = if t == 1 { "tuhat".to_string() } else { format!("{} tuhat", parts[t]) };
        let expected = if rest == 0 { head } else { format!("{head} {}", parts[rest]) };
        let words = card(n)?;
        ensure(words == expected, || format!("{n}: {words:?} vs composed {expected:?}"))?;
    }
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("injective on [0, 10000], compositional on [1000, 999999], {took:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("solved-problem regression", criterion_1),
        ("scorer arithmetic", criterion_2),
        ("rating statistics properties", criterion_3),
        ("letter-name fidelity", criterion_4),
        ("round-trip and purity", criterion_5),
        ("number speller brute force", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
