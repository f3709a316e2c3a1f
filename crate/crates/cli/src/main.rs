mod config;
mod records;
mod report;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use estnorm::evalharness::{self, parse_gold_jsonl, parse_hypotheses_tsv};
use estnorm::ratestats::{self, FlagPolicy, MosGrouping};
use estnorm::verbalize;

use config::{decode_utf8, read_utf8, CliConfig};

#[derive(Parser)]
#[command(name = "estnorm", version, about = "Estonian text normalization for speech synthesis")]
struct Cli {
    /// TOML configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format (default: text)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Any,
    Majority,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Voice,
    VoiceDomain,
}

#[derive(Subcommand)]
enum Command {
    /// Verbalize text line by line
    Normalize {
        /// Input file (default: stdin)
        input: Option<PathBuf>,
        /// Verbalize the raw side of a gold corpus into id<TAB>text hypotheses
        #[arg(long, conflicts_with = "input")]
        corpus: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Score hypotheses against a gold corpus
    Score {
        /// Gold corpus (JSON lines)
        gold: PathBuf,
        /// Hypotheses as id<TAB>text (default: stdin)
        hyp: Option<PathBuf>,
        /// Earlier hypotheses to report the improvement against
        #[arg(long)]
        baseline: Option<PathBuf>,
    },
    /// Listening-test statistics
    Stats {
        #[command(subcommand)]
        kind: StatsKind,
    },
}

#[derive(Subcommand)]
enum StatsKind {
    /// Mean opinion score with confidence interval
    Mos {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "voice")]
        group_by: GroupArg,
    },
    /// Error-category percentages per voice
    Errors {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
    },
    /// Likert mean and standard deviation
    Likert { input: Option<PathBuf> },
    /// ICC(2,k) over rater,target,score rows
    Icc { input: Option<PathBuf> },
}

fn read_input(path: Option<&Path>) -> Result<(String, String)> {
    match path {
        Some(p) => Ok((read_utf8(p)?, p.display().to_string())),
        None => {
            let mut bytes = Vec::new();
            io::stdin().read_to_end(&mut bytes).context("reading stdin")?;
            Ok((decode_utf8(bytes, "<stdin>")?, "<stdin>".to_string()))
        }
    }
}

fn write_output(path: Option<&Path>, data: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, data).with_context(|| format!("{}: cannot write", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(data.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn normalize(text: &str, cfg: &CliConfig) -> String {
    text.lines().map(|line| verbalize(line.trim_end_matches('\r'), &cfg.rules) + "\n").collect()
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => CliConfig::load(path)?,
        None => CliConfig::default(),
    };
    let format = cli.format.unwrap_or(Format::Text);
    match cli.command {
        Command::Normalize { input, output, corpus } => {
            let data = match corpus {
                Some(path) => {
                    let records = parse_gold_jsonl(&read_utf8(&path)?, &path.display().to_string())?;
                    records.iter().map(|r| format!("{}\t{}\n", r.id, verbalize(&r.raw, &cfg.rules))).collect()
                }
                None => normalize(&read_input(input.as_deref())?.0, &cfg),
            };
            write_output(output.as_deref(), &data)
        }
        Command::Score { gold, hyp, baseline } => {
            let gold_records = parse_gold_jsonl(&read_utf8(&gold)?, &gold.display().to_string())?;
            let (hyp_text, origin) = read_input(hyp.as_deref())?;
            let report = evalharness::score_corpus(&gold_records, &parse_hypotheses_tsv(&hyp_text, &origin)?)?;
            let improvement = match baseline {
                Some(path) => {
                    let before_hyps = parse_hypotheses_tsv(&read_utf8(&path)?, &path.display().to_string())?;
                    let before = evalharness::score_corpus(&gold_records, &before_hyps)?;
                    Some(evalharness::improvement(&before, &report)?)
                }
                None => None,
            };
            write_output(None, &report::score(&report, improvement, format)?)
        }
        Command::Stats { kind } => {
            let out = match kind {
                StatsKind::Mos { input, group_by } => {
                    let (src, origin) = read_input(input.as_deref())?;
                    let grouping = match group_by {
                        GroupArg::Voice => MosGrouping::Voice,
                        GroupArg::VoiceDomain => MosGrouping::VoiceDomain,
                    };
                    let result = ratestats::mos(&records::ratings(&src, &origin)?, grouping, cfg.ci_multiplier)?;
                    report::mos(&result, format)?
                }
                StatsKind::Errors { input, policy } => {
                    let (src, origin) = read_input(input.as_deref())?;
                    let policy = match policy {
                        Some(PolicyArg::Any) => FlagPolicy::Any,
                        Some(PolicyArg::Majority) => FlagPolicy::Majority,
                        None => cfg.policy,
                    };
                    let table = ratestats::error_rates::<f64>(&records::annotations(&src, &origin)?, policy)?;
                    report::errors(&table, format)?
                }
                StatsKind::Likert { input } => {
                    let (src, origin) = read_input(input.as_deref())?;
                    report::likert(&ratestats::likert_summary::<f64>(&records::likert(&src, &origin)?)?, format)?
                }
                StatsKind::Icc { input } => {
                    let (src, origin) = read_input(input.as_deref())?;
                    let matrix = ratestats::matrix_from_triples(&records::icc_triples(&src, &origin)?)?;
                    report::icc(&ratestats::icc2k(&matrix)?, format)?
                }
            };
            write_output(None, &out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
