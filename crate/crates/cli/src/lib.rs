//! File formats and the `ncpara` command-line front end for
//! [`ncpara_core`].

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncpara_core::baseline::{naive_baseline, TemplateTable};
use ncpara_core::gold::{compile_gold, dataset_stats, gold_stats, validate_paraphrase, AnnotationRecord};
use ncpara_core::scoring::{score_system, DEFAULT_RANK_R};
use ncpara_core::{Compound, DeterminerSet, GoldList, Mode, RawParaphrase, ScoreReport, ScoringConfig, Submission};

pub mod formats;
pub mod report;

use report::{Format, SystemResult};

pub const DETERMINERS_ENV: &str = "NCPARA_DETERMINERS";

#[derive(Debug, Parser)]
#[command(name = "ncpara", version, about = "Compile noun-compound paraphrase gold data and score system output")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merge and rank raw annotations into a gold file.
    Compile {
        /// Raw annotation TSV.
        raw: PathBuf,
        /// Gold output path (stdout when omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print a well-formedness verdict for every raw annotation.
    Validate { raw: PathBuf },
    /// Score one or more system outputs against a gold file.
    Score(ScoreArgs),
    /// Write baseline paraphrases in system-output format.
    Baseline(BaselineArgs),
    /// Print per-compound paraphrase statistics of a gold file.
    Stats {
        #[arg(long)]
        gold: PathBuf,
        /// Raw annotations; when given, duplicate counts come from here.
        #[arg(long)]
        raw: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Iso,
    Noniso,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Iso => Mode::Iso,
            ModeArg::Noniso => Mode::NonIso,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long = "system", required = true)]
    pub systems: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    #[arg(long = "rank-r", default_value_t = DEFAULT_RANK_R, allow_negative_numbers = true)]
    pub rank_r: f64,
    /// Comma-separated determiners removed before matching.
    #[arg(long, env = DETERMINERS_ENV, value_delimiter = ',')]
    pub determiners: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub per_compound: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("targets").required(true).args(["compounds", "gold"])))]
pub struct BaselineArgs {
    /// Compound list, one `modifier head` per line.
    #[arg(long)]
    pub compounds: Option<PathBuf>,
    /// Take the compounds from a gold file instead.
    #[arg(long)]
    pub gold: Option<PathBuf>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Use linking phrases mined from this training gold instead of the
    /// fixed ten templates.
    #[arg(long)]
    pub train_gold: Option<PathBuf>,
    #[arg(long, default_value_t = 10, requires = "train_gold")]
    pub top_k: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0:#}")]
    Input(anyhow::Error),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot write {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn read_gold(path: &Path) -> anyhow::Result<Vec<GoldList>> {
    let gold = formats::parse_gold_file(open(path)?).with_context(|| path.display().to_string())?;
    anyhow::ensure!(!gold.is_empty(), "{}: no gold entries", path.display());
    Ok(gold)
}

pub fn read_system(path: &Path) -> anyhow::Result<Submission> {
    formats::parse_system_output(open(path)?).with_context(|| path.display().to_string())
}

fn read_raw(path: &Path) -> anyhow::Result<Vec<formats::Located<AnnotationRecord>>> {
    formats::parse_raw_annotations(open(path)?).with_context(|| path.display().to_string())
}

/// Runs a parsed command, writing results to stdout and warnings to stderr.
pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Compile { raw, out } => cmd_compile(&raw, out.as_deref()),
        Command::Validate { raw } => cmd_validate(&raw),
        Command::Score(args) => cmd_score(&args),
        Command::Baseline(args) => cmd_baseline(&args),
        Command::Stats { gold, raw, format } => cmd_stats(&gold, raw.as_deref(), format),
    }
}

fn cmd_compile(raw: &Path, out: Option<&Path>) -> CliResult<()> {
    let located = read_raw(raw)?;
    let records: Vec<AnnotationRecord> = located.iter().map(|l| l.value.clone()).collect();
    let compiled = compile_gold(&records).with_context(|| raw.display().to_string())?;
    for (idx, rec, reason) in &compiled.rejected {
        eprintln!(
            "warning: line {}: '{}': dropped {:?} ({reason})",
            located[*idx].line,
            rec.compound,
            rec.paraphrase.as_str()
        );
    }
    formats::write_gold_file(output(out)?, &compiled.lists).context("writing gold file")?;
    Ok(())
}

fn cmd_validate(raw: &Path) -> CliResult<()> {
    let mut out = output(None)?;
    for l in read_raw(raw)? {
        let rec = &l.value;
        let verdict = match validate_paraphrase(&rec.compound, rec.paraphrase.as_str()) {
            Ok(()) => "valid".to_string(),
            Err(reason) => format!("invalid: {reason}"),
        };
        writeln!(out, "line {}: {verdict}\t{}\t{}", l.line, rec.compound, rec.paraphrase)
            .context("writing verdicts")?;
    }
    out.flush().context("writing verdicts")?;
    Ok(())
}

pub fn scoring_config(rank_r: f64, determiners: Option<&[String]>) -> CliResult<ScoringConfig> {
    let dets = match determiners {
        Some(words) => DeterminerSet::new(words.iter().map(|w| w.trim()).filter(|w| !w.is_empty())),
        None => DeterminerSet::default(),
    };
    ScoringConfig::new(rank_r, dets).map_err(|e| CliError::Config(e.to_string()))
}

/// Scores every system file; results keep the input order.
pub fn score_files(
    gold: &[GoldList],
    systems: &[PathBuf],
    mode: Mode,
    config: &ScoringConfig,
) -> anyhow::Result<Vec<ScoreReport>> {
    let submissions = systems.iter().map(|p| read_system(p)).collect::<anyhow::Result<Vec<_>>>()?;
    std::thread::scope(|s| {
        let handles: Vec<_> =
            submissions.iter().map(|sub| s.spawn(move || score_system(sub, gold, mode, config))).collect();
        handles
            .into_iter()
            .zip(systems)
            .map(|(h, path)| {
                h.join().expect("scoring thread panicked").with_context(|| format!("scoring {}", path.display()))
            })
            .collect()
    })
}

fn cmd_score(args: &ScoreArgs) -> CliResult<()> {
    let config = scoring_config(args.rank_r, args.determiners.as_deref())?;
    let gold = read_gold(&args.gold)?;
    let reports = score_files(&gold, &args.systems, args.mode.into(), &config)?;
    let names: Vec<String> = args.systems.iter().map(|p| p.display().to_string()).collect();
    for (name, rep) in names.iter().zip(&reports) {
        for w in &rep.warnings {
            eprintln!("warning: {name}: {w}");
        }
    }
    let results: Vec<SystemResult<'_>> =
        names.iter().zip(&reports).map(|(name, report)| SystemResult { name, report, gold: &gold }).collect();
    report::write_leaderboard(output(None)?, &results, args.format, args.per_compound)
        .context("writing leaderboard")?;
    Ok(())
}

fn cmd_baseline(args: &BaselineArgs) -> CliResult<()> {
    if args.train_gold.is_some() && args.top_k == 0 {
        return Err(CliError::Config("--top-k must be positive".into()));
    }
    let compounds: Vec<Compound> = match (&args.compounds, &args.gold) {
        (Some(path), _) => formats::parse_compound_list(open(path)?).with_context(|| path.display().to_string())?,
        (None, Some(path)) => read_gold(path)?.iter().map(|g| g.compound().clone()).collect(),
        (None, None) => return Err(CliError::Config("one of --compounds or --gold is required".into())),
    };
    let items: Vec<(Compound, Vec<RawParaphrase>)> = match &args.train_gold {
        None => compounds
            .into_iter()
            .map(|c| {
                let ps = naive_baseline(&c);
                (c, ps)
            })
            .collect(),
        Some(path) => {
            let table = TemplateTable::from_gold(&read_gold(path)?).context("building template table")?;
            compounds
                .into_iter()
                .map(|c| {
                    let ps = table.generate(&c, args.top_k)?;
                    Ok((c, ps))
                })
                .collect::<anyhow::Result<_>>()?
        }
    };
    formats::write_system_output(output(args.out.as_deref())?, &items).context("writing baseline output")?;
    Ok(())
}

fn cmd_stats(gold_path: &Path, raw: Option<&Path>, format: Format) -> CliResult<()> {
    let gold = read_gold(gold_path)?;
    let stats = match raw {
        Some(p) => {
            let records: Vec<AnnotationRecord> = read_raw(p)?.into_iter().map(|l| l.value).collect();
            dataset_stats(&gold, &records)
        }
        None => gold_stats(&gold),
    };
    report::write_stats(output(None)?, &stats, format).context("writing statistics")?;
    Ok(())
}
