mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logbench::corpus::{load_raw, load_structured, template_frequency_map, write_dataset, Dataset};
use logbench::fuzzing::{fuzz, FuzzConfig, FuzzMode};
use logbench::harness::{build_combined_dataset, run_experiment, ExperimentPlan};
use logbench::heterogeneity::{
    dataset_h, h_score, proxy_stats, ReferenceStats, INDUSTRY_REFERENCE, KNOWN_DATASET_STATS,
};
use logbench::metrics::{MetricReport, ParseResult};
use logbench::mixing::{mix, mix_with_parser_labels, replacement_count, MixConfig};
use logbench::parsers::{
    load_parse_result, parse, save_parse_result, ParserConfig, TokenFrequencyConfig, TreeConfig,
};
use logbench::pool::{
    build_outlier_pool, build_variable_pool, save_pools, OutlierPool, VariablePool,
    OUTLIER_POOL_FILE,
};
use logbench::synthetic::SyntheticSystem;
use logbench::Error;

use output::Format;

/// Log parser benchmarking: heterogeneity, synthesis and evaluation.
///
/// Datasets ending in `.csv` are read as structured files
/// (`LineId,Content,EventTemplate[,Source]`); anything else as raw logs, one
/// message per line.
#[derive(Debug, Parser)]
#[command(name = "logbench", version)]
struct Cli {
    /// Seed for seeded commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (or directory for `pool build`); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Proxy statistics and template counts of datasets.
    Stats { files: Vec<PathBuf> },
    /// Heterogeneity score of datasets.
    Heterogeneity {
        files: Vec<PathBuf>,
        /// Score the built-in statistics of well-known datasets instead.
        #[arg(long)]
        builtin_stats: bool,
        #[command(flatten)]
        reference: RefArgs,
    },
    /// Outlier and variable pools.
    Pool {
        #[command(subcommand)]
        action: PoolAction,
    },
    /// Replace the most frequent records with outlier pool entries.
    Mix {
        #[arg(long)]
        strength: f64,
        /// Pool directory (or an outlier pool file).
        #[arg(long)]
        pool: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Rank by this parser output instead of ground truth.
        #[arg(long)]
        parsed: Option<PathBuf>,
        /// Allow pool entries from the dataset itself.
        #[arg(long)]
        keep_source: bool,
    },
    /// Replace every variable with pool values.
    Fuzz {
        #[arg(long, value_enum, default_value_t = ModeArg::Labeled)]
        mode: ModeArg,
        #[arg(long)]
        vpool: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Parser output; required with `--mode parsed`.
        #[arg(long)]
        parsed: Option<PathBuf>,
    },
    /// Parse a dataset into `LineId,EventTemplate`.
    Parse {
        #[command(flatten)]
        parser: ParserArgs,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Uniform sample across datasets.
    Combine {
        #[arg(long)]
        size: usize,
        files: Vec<PathBuf>,
    },
    /// Score a parser output (or a built-in parser) against ground truth.
    Evaluate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Parser output to score; when absent, `--parser` runs here.
        #[arg(long)]
        parsed: Option<PathBuf>,
        #[command(flatten)]
        parser: ParserArgs,
    },
    /// Write a labeled synthetic dataset.
    Generate {
        /// One of the built-in systems, e.g. `apache-like`.
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 2000)]
        lines: usize,
    },
    /// Run an experiment plan (JSON).
    Benchmark {
        plan: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        runs: Option<usize>,
        /// Leave wall-clock timings out of the report.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Debug, Subcommand)]
enum PoolAction {
    Build {
        #[arg(long, default_value_t = 0.05)]
        outlier_fraction: f64,
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RefArgs {
    #[arg(long, requires_all = ["ref_nuc", "ref_nuldl"])]
    ref_nuw: Option<f64>,
    #[arg(long, requires_all = ["ref_nuw", "ref_nuldl"])]
    ref_nuc: Option<f64>,
    #[arg(long, requires_all = ["ref_nuw", "ref_nuc"])]
    ref_nuldl: Option<f64>,
}

impl RefArgs {
    fn reference(&self) -> Result<ReferenceStats, Error> {
        match (self.ref_nuw, self.ref_nuc, self.ref_nuldl) {
            (Some(w), Some(c), Some(l)) => ReferenceStats::new(w, c, l),
            _ => Ok(INDUSTRY_REFERENCE),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ParserKind {
    Tree,
    TokenFrequency,
}

#[derive(Debug, Args)]
struct ParserArgs {
    #[arg(long, value_enum, default_value_t = ParserKind::Tree)]
    parser: ParserKind,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Similarity threshold of the tree parser.
    #[arg(long, default_value_t = 0.4)]
    st: f64,
    #[arg(long, default_value_t = 100)]
    max_children: usize,
    /// Frequency ratio of the token-frequency parser.
    #[arg(long, default_value_t = 0.6)]
    threshold: f64,
    /// Regex whose matches are masked as `<*>` before tokenizing; repeatable.
    #[arg(long)]
    mask: Vec<String>,
}

impl ParserArgs {
    fn config(&self) -> ParserConfig {
        match self.parser {
            ParserKind::Tree => ParserConfig::Tree(TreeConfig {
                depth: self.depth,
                similarity_threshold: self.st,
                max_children: self.max_children,
                masks: self.mask.clone(),
            }),
            ParserKind::TokenFrequency => ParserConfig::TokenFrequency(TokenFrequencyConfig {
                threshold: self.threshold,
                masks: self.mask.clone(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Labeled,
    Parsed,
}

enum Failure {
    Usage(String),
    Data(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.root() {
            Error::Config(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = std::panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("unexpected internal failure".into())));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_dataset(path: &Path) -> Result<Dataset, Error> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        load_structured(path)
    } else {
        load_raw(path)
    }
}

fn need_seed(cli: &Cli) -> CliResult<u64> {
    cli.seed
        .ok_or_else(|| Failure::Usage("this command needs --seed".into()))
}

fn need_out(cli: &Cli) -> CliResult<&Path> {
    cli.out
        .as_deref()
        .ok_or_else(|| Failure::Usage("this command needs --out".into()))
}

fn need_files(files: &[PathBuf]) -> CliResult<()> {
    if files.is_empty() {
        return Err(Failure::Usage("no input files given".into()));
    }
    Ok(())
}

fn load_all(files: &[PathBuf]) -> CliResult<Vec<Dataset>> {
    need_files(files)?;
    Ok(files
        .iter()
        .map(|f| load_dataset(f))
        .collect::<Result<Vec<_>, _>>()?)
}

fn write_meta(out: &Path, meta: &Value) -> CliResult<()> {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    let text = serde_json::to_string_pretty(meta).map_err(|e| Failure::Internal(e.to_string()))?;
    std::fs::write(&name, text + "\n").map_err(|e| {
        Failure::Data(Error::Format(format!("{}: {e}", PathBuf::from(&name).display())))
    })
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Stats { files } => {
            let rows = load_all(files)?
                .iter()
                .map(|ds| {
                    let templates = template_frequency_map(ds).ok().map(|m| m.len());
                    Ok(json!({
                        "name": ds.name,
                        "records": ds.len(),
                        "labeled": ds.is_labeled(),
                        "templates": templates,
                        "stats": proxy_stats(ds)?,
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            output::emit(cli, &Value::Array(rows))
        }
        Command::Heterogeneity {
            files,
            builtin_stats,
            reference,
        } => {
            let reference = reference.reference()?;
            let rows = if *builtin_stats {
                KNOWN_DATASET_STATS
                    .iter()
                    .map(|(name, stats)| {
                        Ok(json!({ "name": name, "stats": stats, "score": h_score(stats, &reference)? }))
                    })
                    .collect::<Result<Vec<_>, Error>>()?
            } else {
                load_all(files)?
                    .iter()
                    .map(|ds| {
                        let (stats, score) = dataset_h(ds, &reference)?;
                        Ok(json!({ "name": ds.name, "stats": stats, "score": score }))
                    })
                    .collect::<Result<Vec<_>, Error>>()?
            };
            output::emit(cli, &json!({ "reference": reference, "datasets": rows }))
        }
        Command::Pool {
            action: PoolAction::Build {
                outlier_fraction,
                files,
            },
        } => {
            let out = need_out(cli)?;
            let datasets = load_all(files)?;
            let outliers = build_outlier_pool(&datasets, *outlier_fraction)?;
            let (variables, skipped) = build_variable_pool(&datasets)?;
            save_pools(out, &outliers, &variables)?;
            output::emit_summary(
                cli,
                &json!({
                    "outlier_entries": outliers.len(),
                    "variable_values": variables.len(),
                    "outlier_sha256": outliers.digest()?,
                    "variable_sha256": variables.digest(),
                    "unaligned_records": skipped.skipped,
                    "unaligned_examples": skipped.examples,
                }),
            )
        }
        Command::Mix {
            strength,
            pool,
            input,
            parsed,
            keep_source,
        } => {
            let seed = need_seed(cli)?;
            let out = need_out(cli)?;
            let ds = load_dataset(input)?;
            let pool_file = if pool.is_dir() { pool.join(OUTLIER_POOL_FILE) } else { pool.clone() };
            let pool = OutlierPool::load(&pool_file)?;
            let cfg = MixConfig {
                strength: *strength,
                seed,
                exclude_source: !keep_source,
            };
            let mixed = match parsed {
                Some(p) => mix_with_parser_labels(&ds, &load_parse_result(p, ds.len())?, &pool, &cfg)?,
                None => mix(&ds, &pool, &cfg)?,
            };
            write_dataset(&mixed, out)?;
            let meta = json!({
                "operation": "mix",
                "input": input,
                "seed": seed,
                "strength": strength,
                "exclude_source": !keep_source,
                "replaced": replacement_count(ds.len(), *strength),
                "outlier_pool_sha256": pool.digest()?,
            });
            write_meta(out, &meta)?;
            output::emit_summary(cli, &meta)
        }
        Command::Fuzz {
            mode,
            vpool,
            input,
            parsed,
        } => {
            let seed = need_seed(cli)?;
            let out = need_out(cli)?;
            let ds = load_dataset(input)?;
            let vpool = VariablePool::load(vpool)?;
            let (mode, parsed) = match (mode, parsed) {
                (ModeArg::Labeled, _) => (FuzzMode::Labeled, None),
                (ModeArg::Parsed, Some(p)) => (FuzzMode::ParserDriven, Some(load_parse_result(p, ds.len())?)),
                (ModeArg::Parsed, None) => {
                    return Err(Failure::Usage("--mode parsed needs --parsed".into()))
                }
            };
            let fuzzed = fuzz(&ds, &vpool, &FuzzConfig { seed, mode }, parsed.as_ref())?;
            write_dataset(&fuzzed.dataset, out)?;
            let meta = json!({
                "operation": "fuzz",
                "input": input,
                "seed": seed,
                "mode": mode,
                "skipped": fuzzed.skipped.skipped,
                "skipped_examples": fuzzed.skipped.examples,
                "variable_pool_sha256": vpool.digest(),
            });
            write_meta(out, &meta)?;
            output::emit_summary(cli, &meta)
        }
        Command::Parse { parser, input } => {
            let out = need_out(cli)?;
            let ds = load_dataset(input)?;
            let cfg = parser.config();
            let result = parse(&ds, &cfg)?;
            save_parse_result(&result, out)?;
            let distinct: std::collections::BTreeSet<_> = result.templates.iter().collect();
            output::emit_summary(
                cli,
                &json!({ "parser": cfg.label(), "records": result.len(), "templates": distinct.len() }),
            )
        }
        Command::Combine { size, files } => {
            let seed = need_seed(cli)?;
            let out = need_out(cli)?;
            let datasets = load_all(files)?;
            let combined = build_combined_dataset(&datasets, *size, seed)?;
            write_dataset(&combined, out)?;
            let meta = json!({
                "operation": "combine",
                "inputs": files,
                "seed": seed,
                "size": size,
            });
            write_meta(out, &meta)?;
            output::emit_summary(cli, &meta)
        }
        Command::Evaluate {
            input,
            parsed,
            parser,
        } => {
            let ds = load_dataset(input)?;
            let truth = ParseResult::from_ground_truth(&ds)?;
            let (label, predicted) = match parsed {
                Some(p) => (p.display().to_string(), load_parse_result(p, ds.len())?),
                None => {
                    let cfg = parser.config();
                    (cfg.label(), parse(&ds, &cfg)?)
                }
            };
            let report = MetricReport::compute(&predicted, &truth)?;
            output::emit(
                cli,
                &json!({ "dataset": ds.name, "parser": label, "records": ds.len(), "metrics": report }),
            )
        }
        Command::Generate { system, lines } => {
            let seed = need_seed(cli)?;
            let out = need_out(cli)?;
            let systems = SyntheticSystem::all();
            let sys = systems.iter().find(|s| s.name == system).ok_or_else(|| {
                let names: Vec<_> = systems.iter().map(|s| s.name).collect();
                Failure::Usage(format!("unknown system {system:?}; known: {}", names.join(", ")))
            })?;
            let ds = sys.generate(*lines, seed)?;
            write_dataset(&ds, out)?;
            output::emit_summary(
                cli,
                &json!({ "system": sys.name, "records": ds.len(), "seed": seed }),
            )
        }
        Command::Benchmark {
            plan,
            workers,
            runs,
            no_timings,
        } => {
            let mut plan = ExperimentPlan::load(plan)?;
            if let Some(seed) = cli.seed {
                plan.base_seed = seed;
            }
            if let Some(w) = workers {
                plan.workers = Some(*w);
            }
            if let Some(r) = runs {
                plan.runs = *r;
            }
            let report = run_experiment(&plan)?;
            let json = if *no_timings {
                report.deterministic_json()?
            } else {
                report.to_json()?
            };
            output::emit_json_text(cli, &json)
        }
    }
}
