use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use benchvote::{
    build_table, deduplicate, emit_report, ingest, run_suite, Analyses, CliError, ConfigFile,
    InputFormat, Overrides, ReportFormat, SuiteConfig, CONFIG_ENV,
};
use benchvote_core::TieBreakRule;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "benchvote", version, about = "Treat benchmark metrics as voters over models")]
struct Cli {
    /// Suite config (TOML)
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Tie-break rule for equal scores: asc or desc
    #[arg(long, global = true)]
    tie_break: Option<TieBreakRule>,
    /// Score gap a metric must exceed to vote in the cycle search
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Named model set from the config
    #[arg(long, global = true)]
    models: Option<String>,
    /// Named metric set from the config
    #[arg(long, global = true)]
    metrics: Option<String>,
    /// Output format: json, table or plotdata
    #[arg(long, global = true, default_value = "table")]
    format: ReportFormat,
    /// Reject unknown columns, duplicate rows and unknown names instead of warning
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and deduplicate a score file and summarise it
    IngestCheck { input: PathBuf },
    /// Single-peaked, group-separable and distance checks per dataset
    Domains { input: PathBuf },
    /// Majority cycles over the configured metric pool
    Cycles { input: PathBuf },
    /// Average-rank flips when a model is added
    Stability { input: PathBuf },
    /// Deepest ranking across datasets
    Depth { input: PathBuf },
    /// Every analysis
    Report { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(cli: &Cli) -> Result<SuiteConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config(format!("no config given (use --config or set {CONFIG_ENV})")))?;
    let overrides = Overrides {
        model_set: cli.models.clone(),
        metric_set: cli.metrics.clone(),
        tie_break: cli.tie_break,
        tolerance: cli.tolerance,
    };
    SuiteConfig::resolve(&ConfigFile::load(path)?, &overrides)
}

fn write_stdout(bytes: &[u8]) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let (input, analyses) = match &cli.command {
        Command::IngestCheck { input } => return ingest_check(cli, input),
        Command::Domains { input } => (input, Analyses { domains: true, ..Analyses::NONE }),
        Command::Cycles { input } => (input, Analyses { cycles: true, ..Analyses::NONE }),
        Command::Stability { input } => (input, Analyses { flips: true, ..Analyses::NONE }),
        Command::Depth { input } => (input, Analyses { depth: true, ..Analyses::NONE }),
        Command::Report { input } => (input, Analyses::ALL),
    };
    let config = load_config(cli)?;
    let ingested = ingest(input, InputFormat::from_path(input), cli.strict)?;
    let records = deduplicate(&ingested.records);
    let (table, warnings) = build_table(&records, &config, cli.strict)?;
    for w in ingested.warnings.iter().chain(&warnings) {
        eprintln!("warning: {w}");
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Invariant(format!("thread pool: {e}")))?;
    let report = pool.install(|| run_suite(&table, &config, analyses));
    write_stdout(&emit_report(&report, cli.format))?;
    let violations = report.violations();
    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for v in &violations {
            eprintln!("invariant violated: {v}");
        }
        Ok(ExitCode::from(2))
    }
}

#[derive(serde::Serialize)]
struct IngestSummary {
    records: usize,
    deduplicated: usize,
    datasets: usize,
    models: usize,
    metrics: Vec<String>,
    warnings: Vec<String>,
}

fn ingest_check(cli: &Cli, input: &Path) -> Result<ExitCode, CliError> {
    let ingested = ingest(input, InputFormat::from_path(input), cli.strict)?;
    let records = deduplicate(&ingested.records);
    let mut warnings = ingested.warnings.clone();
    if cli.config.is_some() {
        let (_, w) = build_table(&records, &load_config(cli)?, cli.strict)?;
        warnings.extend(w);
    }
    let distinct = |f: fn(&benchvote::RunRecord) -> &str| {
        let mut v: Vec<&str> = records.iter().map(f).collect();
        v.sort_unstable();
        v.dedup();
        v.into_iter().map(str::to_string).collect::<Vec<_>>()
    };
    let summary = IngestSummary {
        records: ingested.records.len(),
        deduplicated: records.len(),
        datasets: distinct(|r| &r.dataset).len(),
        models: distinct(|r| &r.model).len(),
        metrics: distinct(|r| &r.metric),
        warnings,
    };
    let text = match cli.format {
        ReportFormat::Json => serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
        _ => {
            let mut s = format!(
                "{} records, {} after deduplication\n{} datasets, {} models\nmetrics: {}\n",
                summary.records,
                summary.deduplicated,
                summary.datasets,
                summary.models,
                summary.metrics.join(", ")
            );
            for w in &summary.warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            s
        }
    };
    write_stdout(text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}
