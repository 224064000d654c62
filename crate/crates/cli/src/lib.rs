//! Benchmark-suite analysis: ingest score files, build per-dataset metric
//! profiles and report majority coherence, domain restrictions, cycles,
//! average-rank flips and the deepest cross-dataset ranking.

pub mod config;
mod error;
pub mod records;
pub mod report;
pub mod suite;

pub use config::{ConfigFile, Overrides, SuiteConfig, CONFIG_ENV};
pub use error::{CliError, Result};
pub use records::{deduplicate, ingest, ingest_reader, InputFormat, Ingested, RunRecord};
pub use report::{emit_report, ReportFormat, SuiteReport};
pub use suite::{build_table, run_suite, Analyses};
