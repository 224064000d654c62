//! Suite configuration: metric orientations, named model and metric sets, and
//! analysis parameters.
//!
//! ```toml
//! metric_set = "mix"
//! tolerance = 1e-9
//!
//! [metrics]
//! exact_match = "higher"
//! inference_runtime = "lower"
//!
//! [metric_sets]
//! mix = ["exact_match", "inference_runtime"]
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use benchvote_core::{MetricSpec, Orientation, TieBreakRule, DEFAULT_TOLERANCE};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "BENCHVOTE_CONFIG";

/// The config file as written.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub metrics: BTreeMap<String, String>,
    #[serde(default)]
    pub model_sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub metric_sets: BTreeMap<String, Vec<String>>,
    /// Active model set; all models in the data when absent.
    pub model_set: Option<String>,
    /// Active metric set; every configured metric when absent.
    pub metric_set: Option<String>,
    /// Metric set searched for cycles; defaults to the active set.
    pub cycle_pool: Option<String>,
    /// Metric selecting the flip-experiment base; defaults to the first active metric.
    pub flip_metric: Option<String>,
    pub tie_break: Option<String>,
    pub tolerance: Option<f64>,
    pub flip_k: Option<usize>,
    pub depth: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<ConfigFile> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Command-line settings that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub model_set: Option<String>,
    pub metric_set: Option<String>,
    pub tie_break: Option<TieBreakRule>,
    pub tolerance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Orientation of every metric the suite touches.
    pub metric_specs: Vec<MetricSpec>,
    pub model_set_name: Option<String>,
    /// `None` means every model present in the data.
    pub models: Option<Vec<String>>,
    pub metric_set_name: Option<String>,
    pub metrics: Vec<String>,
    pub cycle_pool: Vec<String>,
    pub flip_metric: String,
    pub tie_break: TieBreakRule,
    pub tolerance: f64,
    pub flip_k: usize,
    pub depth: bool,
}

pub const DEFAULT_FLIP_K: usize = 15;

impl SuiteConfig {
    pub fn resolve(file: &ConfigFile, overrides: &Overrides) -> Result<SuiteConfig> {
        let mut specs = Vec::new();
        for (name, o) in &file.metrics {
            let orientation: Orientation = o
                .parse()
                .map_err(|_| CliError::Config(format!("metric `{name}`: orientation must be \"higher\" or \"lower\", got \"{o}\"")))?;
            specs.push(MetricSpec::new(name.clone(), orientation)?);
        }
        if specs.is_empty() {
            return Err(CliError::Config("no metrics configured".into()));
        }
        let metric_set = |name: &str| -> Result<Vec<String>> {
            let set = file
                .metric_sets
                .get(name)
                .ok_or_else(|| CliError::Config(format!("unknown metric set `{name}`")))?;
            for m in set {
                if !file.metrics.contains_key(m) {
                    return Err(CliError::Config(format!("metric set `{name}` lists `{m}`, which has no orientation")));
                }
            }
            if set.is_empty() {
                return Err(CliError::Config(format!("metric set `{name}` is empty")));
            }
            Ok(set.clone())
        };
        let metric_set_name = overrides.metric_set.clone().or_else(|| file.metric_set.clone());
        let metrics = match &metric_set_name {
            Some(name) => metric_set(name)?,
            None => file.metrics.keys().cloned().collect(),
        };
        let cycle_pool = match &file.cycle_pool {
            Some(name) => metric_set(name)?,
            None => metrics.clone(),
        };
        let model_set_name = overrides.model_set.clone().or_else(|| file.model_set.clone());
        let models = match &model_set_name {
            Some(name) => Some(
                file.model_sets
                    .get(name)
                    .cloned()
                    .ok_or_else(|| CliError::Config(format!("unknown model set `{name}`")))?,
            ),
            None => None,
        };
        let flip_metric = file.flip_metric.clone().unwrap_or_else(|| metrics[0].clone());
        if !file.metrics.contains_key(&flip_metric) {
            return Err(CliError::Config(format!("flip metric `{flip_metric}` has no orientation")));
        }
        let tie_break = match (overrides.tie_break, &file.tie_break) {
            (Some(rule), _) => rule,
            (None, Some(s)) => s
                .parse()
                .map_err(|_| CliError::Config(format!("tie_break must be \"asc\" or \"desc\", got \"{s}\"")))?,
            (None, None) => TieBreakRule::default(),
        };
        let tolerance = overrides.tolerance.or(file.tolerance).unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(CliError::Config(format!("tolerance must be finite and >= 0, got {tolerance}")));
        }
        let flip_k = file.flip_k.unwrap_or(DEFAULT_FLIP_K);
        if flip_k < 2 {
            return Err(CliError::Config(format!("flip_k must be >= 2, got {flip_k}")));
        }
        Ok(SuiteConfig {
            metric_specs: specs,
            model_set_name,
            models,
            metric_set_name,
            metrics,
            cycle_pool,
            flip_metric,
            tie_break,
            tolerance,
            flip_k,
            depth: file.depth.unwrap_or(true),
        })
    }

    /// Metrics referenced by any analysis, in first-use order.
    pub fn used_metrics(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for m in self.metrics.iter().chain(&self.cycle_pool).chain([&self.flip_metric]) {
            if !out.contains(m) {
                out.push(m.clone());
            }
        }
        out
    }
}
