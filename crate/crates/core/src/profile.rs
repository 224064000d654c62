//! Metric-induced rankings and per-dataset preference profiles.

use crate::error::{Error, Result};
use crate::model::{ModelId, ModelSet};
use crate::ranking::{break_ties, StrictRanking, TieBreakRule, WeakRanking};
use crate::table::ScoreTable;

/// One strict ranking per metric, all over the same model set, for one
/// dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    dataset: String,
    metric_names: Vec<String>,
    rankings: Vec<StrictRanking>,
}

impl Profile {
    pub fn new(
        dataset: impl Into<String>,
        metric_names: Vec<String>,
        rankings: Vec<StrictRanking>,
    ) -> Result<Self> {
        if rankings.is_empty() {
            return Err(Error::EmptyMetricList);
        }
        if metric_names.len() != rankings.len() {
            return Err(Error::InvalidProfile(format!(
                "{} metric names for {} rankings",
                metric_names.len(),
                rankings.len()
            )));
        }
        let models = rankings[0].models();
        if rankings.iter().any(|r| r.models() != models) {
            return Err(Error::ModelSetMismatch);
        }
        Ok(Profile {
            dataset: dataset.into(),
            metric_names,
            rankings,
        })
    }

    /// Profile with placeholder metric names `v0`, `v1`, ...
    pub fn from_rankings(rankings: Vec<StrictRanking>) -> Result<Self> {
        let names = (0..rankings.len()).map(|i| format!("v{i}")).collect();
        Self::new("", names, rankings)
    }

    pub fn dataset(&self) -> &str {
        &self.dataset
    }

    pub fn metric_names(&self) -> &[String] {
        &self.metric_names
    }

    pub fn rankings(&self) -> &[StrictRanking] {
        &self.rankings
    }

    pub fn models(&self) -> &ModelSet {
        self.rankings[0].models()
    }

    /// Number of voters (metrics).
    pub fn voters(&self) -> usize {
        self.rankings.len()
    }
}

/// Ranks `models` by their oriented score on `metric`; equal scores share a
/// rank-class.
pub fn induce_weak_ranking(
    table: &ScoreTable,
    dataset: &str,
    metric: &str,
    models: &ModelSet,
) -> Result<WeakRanking> {
    table.require_metric(metric)?;
    let scores = models
        .iter()
        .map(|m| table.require_score(dataset, m.as_str(), metric))
        .collect::<Result<Vec<f64>>>()?;
    let mut distinct = scores.clone();
    distinct.sort_by(|a, b| b.total_cmp(a));
    distinct.dedup();
    let classes = scores
        .iter()
        .map(|s| distinct.partition_point(|d| d > s))
        .collect();
    WeakRanking::from_classes(models.clone(), classes)
}

pub fn build_profile<S: AsRef<str>>(
    table: &ScoreTable,
    dataset: &str,
    metrics: &[S],
    models: &ModelSet,
    rule: TieBreakRule,
) -> Result<Profile> {
    if metrics.is_empty() {
        return Err(Error::EmptyMetricList);
    }
    let rankings = metrics
        .iter()
        .map(|m| {
            induce_weak_ranking(table, dataset, m.as_ref(), models).map(|w| break_ties(&w, rule))
        })
        .collect::<Result<Vec<_>>>()?;
    Profile::new(
        dataset,
        metrics.iter().map(|m| m.as_ref().to_string()).collect(),
        rankings,
    )
}

/// Models scored on every listed metric for `dataset`, in identifier order.
pub fn complete_models<S: AsRef<str>>(table: &ScoreTable, dataset: &str, metrics: &[S]) -> ModelSet {
    let ids: Vec<ModelId> = table
        .models()
        .iter()
        .filter(|m| {
            metrics
                .iter()
                .all(|metric| table.score(dataset, m.as_str(), metric.as_ref()).is_some())
        })
        .cloned()
        .collect();
    ModelSet::from_ids(ids).expect("table models are unique")
}
