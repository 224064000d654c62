use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{ModelId, ModelSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    HigherIsBetter,
    LowerIsBetter,
}

impl Orientation {
    /// Maps a raw value onto the "larger is better" scale.
    pub fn orient(self, raw: f64) -> f64 {
        match self {
            Orientation::HigherIsBetter => raw,
            Orientation::LowerIsBetter => -raw,
        }
    }

    /// Inverse of [`Orientation::orient`].
    pub fn raw(self, oriented: f64) -> f64 {
        self.orient(oriented)
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "higher" => Ok(Orientation::HigherIsBetter),
            "lower" => Ok(Orientation::LowerIsBetter),
            other => Err(format!(
                "unknown orientation `{other}` (expected \"higher\" or \"lower\")"
            )),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::HigherIsBetter => f.write_str("higher"),
            Orientation::LowerIsBetter => f.write_str("lower"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetricSpec {
    pub name: String,
    pub orientation: Orientation,
}

impl MetricSpec {
    pub fn new(name: impl Into<String>, orientation: Orientation) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyIdentifier);
        }
        Ok(MetricSpec { name, orientation })
    }

    pub fn higher(name: impl Into<String>) -> Result<Self> {
        Self::new(name, Orientation::HigherIsBetter)
    }

    pub fn lower(name: impl Into<String>) -> Result<Self> {
        Self::new(name, Orientation::LowerIsBetter)
    }
}

/// Dataset × model × metric scores.
///
/// Values are stored already oriented (larger is better). Missing
/// observations are absent keys.
#[derive(Clone, Debug, Default)]
pub struct ScoreTable {
    datasets: Vec<String>,
    models: Vec<ModelId>,
    metrics: Vec<MetricSpec>,
    dataset_index: HashMap<String, usize>,
    model_index: HashMap<String, usize>,
    metric_index: HashMap<String, usize>,
    scores: HashMap<(usize, usize, usize), f64>,
}

impl ScoreTable {
    pub fn new(metrics: Vec<MetricSpec>) -> Result<Self> {
        let mut metric_index = HashMap::with_capacity(metrics.len());
        for (i, m) in metrics.iter().enumerate() {
            if metric_index.insert(m.name.clone(), i).is_some() {
                return Err(Error::DuplicateMetric(m.name.clone()));
            }
        }
        Ok(ScoreTable {
            metrics,
            metric_index,
            ..Default::default()
        })
    }

    /// Records a raw observation, applying the metric's orientation.
    pub fn insert_raw(&mut self, dataset: &str, model: &str, metric: &str, raw: f64) -> Result<()> {
        let mi = *self
            .metric_index
            .get(metric)
            .ok_or_else(|| Error::UnknownMetric(metric.to_string()))?;
        if !raw.is_finite() {
            return Err(Error::NonFiniteScore {
                dataset: dataset.to_string(),
                model: model.to_string(),
                metric: metric.to_string(),
                value: raw,
            });
        }
        if dataset.is_empty() {
            return Err(Error::EmptyIdentifier);
        }
        let model_id = ModelId::new(model)?;
        let di = match self.dataset_index.get(dataset) {
            Some(&i) => i,
            None => {
                self.datasets.push(dataset.to_string());
                self.dataset_index
                    .insert(dataset.to_string(), self.datasets.len() - 1);
                self.datasets.len() - 1
            }
        };
        let ai = match self.model_index.get(model) {
            Some(&i) => i,
            None => {
                self.models.push(model_id);
                self.model_index.insert(model.to_string(), self.models.len() - 1);
                self.models.len() - 1
            }
        };
        let oriented = self.metrics[mi].orientation.orient(raw);
        if self.scores.insert((di, ai, mi), oriented).is_some() {
            return Err(Error::DuplicateScore {
                dataset: dataset.to_string(),
                model: model.to_string(),
                metric: metric.to_string(),
            });
        }
        Ok(())
    }

    /// Oriented score, or `None` when unobserved.
    pub fn score(&self, dataset: &str, model: &str, metric: &str) -> Option<f64> {
        let di = *self.dataset_index.get(dataset)?;
        let ai = *self.model_index.get(model)?;
        let mi = *self.metric_index.get(metric)?;
        self.scores.get(&(di, ai, mi)).copied()
    }

    pub fn require_score(&self, dataset: &str, model: &str, metric: &str) -> Result<f64> {
        self.require_metric(metric)?;
        self.score(dataset, model, metric)
            .ok_or_else(|| Error::MissingScore {
                dataset: dataset.to_string(),
                model: model.to_string(),
                metric: metric.to_string(),
            })
    }

    /// Score on the metric's original scale.
    pub fn raw_score(&self, dataset: &str, model: &str, metric: &str) -> Option<f64> {
        let spec = self.metric(metric)?;
        self.score(dataset, model, metric)
            .map(|v| spec.orientation.raw(v))
    }

    pub fn datasets(&self) -> &[String] {
        &self.datasets
    }

    /// Models in first-seen order.
    pub fn models(&self) -> &[ModelId] {
        &self.models
    }

    pub fn model_set(&self) -> ModelSet {
        ModelSet::from_ids(self.models.clone()).expect("table models are unique")
    }

    pub fn metrics(&self) -> &[MetricSpec] {
        &self.metrics
    }

    pub fn metric(&self, name: &str) -> Option<&MetricSpec> {
        self.metric_index.get(name).map(|&i| &self.metrics[i])
    }

    pub fn require_metric(&self, name: &str) -> Result<&MetricSpec> {
        self.metric(name)
            .ok_or_else(|| Error::UnknownMetric(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}
