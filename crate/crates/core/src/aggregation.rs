//! Positional aggregation (average rank, winning rate) and the model-addition
//! flip experiment.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{ModelId, ModelSet};
use crate::profile::{build_profile, complete_models, induce_weak_ranking, Profile};
use crate::ranking::{break_ties, StrictRanking, TieBreakRule, WeakRanking};
use crate::table::ScoreTable;

#[derive(Clone, Debug, PartialEq)]
pub struct RankSummary {
    /// Mean 1-based position of each model across the profile.
    pub avg_rank: Vec<f64>,
    /// Ascending average rank, ties broken by the rule.
    pub order: StrictRanking,
}

impl RankSummary {
    pub fn models(&self) -> &ModelSet {
        self.order.models()
    }
}

pub fn average_rank(profile: &Profile, rule: TieBreakRule) -> RankSummary {
    let models = profile.models().clone();
    let k = models.len();
    let mut sums = vec![0usize; k];
    for r in profile.rankings() {
        for (m, &pos) in r.positions().iter().enumerate() {
            sums[m] += pos + 1;
        }
    }
    // integer rank sums order exactly as the averages do
    let mut distinct = sums.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let classes = sums
        .iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect();
    let weak = WeakRanking::from_classes(models, classes).expect("contiguous classes");
    let n = profile.voters() as f64;
    RankSummary {
        avg_rank: sums.iter().map(|&s| s as f64 / n).collect(),
        order: break_ties(&weak, rule),
    }
}

/// Fraction of (dataset, opponent) comparisons on `metric` that each model
/// wins outright; exact ties count for neither side.
pub fn winning_rate<S: AsRef<str>>(
    table: &ScoreTable,
    metric: &str,
    models: &ModelSet,
    datasets: &[S],
) -> Result<BTreeMap<ModelId, f64>> {
    table.require_metric(metric)?;
    if models.len() < 2 {
        return Err(Error::TooFewModels {
            needed: 2,
            got: models.len(),
        });
    }
    let mut wins = vec![0usize; models.len()];
    for d in datasets {
        let scores = models
            .iter()
            .map(|m| table.require_score(d.as_ref(), m.as_str(), metric))
            .collect::<Result<Vec<_>>>()?;
        for (a, sa) in scores.iter().enumerate() {
            wins[a] += scores.iter().filter(|&sb| sa > sb).count();
        }
    }
    let total = (datasets.len() * (models.len() - 1)) as f64;
    Ok(models
        .iter()
        .zip(wins)
        .map(|(m, w)| (m.clone(), if total > 0.0 { w as f64 / total } else { 0.0 }))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlipReport {
    pub dataset: String,
    pub base: ModelSet,
    pub added: ModelId,
    pub before: RankSummary,
    pub after: RankSummary,
    /// Base pairs `(a, b)` with `a` above `b` before and below it after,
    /// listed in before-order.
    pub flips: Vec<(ModelId, ModelId)>,
}

impl FlipReport {
    pub fn flipped(&self) -> bool {
        !self.flips.is_empty()
    }
}

pub fn flip_experiment<S: AsRef<str>>(
    table: &ScoreTable,
    dataset: &str,
    metrics: &[S],
    base: &ModelSet,
    added: &ModelId,
    rule: TieBreakRule,
) -> Result<FlipReport> {
    let extended = base.with(added.clone())?;
    let before = average_rank(&build_profile(table, dataset, metrics, base, rule)?, rule);
    let after = average_rank(&build_profile(table, dataset, metrics, &extended, rule)?, rule);
    let mut flips = Vec::new();
    let seq = before.order.sequence();
    for (i, &a) in seq.iter().enumerate() {
        for &b in &seq[i + 1..] {
            let (ia, ib) = (base.get(a), base.get(b));
            let pa = extended.index_of(ia.as_str()).expect("base model");
            let pb = extended.index_of(ib.as_str()).expect("base model");
            if after.order.prefers(pb, pa) {
                flips.push((ia.clone(), ib.clone()));
            }
        }
    }
    Ok(FlipReport {
        dataset: dataset.to_string(),
        base: base.clone(),
        added: added.clone(),
        before,
        after,
        flips,
    })
}

/// The `k` best of `candidates` on `metric`, in rank order.
pub fn top_k_among(
    table: &ScoreTable,
    dataset: &str,
    metric: &str,
    candidates: &ModelSet,
    k: usize,
    rule: TieBreakRule,
) -> Result<Vec<ModelId>> {
    if k == 0 || candidates.len() < k {
        return Err(Error::TooFewModels {
            needed: k.max(1),
            got: candidates.len(),
        });
    }
    let weak = induce_weak_ranking(table, dataset, metric, candidates)?;
    Ok(break_ties(&weak, rule)
        .ids()
        .into_iter()
        .take(k)
        .cloned()
        .collect())
}

/// The `k` best models on `metric` among those observed on it.
pub fn top_k_by_metric(
    table: &ScoreTable,
    dataset: &str,
    metric: &str,
    k: usize,
    rule: TieBreakRule,
) -> Result<ModelSet> {
    table.require_metric(metric)?;
    let candidates = complete_models(table, dataset, &[metric]);
    let top = top_k_among(table, dataset, metric, &candidates, k, rule)?;
    ModelSet::from_ids(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::MetricSpec;

    #[test]
    fn unanimous_average_rank() {
        let r = StrictRanking::from_order(&["c", "a", "b"]).unwrap();
        let s = average_rank(&Profile::from_rankings(vec![r.clone(); 3]).unwrap(), TieBreakRule::AlphaAsc);
        assert_eq!(s.order, r);
        let c = r.models().index_of("c").unwrap();
        assert_eq!(s.avg_rank[c], 1.0);
        assert_eq!(s.avg_rank.iter().sum::<f64>(), 6.0);
    }

    #[test]
    fn symmetric_pair_uses_tie_break() {
        let m = ModelSet::new(["A", "B"]).unwrap();
        let p = Profile::from_rankings(vec![
            StrictRanking::from_ids(m.clone(), &["A", "B"]).unwrap(),
            StrictRanking::from_ids(m, &["B", "A"]).unwrap(),
        ])
        .unwrap();
        let asc = average_rank(&p, TieBreakRule::AlphaAsc);
        assert_eq!(asc.avg_rank, vec![1.5, 1.5]);
        assert_eq!(asc.order.id_strings(), ["A", "B"]);
        let desc = average_rank(&p, TieBreakRule::AlphaDesc);
        assert_eq!(desc.order.id_strings(), ["B", "A"]);
    }

    fn single_metric(values: &[(&str, &str, f64)]) -> ScoreTable {
        let mut t = ScoreTable::new(vec![MetricSpec::higher("acc").unwrap()]).unwrap();
        for &(d, m, v) in values {
            t.insert_raw(d, m, "acc", v).unwrap();
        }
        t
    }

    #[test]
    fn winning_rates() {
        let t = single_metric(&[
            ("d1", "a", 0.9),
            ("d1", "b", 0.5),
            ("d1", "c", 0.5),
            ("d2", "a", 0.8),
            ("d2", "b", 0.1),
            ("d2", "c", 0.1),
        ]);
        let rates = winning_rate(&t, "acc", &t.model_set(), &["d1", "d2"]).unwrap();
        let get = |m: &str| rates[&ModelId::new(m).unwrap()];
        assert_eq!(get("a"), 1.0);
        assert_eq!(get("b"), 0.0);
        assert_eq!(get("c"), 0.0);
        assert!(matches!(
            winning_rate(&t, "acc", &t.model_set(), &["d3"]),
            Err(Error::MissingScore { .. })
        ));
    }

    #[test]
    fn top_k() {
        let t = single_metric(&[("d", "a", 0.2), ("d", "b", 0.9), ("d", "c", 0.9), ("d", "e", 0.5)]);
        let one = top_k_by_metric(&t, "d", "acc", 1, TieBreakRule::AlphaAsc).unwrap();
        assert_eq!(one.ids()[0].as_str(), "b");
        let one = top_k_by_metric(&t, "d", "acc", 1, TieBreakRule::AlphaDesc).unwrap();
        assert_eq!(one.ids()[0].as_str(), "c");
        assert_eq!(top_k_by_metric(&t, "d", "acc", 4, TieBreakRule::AlphaAsc).unwrap().len(), 4);
        assert_eq!(
            top_k_by_metric(&t, "d", "acc", 5, TieBreakRule::AlphaAsc),
            Err(Error::TooFewModels { needed: 5, got: 4 })
        );
    }

    #[test]
    fn added_model_must_be_new() {
        let t = single_metric(&[("d", "a", 0.2), ("d", "b", 0.9)]);
        let base = t.model_set();
        let err = flip_experiment(&t, "d", &["acc"], &base, &ModelId::new("a").unwrap(), TieBreakRule::AlphaAsc);
        assert_eq!(err.unwrap_err(), Error::AddedModelInBase("a".into()));
    }
}
