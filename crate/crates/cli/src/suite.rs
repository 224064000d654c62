//! Builds the score table and runs every analysis over a suite.

use std::collections::BTreeSet;

use benchvote_core::{
    break_ties, build_profile, commonality_sharing, complete_models, domain_report, find_cycles,
    flip_experiment, majority_counts, majority_relation, top_k_among, Error as CoreError,
    GroupSeparability, ModelId, ModelSet, Profile, RankSummary, RankingFamily, RelationMode,
    ScoreTable, SeparationTree, SinglePeakedness,
};
use rayon::prelude::*;

use crate::config::SuiteConfig;
use crate::error::Result;
use crate::records::RunRecord;
use crate::report::*;

/// Fewer complete models than this and a dataset is skipped.
pub const MIN_MODELS: usize = 3;

/// Builds the oriented table restricted to the configured models and the
/// metrics the suite uses. Configured names absent from the data are errors
/// in strict mode and warnings otherwise.
pub fn build_table(records: &[RunRecord], config: &SuiteConfig, strict: bool) -> Result<(ScoreTable, Vec<String>)> {
    let used = config.used_metrics();
    let specs = used
        .iter()
        .map(|m| {
            config
                .metric_specs
                .iter()
                .find(|s| &s.name == m)
                .cloned()
                .ok_or_else(|| CoreError::UnknownMetric(m.clone()))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut table = ScoreTable::new(specs)?;
    let models: Option<BTreeSet<&str>> = config.models.as_ref().map(|m| m.iter().map(String::as_str).collect());
    let mut ignored: BTreeSet<&str> = BTreeSet::new();
    for r in records {
        if !used.contains(&r.metric) {
            if !config.metric_specs.iter().any(|s| s.name == r.metric) {
                ignored.insert(&r.metric);
            }
            continue;
        }
        if models.as_ref().is_some_and(|m| !m.contains(r.model.as_str())) {
            continue;
        }
        table.insert_raw(&r.dataset, &r.model, &r.metric, r.value)?;
    }
    let mut warnings: Vec<String> = ignored
        .into_iter()
        .map(|m| format!("metric `{m}` has no configured orientation; ignored"))
        .collect();
    let seen_metrics: BTreeSet<&str> = records.iter().map(|r| r.metric.as_str()).collect();
    for m in &used {
        if !seen_metrics.contains(m.as_str()) {
            if strict {
                return Err(CoreError::UnknownMetric(m.clone()).into());
            }
            warnings.push(format!("configured metric `{m}` does not occur in the data"));
        }
    }
    if let Some(models) = &config.models {
        let present = table.model_set();
        for m in models {
            if !present.contains(m) {
                if strict {
                    return Err(CoreError::UnknownModel(m.clone()).into());
                }
                warnings.push(format!("configured model `{m}` does not occur in the data"));
            }
        }
    }
    Ok((table, warnings))
}

/// Which analyses to run; the majority relation is always computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Analyses {
    pub domains: bool,
    pub cycles: bool,
    pub flips: bool,
    pub depth: bool,
}

impl Analyses {
    pub const ALL: Analyses = Analyses {
        domains: true,
        cycles: true,
        flips: true,
        depth: true,
    };
    pub const NONE: Analyses = Analyses {
        domains: false,
        cycles: false,
        flips: false,
        depth: false,
    };
}

pub fn run_suite(table: &ScoreTable, config: &SuiteConfig, analyses: Analyses) -> SuiteReport {
    let mut datasets: Vec<&String> = table.datasets().iter().collect();
    datasets.sort();
    let reports: Vec<DatasetReport> = datasets
        .par_iter()
        .map(|d| DatasetReport {
            dataset: d.to_string(),
            outcome: analyze(table, d, config, analyses),
        })
        .collect();
    let counts = SuiteCounts::tally(&reports, analyses.domains, analyses.cycles, analyses.flips);
    let depth = analyses.depth.then(|| depth_section(table, config, &reports));
    SuiteReport {
        config: summary(config),
        datasets: reports,
        counts,
        depth,
    }
}

fn summary(config: &SuiteConfig) -> ConfigSummary {
    ConfigSummary {
        model_set: config.model_set_name.clone(),
        metric_set: config.metric_set_name.clone(),
        metrics: config
            .used_metrics()
            .iter()
            .map(|m| MetricDto {
                name: m.clone(),
                orientation: config
                    .metric_specs
                    .iter()
                    .find(|s| &s.name == m)
                    .map_or(String::new(), |s| s.orientation.to_string()),
            })
            .collect(),
        cycle_pool: config.cycle_pool.clone(),
        flip_metric: config.flip_metric.clone(),
        flip_k: config.flip_k,
        tie_break: config.tie_break.to_string(),
        tolerance: config.tolerance,
    }
}

fn ids(models: &ModelSet, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| models.get(i).to_string()).collect()
}

fn analyzed_models(table: &ScoreTable, dataset: &str, config: &SuiteConfig) -> ModelSet {
    complete_models(table, dataset, &config.metrics)
}

fn analyze(table: &ScoreTable, dataset: &str, config: &SuiteConfig, analyses: Analyses) -> DatasetOutcome {
    let models = analyzed_models(table, dataset, config);
    if models.len() < MIN_MODELS {
        return DatasetOutcome::Skipped {
            reason: format!(
                "{} model(s) with scores on every metric; at least {MIN_MODELS} needed",
                models.len()
            ),
            complete_models: models.len(),
        };
    }
    match analyze_models(table, dataset, config, analyses, &models) {
        Ok(a) => DatasetOutcome::Analyzed(Box::new(a)),
        Err(e) => DatasetOutcome::Failed { reason: e.to_string() },
    }
}

fn analyze_models(
    table: &ScoreTable,
    dataset: &str,
    config: &SuiteConfig,
    analyses: Analyses,
    models: &ModelSet,
) -> std::result::Result<Analysis, CoreError> {
    let profile = build_profile(table, dataset, &config.metrics, models, config.tie_break)?;
    let rankings = profile
        .rankings()
        .iter()
        .zip(profile.metric_names())
        .map(|(r, metric)| MetricColumn {
            metric: metric.clone(),
            entries: r
                .ids()
                .into_iter()
                .map(|m| ScoreEntry {
                    model: m.to_string(),
                    value: table.raw_score(dataset, m.as_str(), metric).expect("complete model"),
                })
                .collect(),
        })
        .collect();
    let mut verified = true;
    let majority = majority_dto(&profile);
    let domains = if analyses.domains {
        let rep = domain_report(&profile)?;
        verified &= rep.verify(&profile);
        Some(domains_dto(&rep, &profile))
    } else {
        None
    };
    let cycles = if analyses.cycles {
        let dto = cycles_dto(table, dataset, config)?;
        verified &= dto.witnesses.iter().all(|w| w.buffer > config.tolerance);
        Some(dto)
    } else {
        None
    };
    let flips = if analyses.flips {
        Some(flips_dto(table, dataset, config)?)
    } else {
        None
    };
    Ok(Analysis {
        models: models.iter().map(|m| m.to_string()).collect(),
        rankings,
        majority,
        domains,
        cycles,
        flips,
        verified,
    })
}

fn majority_dto(profile: &Profile) -> MajorityDto {
    let counts = majority_counts(profile);
    let weak = majority_relation(&counts, RelationMode::Weak);
    let strict = majority_relation(&counts, RelationMode::Strict);
    let models = profile.models();
    MajorityDto {
        weak_transitive: weak.is_transitive(),
        strict_transitive: strict.is_transitive(),
        intransitive_triple: weak.intransitive_triple().map(|t| {
            let v = ids(models, &t);
            [v[0].clone(), v[1].clone(), v[2].clone()]
        }),
        order: weak
            .to_weak_ranking()
            .ok()
            .map(|w| w.grouped().iter().map(|class| ids(models, class)).collect()),
    }
}

fn tree_dto(tree: &SeparationTree, models: &ModelSet) -> TreeDto {
    match tree {
        SeparationTree::Leaf(s) => TreeDto {
            models: ids(models, s),
            children: Vec::new(),
        },
        SeparationTree::Split { set, separation, rest } => TreeDto {
            models: ids(models, set),
            children: vec![tree_dto(separation, models), tree_dto(rest, models)],
        },
    }
}

fn domains_dto(rep: &benchvote_core::DomainReport, profile: &Profile) -> DomainsDto {
    let models = profile.models();
    let (separation_tree, failing_set) = match &rep.group_separable {
        GroupSeparability::Separable(t) => (Some(tree_dto(t, models)), None),
        GroupSeparability::NotSeparable { failing_set } => (None, Some(ids(models, failing_set))),
    };
    let names = profile.metric_names();
    DomainsDto {
        single_peaked: rep.single_peaked.holds(),
        axis: match &rep.single_peaked {
            SinglePeakedness::SinglePeaked(axis) => Some(axis.id_strings()),
            _ => None,
        },
        group_separable: rep.group_separable.holds(),
        separation_tree,
        failing_set,
        distance_degree: rep.distance.map(|d| d.degree),
        distance_pair: rep.distance.map(|d| [names[d.pair.0].clone(), names[d.pair.1].clone()]),
    }
}

fn cycles_dto(table: &ScoreTable, dataset: &str, config: &SuiteConfig) -> std::result::Result<CyclesDto, CoreError> {
    if config.cycle_pool.len() < 3 {
        return Ok(CyclesDto {
            note: Some(format!("cycle pool has {} metric(s); at least 3 needed", config.cycle_pool.len())),
            witnesses: Vec::new(),
        });
    }
    let search = find_cycles(table, dataset, &config.cycle_pool, config.tolerance)?;
    Ok(CyclesDto {
        note: None,
        witnesses: search
            .witnesses
            .into_iter()
            .map(|w| WitnessDto {
                metrics: w.metrics,
                cycle: w.cycle.map(|m| m.to_string()),
                buffer: w.buffer,
            })
            .collect(),
    })
}

fn ranked(summary: &RankSummary) -> Vec<RankedDto> {
    let models = summary.models();
    summary
        .order
        .sequence()
        .iter()
        .map(|&m| RankedDto {
            model: models.get(m).to_string(),
            avg_rank: summary.avg_rank[m],
        })
        .collect()
}

/// Top `flip_k` models by the flip metric form the base; every other complete
/// model is tried as the addition.
fn flips_dto(table: &ScoreTable, dataset: &str, config: &SuiteConfig) -> std::result::Result<FlipsDto, CoreError> {
    let mut needed = config.metrics.clone();
    if !needed.contains(&config.flip_metric) {
        needed.push(config.flip_metric.clone());
    }
    let pool = complete_models(table, dataset, &needed);
    if pool.len() <= config.flip_k {
        return Ok(FlipsDto {
            note: Some(format!(
                "{} complete model(s); the experiment needs more than flip_k = {}",
                pool.len(),
                config.flip_k
            )),
            base: Vec::new(),
            before: Vec::new(),
            candidates: 0,
            flipping: Vec::new(),
        });
    }
    let top = top_k_among(table, dataset, &config.flip_metric, &pool, config.flip_k, config.tie_break)?;
    let base = ModelSet::from_ids(top.clone())?;
    let candidates: Vec<&ModelId> = pool.iter().filter(|m| !base.contains(m.as_str())).collect();
    let mut before = None;
    let mut flipping = Vec::new();
    for c in &candidates {
        let rep = flip_experiment(table, dataset, &config.metrics, &base, c, config.tie_break)?;
        if before.is_none() {
            before = Some(ranked(&rep.before));
        }
        if rep.flipped() {
            flipping.push(FlipDto {
                added: c.to_string(),
                after: ranked(&rep.after),
                pairs: rep.flips.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            });
        }
    }
    Ok(FlipsDto {
        note: None,
        base: top.iter().map(|m| m.to_string()).collect(),
        before: before.unwrap_or_default(),
        candidates: candidates.len(),
        flipping,
    })
}

fn depth_section(table: &ScoreTable, config: &SuiteConfig, reports: &[DatasetReport]) -> DepthOutcome {
    let absent = |reason: String| DepthOutcome::Absent { reason };
    if !config.depth {
        return absent("disabled in config".into());
    }
    let analyzed: Vec<(&str, &Analysis)> = reports
        .iter()
        .filter_map(|d| match &d.outcome {
            DatasetOutcome::Analyzed(a) => Some((d.dataset.as_str(), a.as_ref())),
            _ => None,
        })
        .collect();
    if analyzed.is_empty() {
        return absent("no dataset was analyzed".into());
    }
    if let Some((d, _)) = analyzed.iter().find(|(_, a)| !a.majority.weak_transitive) {
        return absent(format!("weak majority relation of `{d}` is intransitive"));
    }
    let mut common: BTreeSet<&str> = analyzed[0].1.models.iter().map(String::as_str).collect();
    for (_, a) in &analyzed[1..] {
        let here: BTreeSet<&str> = a.models.iter().map(String::as_str).collect();
        common = common.intersection(&here).copied().collect();
    }
    if common.len() < 2 {
        return absent(format!("{} model(s) common to all analyzed datasets; at least 2 needed", common.len()));
    }
    let models = ModelSet::new(common).expect("identifiers from the table");
    let mut members = Vec::new();
    let mut tie_broken = Vec::new();
    for (d, _) in &analyzed {
        // restricting a transitive relation keeps it transitive
        let weak = build_profile(table, d, &config.metrics, &models, config.tie_break)
            .map(|p| majority_relation(&majority_counts(&p), RelationMode::Weak))
            .and_then(|rel| rel.to_weak_ranking());
        match weak {
            Ok(w) => {
                tie_broken.push(w.class_count() < models.len());
                members.push((d.to_string(), break_ties(&w, config.tie_break)));
            }
            Err(e) => return absent(format!("dataset `{d}`: {e}")),
        }
    }
    let family = RankingFamily::new(members).expect("non-empty family over one model set");
    let rep = commonality_sharing(&family);
    let ranking_ids = |i: usize| family.members()[i].id_strings();
    let mut deepest: Vec<DeepestDto> = Vec::new();
    for &i in &rep.deepest {
        let ranking = ranking_ids(i);
        let label = family.labels()[i].clone();
        match deepest.iter_mut().find(|x| x.ranking == ranking) {
            Some(x) => x.datasets.push(label),
            None => deepest.push(DeepestDto {
                ranking,
                datasets: vec![label],
            }),
        }
    }
    DepthOutcome::Present(DepthDto {
        models: models.iter().map(|m| m.to_string()).collect(),
        members: (0..family.len())
            .map(|i| MemberDto {
                dataset: family.labels()[i].clone(),
                ranking: ranking_ids(i),
                level: rep.levels[i],
                tie_broken: tie_broken[i],
            })
            .collect(),
        min_level: rep.min_level,
        deepest,
        consensus_pairs: rep
            .consensus_pairs
            .iter()
            .map(|&(a, b)| [models.get(a).to_string(), models.get(b).to_string()])
            .collect(),
    })
}
