//! Condorcet-cycle search with tolerance voting.
//!
//! Every 3-element subset of a metric pool is examined on the models that
//! are fully observed for those three metrics. A metric votes on a pair only
//! when the oriented scores differ by more than the tolerance; `a` beats `b`
//! when it collects strictly more votes than `b`. Each 3-cycle found is
//! reported with a buffer: for each of its three wins the smallest score gap
//! among the supporting metrics, minimised over the wins.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelId;
use crate::profile::complete_models;
use crate::table::ScoreTable;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vote {
    PreferFirst,
    PreferSecond,
    Abstain,
}

fn vote_on_gap(gap: f64, tol: f64) -> Vote {
    if gap > tol {
        Vote::PreferFirst
    } else if -gap > tol {
        Vote::PreferSecond
    } else {
        Vote::Abstain
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

pub fn tolerant_vote(
    table: &ScoreTable,
    dataset: &str,
    metric: &str,
    first: &str,
    second: &str,
    tol: f64,
) -> Result<Vote> {
    check_tolerance(tol)?;
    let a = table.require_score(dataset, first, metric)?;
    let b = table.require_score(dataset, second, metric)?;
    Ok(vote_on_gap(a - b, tol))
}

/// A 3-cycle `cycle[0]` beats `cycle[1]` beats `cycle[2]` beats `cycle[0]`,
/// rotated so the smallest identifier comes first.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleWitness {
    pub dataset: String,
    pub metrics: [String; 3],
    pub cycle: [ModelId; 3],
    pub buffer: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CycleSearch {
    /// Ordered by metric triple (pool order), then by cycle identifiers.
    pub witnesses: Vec<CycleWitness>,
}

impl CycleSearch {
    /// Witness with the largest buffer; the earliest one on ties.
    pub fn most_robust(&self) -> Option<&CycleWitness> {
        self.witnesses
            .iter()
            .fold(None, |best: Option<&CycleWitness>, w| match best {
                Some(b) if b.buffer >= w.buffer => Some(b),
                _ => Some(w),
            })
    }

    pub fn is_cyclic(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Pairwise outcome: `Some(gap)` when the row model beats the column model,
/// with the smallest supporting gap.
struct Duel {
    k: usize,
    wins: Vec<Option<f64>>,
}

impl Duel {
    fn beats(&self, a: usize, b: usize) -> Option<f64> {
        self.wins[a * self.k + b]
    }
}

fn duel(scores: &[[f64; 3]], tol: f64) -> Duel {
    let k = scores.len();
    let mut wins = vec![None; k * k];
    for a in 0..k {
        for b in a + 1..k {
            let (mut for_a, mut for_b) = (0usize, 0usize);
            let (mut gap_a, mut gap_b) = (f64::INFINITY, f64::INFINITY);
            for m in 0..3 {
                let gap = scores[a][m] - scores[b][m];
                match vote_on_gap(gap, tol) {
                    Vote::PreferFirst => {
                        for_a += 1;
                        gap_a = gap_a.min(gap);
                    }
                    Vote::PreferSecond => {
                        for_b += 1;
                        gap_b = gap_b.min(-gap);
                    }
                    Vote::Abstain => {}
                }
            }
            if for_a > for_b {
                wins[a * k + b] = Some(gap_a);
            } else if for_b > for_a {
                wins[b * k + a] = Some(gap_b);
            }
        }
    }
    Duel { k, wins }
}

pub fn find_cycles<S: AsRef<str> + Sync>(
    table: &ScoreTable,
    dataset: &str,
    pool: &[S],
    tol: f64,
) -> Result<CycleSearch> {
    check_tolerance(tol)?;
    if pool.len() < 3 {
        return Err(Error::TooFewMetrics {
            needed: 3,
            got: pool.len(),
        });
    }
    for m in pool {
        table.require_metric(m.as_ref())?;
    }
    let n = pool.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                triples.push([i, j, l]);
            }
        }
    }
    let per_triple: Vec<Vec<CycleWitness>> = triples
        .par_iter()
        .map(|&[i, j, l]| {
            let metrics = [pool[i].as_ref(), pool[j].as_ref(), pool[l].as_ref()];
            cycles_for_triple(table, dataset, metrics, tol)
        })
        .collect();
    Ok(CycleSearch {
        witnesses: per_triple.into_iter().flatten().collect(),
    })
}

fn cycles_for_triple(
    table: &ScoreTable,
    dataset: &str,
    metrics: [&str; 3],
    tol: f64,
) -> Vec<CycleWitness> {
    let models = complete_models(table, dataset, &metrics);
    let k = models.len();
    if k < 3 {
        return Vec::new();
    }
    let scores: Vec<[f64; 3]> = models
        .iter()
        .map(|m| {
            metrics.map(|metric| {
                table
                    .score(dataset, m.as_str(), metric)
                    .expect("complete model has every score")
            })
        })
        .collect();
    let duel = duel(&scores, tol);
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                // a is the smallest identifier, so these two orientations
                // are already canonical rotations
                for [x, y, z] in [[a, b, c], [a, c, b]] {
                    if let (Some(g1), Some(g2), Some(g3)) =
                        (duel.beats(x, y), duel.beats(y, z), duel.beats(z, x))
                    {
                        out.push(CycleWitness {
                            dataset: dataset.to_string(),
                            metrics: metrics.map(str::to_string),
                            cycle: [x, y, z].map(|m| models.get(m).clone()),
                            buffer: g1.min(g2).min(g3),
                        });
                    }
                }
            }
        }
    }
    out
}
