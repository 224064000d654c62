//! Commonality sharing: picking the most central ranking of a population of
//! rankings (a generalized Tukey depth).
//!
//! For a member `r` of a family of `N` rankings, its sharing level `k_r` is
//! the smallest `k` such that `r` contains every pair that all members of
//! any size-`k` sub-multiset agree on. A pair `p` that `r` reverses is shared
//! by some size-`k` sub-multiset exactly when `k <= support(p)`, so
//! `k_r = 1 + max { support(p) : r reverses p }` (or 1 when `r` reverses no
//! supported pair). The deepest members minimise `k_r`.

use crate::error::{Error, Result};
use crate::majority::MajorityRelation;
use crate::model::ModelSet;
use crate::ranking::StrictRanking;

/// An ordered population of rankings over one model set, duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingFamily {
    labels: Vec<String>,
    members: Vec<StrictRanking>,
}

impl RankingFamily {
    pub fn new(members: Vec<(String, StrictRanking)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::EmptyFamily);
        };
        let models = first.models().clone();
        if members.iter().any(|(_, r)| r.models() != &models) {
            return Err(Error::ModelSetMismatch);
        }
        let (labels, members) = members.into_iter().unzip();
        Ok(RankingFamily { labels, members })
    }

    pub fn from_rankings(rankings: Vec<StrictRanking>) -> Result<Self> {
        Self::new(
            rankings
                .into_iter()
                .enumerate()
                .map(|(i, r)| (i.to_string(), r))
                .collect(),
        )
    }

    /// Family of aggregate relations; each must be a strict total order.
    pub fn from_relations(relations: Vec<(String, MajorityRelation)>) -> Result<Self> {
        let members = relations
            .into_iter()
            .map(|(label, rel)| {
                rel.to_strict_ranking()
                    .map(|r| (label.clone(), r))
                    .map_err(|e| match e {
                        Error::IntransitiveOrTiedInput(why) => {
                            Error::IntransitiveOrTiedInput(format!("{label}: {why}"))
                        }
                        other => other,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn models(&self) -> &ModelSet {
        self.members[0].models()
    }

    pub fn members(&self) -> &[StrictRanking] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// `get(a, b)` is the number of members ranking `a` above `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSupport {
    k: usize,
    counts: Vec<usize>,
}

impl PairSupport {
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.k + b]
    }
}

pub fn pair_support(family: &RankingFamily) -> PairSupport {
    let k = family.models().len();
    let mut counts = vec![0; k * k];
    for r in family.members() {
        let seq = r.sequence();
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                counts[a * k + b] += 1;
            }
        }
    }
    PairSupport { k, counts }
}

fn level_with(member: &StrictRanking, support: &PairSupport) -> usize {
    let seq = member.sequence();
    let mut worst = 0;
    for (i, &a) in seq.iter().enumerate() {
        for &b in &seq[i + 1..] {
            // member has a over b; the reversed pair is (b, a)
            worst = worst.max(support.get(b, a));
        }
    }
    worst + 1
}

pub fn sharing_level(member: &StrictRanking, family: &RankingFamily) -> Result<usize> {
    if !family.members().contains(member) {
        return Err(Error::MemberNotInFamily);
    }
    Ok(level_with(member, &pair_support(family)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    /// Sharing level of each member, in family order.
    pub levels: Vec<usize>,
    pub min_level: usize,
    /// Indices of the members attaining `min_level`.
    pub deepest: Vec<usize>,
    /// Pairs `(a, b)` supported by at least `min_level` members; every
    /// deepest member ranks `a` above `b`.
    pub consensus_pairs: Vec<(usize, usize)>,
}

pub fn commonality_sharing(family: &RankingFamily) -> DepthReport {
    let support = pair_support(family);
    let levels: Vec<usize> = family
        .members()
        .iter()
        .map(|m| level_with(m, &support))
        .collect();
    let min_level = *levels.iter().min().expect("family is non-empty");
    let deepest = (0..levels.len()).filter(|&i| levels[i] == min_level).collect();
    let k = family.models().len();
    let consensus_pairs = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && support.get(a, b) >= min_level)
        .collect();
    DepthReport {
        levels,
        min_level,
        deepest,
        consensus_pairs,
    }
}
