//! Pairwise majority counts and the weak/strict relations they induce.

use crate::error::{Error, Result};
use crate::model::ModelSet;
use crate::profile::Profile;
use crate::ranking::{StrictRanking, WeakRanking};

/// `count(a, b)` is the number of rankings placing `a` strictly above `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityCounts {
    models: ModelSet,
    voters: usize,
    counts: Vec<usize>,
}

impl MajorityCounts {
    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn count(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.models.len() + b]
    }

    pub fn count_by_id(&self, a: &str, b: &str) -> Option<usize> {
        Some(self.count(self.models.index_of(a)?, self.models.index_of(b)?))
    }
}

pub fn majority_counts(profile: &Profile) -> MajorityCounts {
    let models = profile.models().clone();
    let k = models.len();
    let mut counts = vec![0; k * k];
    for ranking in profile.rankings() {
        let seq = ranking.sequence();
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                counts[a * k + b] += 1;
            }
        }
    }
    MajorityCounts {
        models,
        voters: profile.voters(),
        counts,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationMode {
    /// `a` relates to `b` when it gets at least as many votes.
    Weak,
    /// `a` relates to `b` when it gets strictly more votes.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityRelation {
    models: ModelSet,
    mode: RelationMode,
    holds: Vec<bool>,
}

pub fn majority_relation(counts: &MajorityCounts, mode: RelationMode) -> MajorityRelation {
    MajorityRelation::from_fn(counts.models().clone(), mode, |a, b| {
        let (ab, ba) = (counts.count(a, b), counts.count(b, a));
        match mode {
            RelationMode::Weak => ab >= ba,
            RelationMode::Strict => ab > ba,
        }
    })
}

impl MajorityRelation {
    /// Arbitrary relation; the diagonal is always empty.
    pub fn from_fn(models: ModelSet, mode: RelationMode, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let k = models.len();
        let mut holds = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    holds[a * k + b] = f(a, b);
                }
            }
        }
        MajorityRelation { models, mode, holds }
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn mode(&self) -> RelationMode {
        self.mode
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.holds[a * self.models.len() + b]
    }

    pub fn holds_by_id(&self, a: &str, b: &str) -> Option<bool> {
        Some(self.holds(self.models.index_of(a)?, self.models.index_of(b)?))
    }

    /// First `(a, b, c)` in index order with `a R b`, `b R c` but not `a R c`.
    pub fn intransitive_triple(&self) -> Option<[usize; 3]> {
        let k = self.models.len();
        for a in 0..k {
            for b in (0..k).filter(|&b| b != a && self.holds(a, b)) {
                for c in (0..k).filter(|&c| c != a && c != b && self.holds(b, c)) {
                    if !self.holds(a, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.intransitive_triple().is_none()
    }

    /// First pair related in neither direction.
    pub fn incomparable_pair(&self) -> Option<[usize; 2]> {
        let k = self.models.len();
        for a in 0..k {
            for b in a + 1..k {
                if !self.holds(a, b) && !self.holds(b, a) {
                    return Some([a, b]);
                }
            }
        }
        None
    }

    pub fn is_complete(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    /// Indifference classes of a complete, transitive relation, best first.
    pub fn to_weak_ranking(&self) -> Result<WeakRanking> {
        if let Some([a, b]) = self.incomparable_pair() {
            return Err(Error::IntransitiveOrTiedInput(format!(
                "`{}` and `{}` are incomparable",
                self.models.get(a),
                self.models.get(b)
            )));
        }
        if let Some([a, b, c]) = self.intransitive_triple() {
            return Err(Error::IntransitiveOrTiedInput(format!(
                "cycle through `{}`, `{}`, `{}`",
                self.models.get(a),
                self.models.get(b),
                self.models.get(c)
            )));
        }
        let k = self.models.len();
        // in a total preorder the number of models strictly above is constant
        // on each class and strictly increasing across classes
        let above: Vec<usize> = (0..k)
            .map(|a| (0..k).filter(|&b| self.holds(b, a) && !self.holds(a, b)).count())
            .collect();
        let mut distinct = above.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let classes = above.iter().map(|x| distinct.binary_search(x).expect("present")).collect();
        WeakRanking::from_classes(self.models.clone(), classes)
    }

    /// The strict linear order this relation encodes, if it is one: complete,
    /// transitive and without indifferent pairs.
    pub fn to_strict_ranking(&self) -> Result<StrictRanking> {
        let k = self.models.len();
        if let Some([a, b]) = self.incomparable_pair() {
            return Err(Error::IntransitiveOrTiedInput(format!(
                "`{}` and `{}` are incomparable",
                self.models.get(a),
                self.models.get(b)
            )));
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.holds(a, b) && self.holds(b, a) {
                    return Err(Error::IntransitiveOrTiedInput(format!(
                        "`{}` and `{}` are tied",
                        self.models.get(a),
                        self.models.get(b)
                    )));
                }
            }
        }
        if let Some([a, b, c]) = self.intransitive_triple() {
            return Err(Error::IntransitiveOrTiedInput(format!(
                "cycle through `{}`, `{}`, `{}`",
                self.models.get(a),
                self.models.get(b),
                self.models.get(c)
            )));
        }
        let mut sequence: Vec<usize> = (0..k).collect();
        sequence.sort_by_key(|&a| std::cmp::Reverse((0..k).filter(|&b| self.holds(a, b)).count()));
        StrictRanking::from_indices(self.models.clone(), sequence)
    }
}
