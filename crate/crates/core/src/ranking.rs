use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{ModelId, ModelSet};

/// Deterministic rule for ordering models that share a rank-class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreakRule {
    /// Ascending identifier wins the tie.
    #[default]
    AlphaAsc,
    /// Descending identifier wins the tie.
    AlphaDesc,
}

impl FromStr for TieBreakRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "asc" | "alpha-asc" => Ok(TieBreakRule::AlphaAsc),
            "desc" | "alpha-desc" => Ok(TieBreakRule::AlphaDesc),
            other => Err(format!("unknown tie-break rule `{other}` (expected asc or desc)")),
        }
    }
}

impl fmt::Display for TieBreakRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreakRule::AlphaAsc => f.write_str("asc"),
            TieBreakRule::AlphaDesc => f.write_str("desc"),
        }
    }
}

/// Total preorder over a model set: `classes[m]` is the rank-class of model
/// `m`, 0 being the best class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakRanking {
    models: ModelSet,
    classes: Vec<usize>,
}

impl WeakRanking {
    pub fn from_classes(models: ModelSet, classes: Vec<usize>) -> Result<Self> {
        if classes.len() != models.len() {
            return Err(Error::InvalidRanking(format!(
                "{} rank-classes for {} models",
                classes.len(),
                models.len()
            )));
        }
        let mut used = vec![false; classes.len()];
        for &c in &classes {
            if c >= classes.len() {
                return Err(Error::InvalidRanking(format!("rank-class {c} out of range")));
            }
            used[c] = true;
        }
        let count = used.iter().take_while(|&&u| u).count();
        if used[count..].iter().any(|&u| u) {
            return Err(Error::InvalidRanking(
                "rank-class indices are not contiguous".into(),
            ));
        }
        Ok(WeakRanking { models, classes })
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn class_of(&self, model: usize) -> usize {
        self.classes[model]
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }

    /// Members of each rank-class, best class first, members in index order.
    pub fn grouped(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.class_count()];
        for (m, &c) in self.classes.iter().enumerate() {
            groups[c].push(m);
        }
        groups
    }
}

/// A strict linear order over a model set; position 0 is most preferred.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StrictRanking {
    models: ModelSet,
    sequence: Vec<usize>,
    positions: Vec<usize>,
}

impl StrictRanking {
    pub fn from_indices(models: ModelSet, sequence: Vec<usize>) -> Result<Self> {
        let k = models.len();
        if sequence.len() != k {
            return Err(Error::InvalidRanking(format!(
                "sequence of length {} over {} models",
                sequence.len(),
                k
            )));
        }
        let mut positions = vec![usize::MAX; k];
        for (pos, &m) in sequence.iter().enumerate() {
            if m >= k {
                return Err(Error::InvalidRanking(format!("model index {m} out of range")));
            }
            if positions[m] != usize::MAX {
                return Err(Error::InvalidRanking(format!(
                    "model `{}` appears twice",
                    models.get(m)
                )));
            }
            positions[m] = pos;
        }
        Ok(StrictRanking {
            models,
            sequence,
            positions,
        })
    }

    pub fn from_ids<S: AsRef<str>>(models: ModelSet, ids: &[S]) -> Result<Self> {
        let sequence = ids
            .iter()
            .map(|id| {
                models
                    .index_of(id.as_ref())
                    .ok_or_else(|| Error::UnknownModel(id.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(models, sequence)
    }

    /// Builds the model set from the listed identifiers and ranks them in the
    /// given order.
    pub fn from_order<S: AsRef<str>>(ids: &[S]) -> Result<Self> {
        let models = ModelSet::new(ids.iter().map(|s| s.as_ref().to_string()))?;
        Self::from_ids(models, ids)
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Model indices from most to least preferred.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// `positions()[m]` is the 0-based position of model `m`.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn position(&self, model: usize) -> usize {
        self.positions[model]
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.positions[a] < self.positions[b]
    }

    pub fn top(&self) -> Option<usize> {
        self.sequence.first().copied()
    }

    pub fn ids(&self) -> Vec<&ModelId> {
        self.sequence.iter().map(|&m| self.models.get(m)).collect()
    }

    pub fn id_strings(&self) -> Vec<String> {
        self.sequence
            .iter()
            .map(|&m| self.models.get(m).to_string())
            .collect()
    }

    pub fn reversed(&self) -> StrictRanking {
        let sequence: Vec<usize> = self.sequence.iter().rev().copied().collect();
        StrictRanking::from_indices(self.models.clone(), sequence)
            .expect("reversal of a permutation is a permutation")
    }

    /// The order this ranking induces on `subset` (model indices), best first.
    pub fn restricted_to(&self, subset: &[usize]) -> Vec<usize> {
        let mut out = subset.to_vec();
        out.sort_by_key(|&m| self.positions[m]);
        out
    }
}

impl fmt::Debug for StrictRanking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StrictRanking({self})")
    }
}

impl fmt::Display for StrictRanking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &m) in self.sequence.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{}", self.models.get(m))?;
        }
        Ok(())
    }
}

/// Refines a weak ranking into a strict one; within a rank-class models are
/// ordered by identifier according to `rule`.
pub fn break_ties(weak: &WeakRanking, rule: TieBreakRule) -> StrictRanking {
    let mut sequence: Vec<usize> = (0..weak.models().len()).collect();
    match rule {
        TieBreakRule::AlphaAsc => sequence.sort_by_key(|&m| (weak.class_of(m), m)),
        TieBreakRule::AlphaDesc => {
            sequence.sort_by_key(|&m| (weak.class_of(m), std::cmp::Reverse(m)))
        }
    }
    StrictRanking::from_indices(weak.models().clone(), sequence)
        .expect("sorted index range is a permutation")
}
