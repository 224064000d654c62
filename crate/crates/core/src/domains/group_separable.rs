use crate::error::{Error, Result};
use crate::profile::Profile;

/// Subsets larger than this are refused by the exhaustive check.
pub const MAX_EXHAUSTIVE_MODELS: usize = 12;

/// Recursive split of the model set; every internal node records the
/// separation that was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationTree {
    /// A set of at most two models.
    Leaf(Vec<usize>),
    Split {
        set: Vec<usize>,
        separation: Box<SeparationTree>,
        rest: Box<SeparationTree>,
    },
}

impl SeparationTree {
    pub fn set(&self) -> Vec<usize> {
        match self {
            SeparationTree::Leaf(s) => s.clone(),
            SeparationTree::Split { set, .. } => set.clone(),
        }
    }

    /// Re-checks the certificate against the profile.
    pub fn verify(&self, profile: &Profile) -> bool {
        let all: Vec<usize> = (0..profile.models().len()).collect();
        self.set() == all && self.verify_node(profile)
    }

    fn verify_node(&self, profile: &Profile) -> bool {
        match self {
            SeparationTree::Leaf(s) => s.len() <= 2,
            SeparationTree::Split {
                set,
                separation,
                rest,
            } => {
                let e = separation.set();
                let r = rest.set();
                let mut union: Vec<usize> = e.iter().chain(&r).copied().collect();
                union.sort_unstable();
                set.len() >= 3
                    && !e.is_empty()
                    && !r.is_empty()
                    && union == *set
                    && is_separation(set, &e, profile)
                    && separation.verify_node(profile)
                    && rest.verify_node(profile)
            }
        }
    }

    /// Number of internal nodes.
    pub fn splits(&self) -> usize {
        match self {
            SeparationTree::Leaf(_) => 0,
            SeparationTree::Split {
                separation, rest, ..
            } => 1 + separation.splits() + rest.splits(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSeparability {
    Separable(SeparationTree),
    /// A visited set (sorted model indices) that admits no separation.
    NotSeparable { failing_set: Vec<usize> },
}

impl GroupSeparability {
    pub fn holds(&self) -> bool {
        matches!(self, GroupSeparability::Separable(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetVerdict {
    AllSeparable,
    /// Smallest failing subset (by size, then lexicographically).
    Fails(Vec<usize>),
}

impl SubsetVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SubsetVerdict::AllSeparable)
    }
}

fn validate_subset(subset: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubset("repeated model index".into()));
    }
    if let Some(&m) = s.iter().find(|&&m| m >= k) {
        return Err(Error::InvalidSubset(format!("model index {m} out of range")));
    }
    Ok(s)
}

/// `e` occupies a top or bottom segment of every ranking restricted to `set`.
fn is_separation(set: &[usize], e: &[usize], profile: &Profile) -> bool {
    let k = profile.models().len();
    let mut inside = vec![false; k];
    for &m in e {
        inside[m] = true;
    }
    profile.rankings().iter().all(|r| {
        let order = r.restricted_to(set);
        let n = e.len();
        order[..n].iter().all(|&m| inside[m]) || order[order.len() - n..].iter().all(|&m| inside[m])
    })
}

/// All non-empty proper subsets `E` of `subset` that every ranking places
/// entirely above or entirely below the rest of `subset`, sorted by size and
/// then lexicographically.
///
/// Candidates are the top and bottom segments of the first ranking; each is
/// kept when it is also a segment of every other ranking.
pub fn separations_of(subset: &[usize], profile: &Profile) -> Result<Vec<Vec<usize>>> {
    let set = validate_subset(subset, profile.models().len())?;
    if set.len() < 3 {
        return Err(Error::SetTooSmall {
            size: set.len(),
            min: 3,
        });
    }
    Ok(separations_unchecked(&set, profile))
}

fn separations_unchecked(set: &[usize], profile: &Profile) -> Vec<Vec<usize>> {
    let order = profile.rankings()[0].restricted_to(set);
    let mut out: Vec<Vec<usize>> = (1..order.len())
        .flat_map(|j| [order[..j].to_vec(), order[j..].to_vec()])
        .map(|mut e| {
            e.sort_unstable();
            e
        })
        .filter(|e| is_separation(set, e, profile))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Repeatedly splits the model set along a separation (smallest, then
/// lexicographically first) until every part has fewer than three models.
pub fn is_group_separable_recursive(profile: &Profile) -> Result<GroupSeparability> {
    let k = profile.models().len();
    if k < 3 {
        return Err(Error::SetTooSmall { size: k, min: 3 });
    }
    let all: Vec<usize> = (0..k).collect();
    Ok(match split(&all, profile) {
        Ok(tree) => GroupSeparability::Separable(tree),
        Err(failing_set) => GroupSeparability::NotSeparable { failing_set },
    })
}

fn split(set: &[usize], profile: &Profile) -> std::result::Result<SeparationTree, Vec<usize>> {
    if set.len() < 3 {
        return Ok(SeparationTree::Leaf(set.to_vec()));
    }
    let Some(e) = separations_unchecked(set, profile).into_iter().next() else {
        return Err(set.to_vec());
    };
    let rest: Vec<usize> = set.iter().copied().filter(|m| !e.contains(m)).collect();
    Ok(SeparationTree::Split {
        set: set.to_vec(),
        separation: Box::new(split(&e, profile)?),
        rest: Box::new(split(&rest, profile)?),
    })
}

/// Checks every subset of at least three models for a separation.
pub fn is_group_separable_exhaustive(profile: &Profile) -> Result<SubsetVerdict> {
    let k = profile.models().len();
    if k < 3 {
        return Err(Error::SetTooSmall { size: k, min: 3 });
    }
    if k > MAX_EXHAUSTIVE_MODELS {
        return Err(Error::TooManyModels {
            count: k,
            limit: MAX_EXHAUSTIVE_MODELS,
        });
    }
    let mut worst: Option<Vec<usize>> = None;
    for mask in 0u32..(1 << k) {
        if mask.count_ones() < 3 {
            continue;
        }
        let set: Vec<usize> = (0..k).filter(|&m| mask & (1 << m) != 0).collect();
        let smaller = worst
            .as_ref()
            .is_none_or(|w| (set.len(), &set) < (w.len(), w));
        if smaller && separations_unchecked(&set, profile).is_empty() {
            worst = Some(set);
        }
    }
    Ok(match worst {
        None => SubsetVerdict::AllSeparable,
        Some(s) => SubsetVerdict::Fails(s),
    })
}
