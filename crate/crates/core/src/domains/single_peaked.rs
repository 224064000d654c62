use crate::error::{Error, Result};
use crate::model::ModelSet;
use crate::profile::Profile;
use crate::ranking::StrictRanking;

/// Brute-force axis enumeration is capped at this many models.
pub const MAX_AXIS_MODELS: usize = 10;

/// A left-to-right arrangement of the models; an axis and its reversal are
/// interchangeable certificates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axis(StrictRanking);

impl Axis {
    pub fn from_indices(models: ModelSet, sequence: Vec<usize>) -> Result<Self> {
        StrictRanking::from_indices(models, sequence).map(Axis)
    }

    pub fn from_ids<S: AsRef<str>>(models: ModelSet, ids: &[S]) -> Result<Self> {
        StrictRanking::from_ids(models, ids).map(Axis)
    }

    pub fn models(&self) -> &ModelSet {
        self.0.models()
    }

    pub fn sequence(&self) -> &[usize] {
        self.0.sequence()
    }

    /// Position of each model along the axis.
    pub fn positions(&self) -> &[usize] {
        self.0.positions()
    }

    pub fn id_strings(&self) -> Vec<String> {
        self.0.id_strings()
    }

    pub fn reversed(&self) -> Axis {
        Axis(self.0.reversed())
    }

    /// Representative of the reversal pair: the lexicographically smaller one.
    pub fn canonical(&self) -> Axis {
        let rev = self.reversed();
        if rev.sequence() < self.sequence() {
            rev
        } else {
            self.clone()
        }
    }
}

/// Preference decreases strictly when walking away from the ranking's top
/// model along the axis, on both sides.
pub fn is_single_peaked_on_axis(ranking: &StrictRanking, axis: &Axis) -> Result<bool> {
    if ranking.models() != axis.models() {
        return Err(Error::ModelSetMismatch);
    }
    Ok(peaked(ranking.positions(), axis.sequence(), axis.positions()))
}

fn peaked(rank_pos: &[usize], axis_seq: &[usize], axis_pos: &[usize]) -> bool {
    let Some(peak) = rank_pos.iter().position(|&p| p == 0) else {
        return true;
    };
    let p = axis_pos[peak];
    let left = axis_seq[..p].iter().rev();
    let right = axis_seq[p + 1..].iter();
    descending(rank_pos[peak], left.map(|&m| rank_pos[m]))
        && descending(rank_pos[peak], right.map(|&m| rank_pos[m]))
}

fn descending(start: usize, mut walk: impl Iterator<Item = usize>) -> bool {
    let mut prev = start;
    walk.all(|pos| {
        let ok = pos > prev;
        prev = pos;
        ok
    })
}

fn check_axis_bounds(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::SetTooSmall { size: k, min: 3 });
    }
    if k > MAX_AXIS_MODELS {
        return Err(Error::TooManyModels {
            count: k,
            limit: MAX_AXIS_MODELS,
        });
    }
    Ok(())
}

/// Advances `perm` to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Calls `visit` on every canonical axis (first index smaller than last) on
/// which the whole profile is single-peaked, in lexicographic order. Stops
/// early when `visit` returns false.
fn for_each_admissible(profile: &Profile, mut visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
    let k = profile.models().len();
    check_axis_bounds(k)?;
    let rank_pos: Vec<&[usize]> = profile.rankings().iter().map(|r| r.positions()).collect();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut axis_pos = vec![0; k];
    loop {
        if perm[0] < perm[k - 1] {
            for (i, &m) in perm.iter().enumerate() {
                axis_pos[m] = i;
            }
            if rank_pos.iter().all(|rp| peaked(rp, &perm, &axis_pos)) && !visit(&perm) {
                return Ok(());
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(());
        }
    }
}

/// Every axis (up to reversal) on which all rankings of the profile are
/// single-peaked, lexicographically sorted.
pub fn admissible_axes(profile: &Profile) -> Result<Vec<Axis>> {
    let mut out = Vec::new();
    for_each_admissible(profile, |perm| {
        out.push(perm.to_vec());
        true
    })?;
    let models = profile.models();
    Ok(out
        .into_iter()
        .map(|seq| Axis::from_indices(models.clone(), seq).expect("permutation"))
        .collect())
}

/// Lexicographically smallest admissible axis, if any.
pub fn is_single_peaked(profile: &Profile) -> Result<Option<Axis>> {
    let mut found = None;
    for_each_admissible(profile, |perm| {
        found = Some(perm.to_vec());
        false
    })?;
    Ok(found.map(|seq| Axis::from_indices(profile.models().clone(), seq).expect("permutation")))
}
