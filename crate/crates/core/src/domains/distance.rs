use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::StrictRanking;

/// Number of model pairs the two rankings order differently (Kendall tau
/// distance), via merge-sort inversion counting.
pub fn swap_distance(r1: &StrictRanking, r2: &StrictRanking) -> Result<usize> {
    if r1.models() != r2.models() {
        return Err(Error::ModelSetMismatch);
    }
    // r2's order written in r1's positions; its inversions are the disagreements
    let mut seq: Vec<usize> = r2.sequence().iter().map(|&m| r1.position(m)).collect();
    let mut scratch = vec![0; seq.len()];
    Ok(count_inversions(&mut seq, &mut scratch))
}

fn count_inversions(v: &mut [usize], scratch: &mut [usize]) -> usize {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = v.split_at_mut(mid);
        count_inversions(left, &mut scratch[..mid]) + count_inversions(right, &mut scratch[mid..])
    };
    let (mut i, mut j, mut out) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            scratch[out] = v[i];
            i += 1;
        } else {
            scratch[out] = v[j];
            count += mid - i;
            j += 1;
        }
        out += 1;
    }
    scratch[out..out + mid - i].copy_from_slice(&v[i..mid]);
    out += mid - i;
    scratch[out..out + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceDegree {
    /// Largest swap distance between two rankings of the profile.
    pub degree: usize,
    /// First metric pair `(i, j)`, `i < j`, attaining it.
    pub pair: (usize, usize),
}

impl DistanceDegree {
    /// Whether the profile is distance-restricted to degree `p`.
    pub fn within(&self, p: usize) -> bool {
        self.degree <= p
    }
}

pub fn distance_degree(profile: &Profile) -> Result<DistanceDegree> {
    let rankings = profile.rankings();
    if rankings.len() < 2 {
        return Err(Error::TooFewMetrics {
            needed: 2,
            got: rankings.len(),
        });
    }
    let mut best = DistanceDegree {
        degree: 0,
        pair: (0, 1),
    };
    for i in 0..rankings.len() {
        for j in i + 1..rankings.len() {
            let d = swap_distance(&rankings[i], &rankings[j])?;
            if d > best.degree {
                best = DistanceDegree { degree: d, pair: (i, j) };
            }
        }
    }
    Ok(best)
}
