//! Condorcet-domain checks: single-peaked, group-separable and
//! distance-restricted profiles.

mod distance;
mod group_separable;
mod single_peaked;

pub use distance::{distance_degree, swap_distance, DistanceDegree};
pub use group_separable::{
    is_group_separable_exhaustive, is_group_separable_recursive, separations_of,
    GroupSeparability, SeparationTree, SubsetVerdict, MAX_EXHAUSTIVE_MODELS,
};
pub use single_peaked::{
    admissible_axes, is_single_peaked, is_single_peaked_on_axis, Axis, MAX_AXIS_MODELS,
};

use crate::error::{Error, Result};
use crate::model::ModelSet;
use crate::profile::Profile;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SinglePeakedness {
    SinglePeaked(Axis),
    NotSinglePeaked,
    /// Too many models for axis enumeration.
    Unchecked { model_count: usize },
}

impl SinglePeakedness {
    pub fn holds(&self) -> Option<bool> {
        match self {
            SinglePeakedness::SinglePeaked(_) => Some(true),
            SinglePeakedness::NotSinglePeaked => Some(false),
            SinglePeakedness::Unchecked { .. } => None,
        }
    }
}

/// Outcome of all three domain checks on one profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainReport {
    pub dataset: String,
    pub models: ModelSet,
    pub single_peaked: SinglePeakedness,
    pub group_separable: GroupSeparability,
    /// `None` for single-metric profiles.
    pub distance: Option<DistanceDegree>,
}

pub fn domain_report(profile: &Profile) -> Result<DomainReport> {
    let single_peaked = match is_single_peaked(profile) {
        Ok(Some(axis)) => SinglePeakedness::SinglePeaked(axis),
        Ok(None) => SinglePeakedness::NotSinglePeaked,
        Err(Error::TooManyModels { count, .. }) => SinglePeakedness::Unchecked { model_count: count },
        Err(e) => return Err(e),
    };
    let group_separable = is_group_separable_recursive(profile)?;
    let distance = if profile.voters() >= 2 {
        Some(distance_degree(profile)?)
    } else {
        None
    };
    Ok(DomainReport {
        dataset: profile.dataset().to_string(),
        models: profile.models().clone(),
        single_peaked,
        group_separable,
        distance,
    })
}

impl DomainReport {
    /// Re-verifies every certificate the report carries.
    pub fn verify(&self, profile: &Profile) -> bool {
        if &self.models != profile.models() {
            return false;
        }
        let axis_ok = match &self.single_peaked {
            SinglePeakedness::SinglePeaked(axis) => profile
                .rankings()
                .iter()
                .all(|r| is_single_peaked_on_axis(r, axis).unwrap_or(false)),
            SinglePeakedness::NotSinglePeaked => true,
            SinglePeakedness::Unchecked { model_count } => *model_count == self.models.len(),
        };
        let tree_ok = match &self.group_separable {
            GroupSeparability::Separable(tree) => tree.verify(profile),
            GroupSeparability::NotSeparable { failing_set } => {
                separations_of(failing_set, profile).is_ok_and(|s| s.is_empty())
            }
        };
        let distance_ok = match self.distance {
            Some(d) => {
                let r = profile.rankings();
                d.pair.0 < d.pair.1
                    && d.pair.1 < r.len()
                    && swap_distance(&r[d.pair.0], &r[d.pair.1]) == Ok(d.degree)
            }
            None => profile.voters() < 2,
        };
        axis_ok && tree_ok && distance_ok
    }
}
