//! Multi-metric benchmark aggregation viewed as voting.
//!
//! Each metric ranks the models on a dataset; the rankings of one dataset
//! form a [`Profile`]. This crate aggregates profiles by pairwise majority,
//! searches for Condorcet cycles, checks whether a profile lies in a
//! Condorcet domain (single-peaked, group-separable, distance-restricted),
//! runs the average-rank instability experiment, and picks the most central
//! ranking of a family of per-dataset rankings by commonality sharing.
//!
//! ```
//! use benchvote_core::{majority_counts, majority_relation, Profile, RelationMode, StrictRanking};
//!
//! let r = |ids: &[&str]| StrictRanking::from_order(ids).unwrap();
//! let profile = Profile::from_rankings(vec![
//!     r(&["x", "y", "z"]),
//!     r(&["y", "z", "x"]),
//!     r(&["z", "x", "y"]),
//! ])
//! .unwrap();
//! let strict = majority_relation(&majority_counts(&profile), RelationMode::Strict);
//! assert!(!strict.is_transitive());
//! ```

pub mod aggregation;
pub mod cycles;
pub mod depth;
pub mod domains;
mod error;
pub mod generators;
pub mod majority;
mod model;
pub mod profile;
mod ranking;
mod table;

pub use aggregation::{
    average_rank, flip_experiment, top_k_among, top_k_by_metric, winning_rate, FlipReport,
    RankSummary,
};
pub use cycles::{find_cycles, tolerant_vote, CycleSearch, CycleWitness, Vote, DEFAULT_TOLERANCE};
pub use depth::{
    commonality_sharing, pair_support, sharing_level, DepthReport, PairSupport, RankingFamily,
};
pub use domains::{
    admissible_axes, distance_degree, domain_report, is_group_separable_exhaustive,
    is_group_separable_recursive, is_single_peaked, is_single_peaked_on_axis, separations_of,
    swap_distance, Axis, DistanceDegree, DomainReport, GroupSeparability, SeparationTree,
    SinglePeakedness, SubsetVerdict,
};
pub use error::{Error, Result};
pub use majority::{majority_counts, majority_relation, MajorityCounts, MajorityRelation, RelationMode};
pub use model::{ModelId, ModelSet};
pub use profile::{build_profile, complete_models, induce_weak_ranking, Profile};
pub use ranking::{break_ties, StrictRanking, TieBreakRule, WeakRanking};
pub use table::{MetricSpec, Orientation, ScoreTable};
