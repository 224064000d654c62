use thiserror::Error;

/// Errors raised by the aggregation and domain-check operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("missing score for model `{model}` on metric `{metric}` in dataset `{dataset}`")]
    MissingScore {
        dataset: String,
        model: String,
        metric: String,
    },
    #[error("non-finite score {value} for model `{model}` on metric `{metric}` in dataset `{dataset}`")]
    NonFiniteScore {
        dataset: String,
        model: String,
        metric: String,
        value: f64,
    },
    #[error("duplicate score for model `{model}` on metric `{metric}` in dataset `{dataset}`")]
    DuplicateScore {
        dataset: String,
        model: String,
        metric: String,
    },
    #[error("metric list is empty")]
    EmptyMetricList,
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("duplicate metric `{0}`")]
    DuplicateMetric(String),
    #[error("duplicate model `{0}`")]
    DuplicateModel(String),
    #[error("identifiers must be non-empty")]
    EmptyIdentifier,
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("invalid model subset: {0}")]
    InvalidSubset(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("rankings are defined over different model sets")]
    ModelSetMismatch,
    #[error("{count} models exceed the limit of {limit}")]
    TooManyModels { count: usize, limit: usize },
    #[error("set of {size} models is too small; at least {min} required")]
    SetTooSmall { size: usize, min: usize },
    #[error("need at least {needed} metrics, got {got}")]
    TooFewMetrics { needed: usize, got: usize },
    #[error("need at least {needed} models, got {got}")]
    TooFewModels { needed: usize, got: usize },
    #[error("tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),
    #[error("model `{0}` is already part of the base set")]
    AddedModelInBase(String),
    #[error("ranking is not a member of the family")]
    MemberNotInFamily,
    #[error("ranking family is empty")]
    EmptyFamily,
    #[error("relation is not a strict total order: {0}")]
    IntransitiveOrTiedInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
