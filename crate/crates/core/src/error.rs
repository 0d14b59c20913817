use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("variable identifiers must be non-empty")]
    EmptyVariableName,

    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),

    #[error("invalid triplet: {0}")]
    InvalidTriplet(String),

    #[error("invalid variable sets: {0}")]
    InvalidSets(String),

    #[error("universe has {actual} variables, limit for this operation is {limit}")]
    UniverseTooLarge { actual: usize, limit: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("conditioning covariance block is numerically singular (condition estimate {0:e})")]
    SingularConditioning(f64),

    #[error("evidence {variable} = {value} has zero probability")]
    ZeroProbabilityEvidence { variable: String, value: usize },

    #[error("invalid construction order: {0}")]
    InvalidOrder(String),

    #[error("invalid DAG: {0}")]
    InvalidDag(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid hypothesis cover: {0}")]
    InvalidCover(String),

    #[error("operation not supported by the {0} backend")]
    UnsupportedBackend(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
