use thiserror::Error;

/// Errors surfaced by constructors and estimators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("empty sample set")]
    EmptySampleSet,

    #[error("not unimodular")]
    NotUnimodular,

    #[error("not a homeomorphism")]
    NotHomeomorphism,

    #[error("full circle has no proper image arc")]
    FullCircleImage,

    #[error("point outside effective support")]
    OutsideSupport,

    #[error("entropy estimate unreliable: {skipped} of {probes} probes skipped")]
    EntropyUnreliable { skipped: usize, probes: usize },

    #[error("generator set must contain at least one generator")]
    NoGenerators,

    #[error("generator weights must be positive")]
    NonPositiveWeight,

    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown scenario `{name}`; available: {catalog}")]
    UnknownScenario { name: String, catalog: String },

    #[error("malformed sample file: {0}")]
    MalformedCsv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
