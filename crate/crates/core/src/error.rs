use thiserror::Error;

/// Why a curve model was rejected by validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvalidReason {
    Inseparable,
    Reducible,
    WrongSingularity,
    NotHoweType,
    DegenerateDiscriminant,
}

impl std::fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InvalidReason::Inseparable => "inseparable",
            InvalidReason::Reducible => "reducible",
            InvalidReason::WrongSingularity => "wrong-singularity",
            InvalidReason::NotHoweType => "not-howe-type",
            InvalidReason::DegenerateDiscriminant => "degenerate-discriminant",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("division by zero")]
    Division,
    #[error("invalid model: {0}")]
    InvalidModel(InvalidReason),
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("invariants unsupported in characteristic {0}")]
    UnsupportedInvariants(u64),
    #[error("resource cap exceeded: {0}")]
    Overload(String),
    #[error("models are not comparable: {0}")]
    NotComparable(String),
    #[error("no seed curve found for p = {0}")]
    SeedFailure(u64),
    #[error("census incomplete: {0}")]
    CensusIncomplete(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
