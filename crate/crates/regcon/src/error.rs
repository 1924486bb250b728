use thiserror::Error;

/// Errors raised across the library. Each variant maps to a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order exceeds the configured bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("relation constituent does not contain the kernel")]
    LiftConstituentMissingN,
    #[error("not a relation: {0}")]
    InvalidRelation(String),
    #[error("pairing degenerate on invariants of subgroup class {0}")]
    DegenerateOnInvariants(usize),
    #[error("representation is not self-dual")]
    NotSelfDual,
    #[error("no non-degenerate invariant pairing found")]
    PairingSearchFailed,
    #[error("could not extract a single irreducible summand")]
    ExtractionFailed,
    #[error("regulator constant unsolvable: {0}")]
    Unsolvable(String),
    #[error("D/I is not cyclic")]
    QuotientNotCyclic,
    #[error("reduction kind does not apply here: {0}")]
    WrongKind(String),
    #[error("missing splitting flag: {0}")]
    MissingFlag(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("table inconsistent: {0}")]
    TableInconsistent(String),
    #[error("cokernel too large: {0}")]
    CokernelTooLarge(String),
    #[error("pairing witness missing or invalid")]
    PairingWitnessMissing,
    #[error("invalid lattice data: {0}")]
    InvalidLattice(String),
    #[error("invalid local setup: {0}")]
    InvalidSetup(String),
    #[error("cannot factor {0}")]
    Factorization(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("property violated: {0}")]
    PropertyViolation(String),
    #[error("character table: {0}")]
    CharacterTable(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::UnknownGroup(_) => "UnknownGroup",
            Error::NotNormal => "NotNormal",
            Error::LiftConstituentMissingN => "LiftConstituentMissingN",
            Error::InvalidRelation(_) => "InvalidRelation",
            Error::DegenerateOnInvariants(_) => "DegenerateOnInvariants",
            Error::NotSelfDual => "NotSelfDual",
            Error::PairingSearchFailed => "PairingSearchFailed",
            Error::ExtractionFailed => "ExtractionFailed",
            Error::Unsolvable(_) => "Unsolvable",
            Error::QuotientNotCyclic => "QuotientNotCyclic",
            Error::WrongKind(_) => "WrongKind",
            Error::MissingFlag(_) => "MissingFlag",
            Error::UnsupportedCase(_) => "UnsupportedCase",
            Error::TableInconsistent(_) => "TableInconsistent",
            Error::CokernelTooLarge(_) => "CokernelTooLarge",
            Error::PairingWitnessMissing => "PairingWitnessMissing",
            Error::InvalidLattice(_) => "InvalidLattice",
            Error::InvalidSetup(_) => "InvalidSetup",
            Error::Factorization(_) => "Factorization",
            Error::Parse { .. } => "Parse",
            Error::PropertyViolation(_) => "PropertyViolation",
            Error::CharacterTable(_) => "CharacterTable",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
