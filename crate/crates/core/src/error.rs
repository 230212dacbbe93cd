//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no default modulus for p^k = {0} (limit 729); supply one explicitly")]
    ModulusTableRange(u64),
    #[error("modulus is not a monic irreducible of the requested degree")]
    BadModulus,
    #[error("order of zero undefined")]
    ZeroOrder,
    #[error("height of zero undefined")]
    ZeroHeight,
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant field too small{}", smallest_sufficient_k.map(|k| format!("; smallest sufficient extension degree k = {k}")).unwrap_or_default())]
    FieldTooSmall { smallest_sufficient_k: Option<u64> },
    #[error("degenerate constants: b = b'")]
    DegenerateConstants,
    #[error("empty constant set")]
    EmptyConstantSet,
    #[error("template requires characteristic {expected}, field has {got}")]
    WrongCharacteristic { expected: String, got: u64 },
    #[error("{0} collides with a constant shift")]
    ConstantCollision(String),
    #[error("vanishing denominator: {0}")]
    VanishingDenominator(String),
    #[error("assignment does not cover unknown `{0}`")]
    MissingUnknown(String),
    #[error("assignment has extraneous unknown `{0}`")]
    ExtraneousUnknown(String),
    #[error("unknown `{0}` is not declared by the system")]
    UndeclaredUnknown(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported extension degree q = {0} (only 2 and 3)")]
    UnsupportedQ(u64),
    #[error("tower step is reducible: {0}")]
    ReducibleTower(String),
    #[error("cannot decide irreducibility of tower step: {0}")]
    IrreducibilityUnknown(String),
    #[error("no admissible tower constant `a` exists in the constant field")]
    NoTowerConstant,
    #[error("constant field has no primitive {0}-th root of unity")]
    NoRootOfUnity(u64),
    #[error("singular linear system: repeated conjugate")]
    SingularSystem,
    #[error("mixed fields: {0}")]
    FieldMismatch(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
