use thiserror::Error;

/// Errors surfaced by ring construction, arithmetic, and the certificate
/// machinery. Witness data is carried as residue vectors or indices so
/// callers can report exactly which input broke an invariant.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("associativity fails on generator triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("additive order incompatible at generator pair ({0}, {1})")]
    OrderIncompatibility(usize, usize),
    #[error("malformed structure data: {0}")]
    ShapeError(String),
    #[error("element has {got} components, ring has {expected} generators")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation would touch {needed} elements, cap is {cap}")]
    SizeCapExceeded { needed: u128, cap: u128 },
    #[error("the given set is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("Leibniz rule fails on generator pair ({0}, {1})")]
    LeibnizViolation(usize, usize),
    #[error("derivation image of generator {0} violates its additive order")]
    OrderViolation(usize),
    #[error("operands live over different rings or derivations")]
    ContextMismatch,
    #[error("element is not nilpotent with the supplied index {0}")]
    NotNilpotent(usize),
    #[error("quasi-inverse search space exceeds the configured budget ({0})")]
    SearchCapExceeded(u128),
    #[error("identity has arity {expected} but {got} arguments were given")]
    ArityMismatch { expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("element is not a member of the computed core S")]
    NotInS,
    #[error("quasi-inverse construction failed for a member of S[x;D]: {0}")]
    QuasiInverseFailure(String),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
