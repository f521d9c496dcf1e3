use thiserror::Error;

/// Everything that can go wrong in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context parameters n = {n}, s = {s}: need n >= 2 and s >= 1")]
    InvalidContext { n: usize, s: usize },

    #[error("tuple has {got} entries but d = {expected}")]
    TupleLength { expected: usize, got: usize },

    #[error("tuple is not strictly increasing: entry {position} is {prev}, entry {} is {next}", position + 1)]
    NotIncreasing { position: usize, prev: usize, next: usize },

    #[error("tuple entry {value} at position {position} lies outside [1, {max}]")]
    OutOfRange { position: usize, value: usize, max: usize },

    #[error("tuple is not u-fixed: {value} is present but {missing} = {value} + n is not")]
    NotClosed { value: usize, missing: usize },

    #[error("length vector has {got} entries but n = {expected}")]
    LengthCount { expected: usize, got: usize },

    #[error("length vector sums to {sum} but d = {d}")]
    LengthSum { sum: usize, d: usize },

    #[error("points belong to different contexts ({left} vs {right})")]
    ContextMismatch { left: String, right: String },

    #[error("{x} is not below {w} in the Bruhat order")]
    NotComparable { x: String, w: String },

    #[error("residues {a} and {b} coincide mod n")]
    SameResidue { a: usize, b: usize },

    #[error("index {index} is outside [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("exchanging residues {a} and {b} fixes the point")]
    IdentityExchange { a: usize, b: usize },

    #[error("reflection {0} does not move the point")]
    ReflectionFixesPoint(String),

    #[error("reflection {0} is not defined at the point")]
    ReflectionUndefined(String),

    #[error("root {0} does not define a real tangent at the point")]
    RootNotDefined(String),

    #[error("kappa index {c} outside [0, {d}]")]
    KappaRange { c: usize, d: usize },

    #[error("{0} does not consist of one string")]
    NotOneString(String),

    #[error("critical index {c} is below 2, so the variety is smooth and phi is undefined")]
    CriticalIndexTooSmall { c: usize },

    #[error("{0} is not P-stable")]
    NotPStable(String),

    #[error("{0} is one-string; use the exact one-string tangent computation")]
    ExactRouteAvailable(String),

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("certificate unavailable: {0}")]
    CertificateUnavailable(String),

    #[error("malformed tuple: {0}")]
    MalformedTuple(String),

    #[error("context has {count} points, above the bound {bound}")]
    ResourceBound { count: u128, bound: u128 },

    #[error("arithmetic overflow in exact elimination")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
