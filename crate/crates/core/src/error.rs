use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid triangulation: {0}")]
    Invalid(String),
    #[error("edge reversal")]
    EdgeReversal,
    #[error("already orientable")]
    AlreadyOrientable,
    #[error("non-orientable link")]
    NonOrientableLink,
    #[error("orientable link")]
    OrientableLink,
    #[error("not in C(T)")]
    NotInC,
    #[error("N not in Q(T)")]
    NotInQ,
    #[error("not admissible")]
    NotAdmissible,
    #[error("not integral")]
    NotIntegral,
    #[error("incompatible supports")]
    IncompatibleSupports,
    #[error("positive-χ link spin at vertex {0}")]
    PositiveChiSpin(usize),
    #[error("non-torus link at vertex {0}")]
    NonTorusLink(usize),
    #[error("degenerate framing")]
    DegenerateFraming,
    #[error("non-orientable: apply double_cover first")]
    NonOrientable,
    #[error("zero vector")]
    ZeroVector,
    #[error("wrong length: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("curve is not a closed dual cycle: {0}")]
    BadCurve(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
