use thiserror::Error;

/// Errors raised by the arithmetic layer and the factorization engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("ring {0} has no Euclidean division")]
    NotEuclidean(String),
    #[error("ring {0} is not discretely ordered")]
    NotDiscretelyOrdered(String),
    #[error("gcd of two zero elements")]
    BothZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} does not divide {1}")]
    NotDivisible(String, String),
    #[error("matrix is not singular")]
    NotSingular,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("idempotent has a zero entry among x, y, z, 1-x")]
    DegenerateIdempotent,
    #[error("x(1-x) != yz")]
    NotIdempotentPair,
    #[error("a'm + b'n != 1")]
    BadBezoutPair,
    #[error("idempotent descent stalled at ({0}, {1})")]
    DescentStalled(String, String),
    #[error("not integer-valued: coordinate {k} is {value}")]
    NotIntegerValued { k: usize, value: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("curve equation is not monic in Y of full degree")]
    NotMonicInY,
    #[error("a point at infinity is rational (root {0} of the leading form)")]
    PointsAtInfinityRational(String),
    #[error("points at infinity are not all conjugate (leading form has factor {0})")]
    PointsAtInfinityNotConjugate(String),
    #[error("leading form is not squarefree")]
    NotSquarefreeAtInfinity,
    #[error("irreducibility of the leading form could not be decided within the search budget")]
    IrreducibilityUndecided,
    #[error("origin lies on the curve")]
    OriginOnCurve,
    #[error("zero element")]
    ZeroElement,
    #[error("operation requires the curve X^4 + Y^4 + 1")]
    WrongCurve,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name, used in structured error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch { .. } => "RingMismatch",
            Error::NotEuclidean(_) => "NotEuclidean",
            Error::NotDiscretelyOrdered(_) => "NotDiscretelyOrdered",
            Error::BothZero => "BothZero",
            Error::NotAUnit(_) => "NotAUnit",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotDivisible(..) => "NotDivisible",
            Error::NotSingular => "NotSingular",
            Error::NotInvertible => "NotInvertible",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::NotIdempotent => "NotIdempotent",
            Error::DegenerateIdempotent => "DegenerateIdempotent",
            Error::NotIdempotentPair => "NotIdempotentPair",
            Error::BadBezoutPair => "BadBezoutPair",
            Error::DescentStalled(..) => "DescentStalled",
            Error::NotIntegerValued { .. } => "NotIntegerValued",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::NotMonicInY => "NotMonicInY",
            Error::PointsAtInfinityRational(_) => "PointsAtInfinityRational",
            Error::PointsAtInfinityNotConjugate(_) => "PointsAtInfinityNotConjugate",
            Error::NotSquarefreeAtInfinity => "NotSquarefreeAtInfinity",
            Error::IrreducibilityUndecided => "IrreducibilityUndecided",
            Error::OriginOnCurve => "OriginOnCurve",
            Error::ZeroElement => "ZeroElement",
            Error::WrongCurve => "WrongCurve",
            Error::Parse(_) => "Parse",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
