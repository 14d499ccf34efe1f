use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the library. Each variant has a stable machine code,
/// see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arity mismatch: polynomial has arity {arity}, class has length {found}")]
    ArityMismatch { arity: usize, found: usize },
    #[error("the zero class has no primitivity")]
    ZeroClass,
    #[error("class is not primitive (coordinate gcd {gcd})")]
    NotPrimitive { gcd: u64 },
    #[error("the zero polynomial has no Newton polytope or roots")]
    ZeroPolynomial,
    #[error("polynomial is a monomial, no root isolation possible")]
    DegreeTooLow,
    #[error("polynomial has no real root strictly greater than 1")]
    NoRootAboveOne,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dual vertex set is not centrally symmetric")]
    NotSymmetric,
    #[error("every dual vertex is zero, the norm is degenerate")]
    DegenerateNorm,
    #[error("cone section is unbounded: dual vertices do not span")]
    UnboundedCone,
    #[error("face {face} carries no polynomial")]
    MissingPolynomial { face: usize },
    #[error("class is not in the open cone over face {face}")]
    NotInCone { face: usize },
    #[error("face {face} is not fibered")]
    NotFibered { face: usize },
    #[error("point is not in the interior of face {face}")]
    NotOnFace { face: usize },
    #[error("symmetry generator {index} is not unimodular (det {det})")]
    NotUnimodular { index: usize, det: String },
    #[error("orbit exceeded {bound} elements; the action looks infinite")]
    OrbitOverflow { bound: usize },
    #[error("invalid fibration pair: {0}")]
    InvalidPair(&'static str),
    #[error("lemma hypothesis unmet: monodromies are not known to be conjugate")]
    HypothesisUnmet,
    #[error("first class vanishes on the fiber kernel of the second")]
    DegenerateKernel,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("malformed decimal {0:?}")]
    BadDecimal(String),
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Shape { .. } => "E_SHAPE",
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::ArityMismatch { .. } => "E_ARITY",
            Error::ZeroClass => "E_ZERO_CLASS",
            Error::NotPrimitive { .. } => "E_NOT_PRIMITIVE",
            Error::ZeroPolynomial => "E_ZERO_POLYNOMIAL",
            Error::DegreeTooLow => "E_DEGREE",
            Error::NoRootAboveOne => "E_NO_ROOT_ABOVE_ONE",
            Error::Unsupported(_) => "E_UNSUPPORTED",
            Error::NotSymmetric => "E_NOT_SYMMETRIC",
            Error::DegenerateNorm => "E_DEGENERATE_NORM",
            Error::UnboundedCone => "E_UNBOUNDED_CONE",
            Error::MissingPolynomial { .. } => "E_MISSING_POLYNOMIAL",
            Error::NotInCone { .. } => "E_NOT_IN_CONE",
            Error::NotFibered { .. } => "E_NOT_FIBERED",
            Error::NotOnFace { .. } => "E_NOT_ON_FACE",
            Error::NotUnimodular { .. } => "E_NOT_UNIMODULAR",
            Error::OrbitOverflow { .. } => "E_ORBIT_OVERFLOW",
            Error::InvalidPair(_) => "E_INVALID_PAIR",
            Error::HypothesisUnmet => "E_HYPOTHESIS_UNMET",
            Error::DegenerateKernel => "E_DEGENERATE_KERNEL",
            Error::InvalidArgument(_) => "E_INVALID_ARGUMENT",
            Error::BadDecimal(_) => "E_BAD_DECIMAL",
            Error::Overflow(_) => "E_OVERFLOW",
        }
    }
}
