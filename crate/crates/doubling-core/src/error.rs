//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different generic rings.
    RingMismatch,
    /// Operands carry different coefficient domains (integer vs prime field).
    DomainMismatch,
    /// No polynomial quotient exists.
    DivisionNotExact,
    /// The argument is not the square of a polynomial.
    NotAPerfectSquare,
    /// An evaluation point does not assign every ring variable.
    MissingAssignment { expected: usize, got: usize },
    /// The matrix is not skew-symmetric.
    NotSkewSymmetric,
    /// Row and column selections of a minor have different sizes.
    NonSquareSelection,
    /// A 1-based index is outside the matrix.
    IndexOutOfBounds { index: u32, bound: u32 },
    /// Combinatorial size guard exceeded (shuffle enumeration).
    ShuffleGuard { size: u32 },
    /// `n` outside the supported range for exact construction.
    UnsupportedN { n: u32 },
    /// A construction invariant failed; names the violated identity.
    ComplexCondition(String),
    /// The lifting identities for the doubling map failed.
    LiftingIdentity(String),
    /// Matrix shapes are not composable.
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// Symbolic minor refused without an explicit override (expression swell).
    SymbolicRefused { size: usize },
    /// A spinor index selects both members of a hyperbolic pair or violates
    /// the bar-count parity constraint.
    InvalidSpinorIndex(String),
    /// Membership checks require homogeneous inputs.
    Inhomogeneous,
    /// No degree bound is available for an identity-test expression.
    MissingDegreeBound,
    /// The requested modulus is not an odd prime.
    NotPrime { modulus: u64 },
    /// Generic construction/configuration error.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands belong to different generic rings"),
            Error::DomainMismatch => write!(f, "coefficient-domain mismatch"),
            Error::DivisionNotExact => write!(f, "division is not exact"),
            Error::NotAPerfectSquare => write!(f, "polynomial is not a perfect square"),
            Error::MissingAssignment { expected, got } => {
                write!(f, "point assigns {got} of {expected} variables")
            }
            Error::NotSkewSymmetric => write!(f, "matrix is not skew-symmetric"),
            Error::NonSquareSelection => write!(f, "row/column selections differ in size"),
            Error::IndexOutOfBounds { index, bound } => {
                write!(f, "index {index} out of bounds 1..={bound}")
            }
            Error::ShuffleGuard { size } => write!(f, "shuffle guard exceeded: r+s = {size} > 12"),
            Error::UnsupportedN { n } => write!(f, "n = {n} outside supported range 3..=9"),
            Error::ComplexCondition(which) => write!(f, "complex condition violated: {which}"),
            Error::LiftingIdentity(which) => write!(f, "lifting identity failed: {which}"),
            Error::ShapeMismatch { left, right } => write!(
                f,
                "shapes not composable: {}x{} then {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::SymbolicRefused { size } => write!(
                f,
                "symbolic {size}x{size} minor refused without override flag"
            ),
            Error::InvalidSpinorIndex(msg) => write!(f, "invalid spinor index: {msg}"),
            Error::Inhomogeneous => write!(f, "input polynomial is not homogeneous"),
            Error::MissingDegreeBound => write!(f, "no degree bound for expression"),
            Error::NotPrime { modulus } => write!(f, "{modulus} is not an odd prime"),
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
