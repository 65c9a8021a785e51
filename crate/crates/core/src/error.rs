use thiserror::Error;

/// Errors raised by the library. Variants map one-to-one onto the failure
/// modes of the individual operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size limit exceeded: {0}")]
    SizeExceeded(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fields do not match")]
    FieldMismatch,
    #[error("no element of order {k} exists in the multiplicative group of order {group_order}")]
    OrderMismatch { k: u64, group_order: u64 },
    #[error("characteristic {p} divides {n}")]
    NotCoprimeCharacteristic { p: u64, n: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("denominator does not split into linear factors over the field")]
    NonSplittingDenominator,
    #[error("numerator degree must be below denominator degree")]
    DegreeOrder,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("field of order {0} is too small for this construction")]
    DegenerateField(u64),
    #[error("expected a 2x2 matrix, got {0}x{1}")]
    NotTwoByTwo(usize, usize),
    #[error("set is not a subset of the group")]
    NotSubset,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("codes have mixed parameters: {0}")]
    MixedParameters(String),
    #[error("evaluation or locator points are not distinct")]
    DuplicatePoints,
    #[error("invalid code dimension {k} for length {n}")]
    BadDimension { n: usize, k: usize },
    #[error("polynomial does not divide x^{0} - 1")]
    NotADivisor(usize),
    #[error("locator set contains a root of the Goppa polynomial")]
    RootInLocatorSet,
    #[error("dihedral group with rotation order {0} is degenerate")]
    DegenerateGroup(u64),
    #[error("target is not in the cyclic subgroup generated by the base")]
    NotInCyclicSubgroup,
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
