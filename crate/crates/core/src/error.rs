//! Crate-wide error type. Every fallible operation reports through [`Error`];
//! payloads are pre-rendered strings so the type stays independent of the
//! scalar backend.

/// Failure cases shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An exponent that must be nonnegative was negative.
    #[error("negative exponent {0}")]
    NegativeExponent(String),

    /// A class was asked for integer Hodge data but carries a fractional
    /// exponent. The payload is the smallest offending exponent.
    #[error("non-integral class: exponent {0}")]
    NonIntegralClass(String),

    /// Two objects of different ambient dimension were combined.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// Group closure exceeded the configured cap.
    #[error("group closure exceeded cap {cap}")]
    GroupTooLarge { cap: u64 },

    /// A lattice-point enumeration would exceed the configured cap.
    #[error("enumeration of {needed} points exceeds cap {cap}")]
    EnumerationTooLarge { needed: String, cap: u64 },

    /// `shift_w(g, m)` requires `ord(g) | m`.
    #[error("element order {order} does not divide m = {m}")]
    OrderDoesNotDivide { order: String, m: String },

    /// Rays of a cone were linearly dependent.
    #[error("non-simplicial cone: {0}")]
    NonSimplicial(String),

    /// A crepant resolution was requested for a cone with no integral height
    /// functional.
    #[error("non-Gorenstein input: {0}")]
    NonGorenstein(String),

    /// Crepant resolution is implemented for lattice rank at most 3.
    #[error("rank {0} exceeds the resolvable limit 3")]
    RankTooLarge(usize),

    /// Internal hard assertion: a produced triangulation was not unimodular.
    #[error("non-unimodular triangulation: cone {cone} has index {index}")]
    NonUnimodular { cone: String, index: String },

    /// A fan failed validation.
    #[error("invalid fan: {0}")]
    InvalidFan(String),

    /// A lattice could not be built from the given generators.
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    /// A group element or generator was malformed.
    #[error("invalid group element: {0}")]
    InvalidElement(String),

    /// A group action failed its compatibility checks.
    #[error("invalid action: {0}")]
    InvalidAction(String),

    /// A composition table violated the groupoid axioms; the payload names
    /// the first offending arrow.
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    /// Weighted projective weights must have gcd 1.
    #[error("weights not coprime: gcd = {0}")]
    NonCoprimeWeights(String),

    /// Two fans were not comparable (different lattice, rays, or support).
    #[error("incomparable fans: {0}")]
    Incomparable(String),

    /// Text input could not be parsed; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
