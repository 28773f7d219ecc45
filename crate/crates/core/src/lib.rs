//! Exact invariants of quotient and toric orbifolds.
//!
//! This crate computes twisted-sector decompositions and degree-shifting
//! numbers for finite monomial matrix groups, stringy E-polynomials of
//! simplicial toric fans over refined lattices, crepant resolutions in rank
//! up to 3, and exact comparisons between a quotient model and its
//! resolution. All arithmetic is exact (integers and fractions over the
//! [`scalar::Scalar`] backend); results are canonical and deterministic.

pub mod catalog;
pub mod epoly;
pub mod error;
pub mod groupoid;
mod linalg;
pub mod monomial;
pub mod orbifold;
pub mod resolve;
pub mod scalar;
pub mod toric;

/// Default integer backend: arbitrary precision.
pub type Int = num_bigint::BigInt;
/// Exact fractions over the default backend.
pub type Rat = scalar::Frac<Int>;

pub use catalog::CatalogEntry;
pub use epoly::MotivicClass;
pub use error::Error;
pub use groupoid::{action_groupoid, FiniteGroupoid, GroupAction, GroupTable};
pub use monomial::{Angle, MonomialElement, MonomialGroup};
pub use orbifold::{
    compare_k_equivalent, verify_mckay, ComparisonReport, OrbifoldModel, Sector,
    VerificationReport,
};
pub use resolve::crepant_resolution;
pub use toric::{BoxElement, Cone, Fan, RefinedLattice};

/// Default cap for group closures and lattice-point enumerations.
pub const DEFAULT_CAP: u64 = 20_000;
