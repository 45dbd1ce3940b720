//! Exact minimum-move distances for symmetric leaper pieces on ℤ².
//!
//! The crate is split along the lines of the computation:
//!
//! - [`lattice`]: points, pieces and the knight primitivity test.
//! - [`reach`]: breadth-first distance fields, explicit h-fold sumsets,
//!   shell decompositions and convex-hull areas. This is the ground truth
//!   every other number is checked against.
//! - [`closed_form`]: the asymptotic formulas (knight distance, average
//!   velocity, ratio distribution, Fibonacci knights) in exact rationals.
//! - [`estimators`]: finite-box measurements of the same quantities,
//!   computed from distance fields.

pub mod closed_form;
pub mod error;
pub mod estimators;
pub mod lattice;
pub mod reach;

pub use error::{Error, PrimitivityViolation, Result};
pub use lattice::{KnightParams, LatticePoint, Piece};

/// Arbitrary-precision exact rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;
