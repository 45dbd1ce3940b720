use std::fmt;

use thiserror::Error;

use crate::lattice::LatticePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which half of the knight primitivity criterion failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitivityViolation {
    /// `gcd(a, b) > 1`; only multiples of the gcd are reachable.
    Gcd(u64),
    /// `a + b` is even; the piece never changes square colour.
    Parity,
}

impl fmt::Display for PrimitivityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitivityViolation::Gcd(g) => write!(f, "gcd(a, b) = {g} is not 1"),
            PrimitivityViolation::Parity => write!(f, "a + b is even"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symmetric closure of the zero vector is empty")]
    ZeroGenerator,
    #[error("piece has no moves")]
    EmptyPiece,
    #[error("piece contains the null move (0, 0)")]
    NullMove,
    #[error("knight parameters must be positive and distinct, got ({a}, {b})")]
    InvalidKnight { a: u64, b: u64 },
    #[error("formula requires b > a, got ({a}, {b})")]
    Unordered { a: u64, b: u64 },
    #[error("({a}, {b})-knight is not primitive: {violation}")]
    NotPrimitive {
        a: u64,
        b: u64,
        violation: PrimitivityViolation,
    },
    #[error("radius must be at least {min}, got {got}")]
    InvalidRadius { min: u32, got: u32 },
    #[error("{point} lies outside the reporting box of radius {radius}")]
    OutOfBox { point: LatticePoint, radius: u32 },
    #[error("{point} is unreachable by {piece}")]
    Unreachable { piece: String, point: LatticePoint },
    #[error("convex hull of {0} is degenerate (all moves collinear)")]
    DegenerateHull(String),
    #[error("fibonacci index {0} does not fit knight parameters")]
    FibonacciOverflow(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
