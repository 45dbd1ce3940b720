//! Lattice points, pieces and the knight primitivity criterion.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, PrimitivityViolation, Result};

/// A point of ℤ², also used for move vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// Chebyshev norm `max(|x|, |y|)`, which is also the king distance.
    pub fn max_norm(self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }

    pub fn l1_norm(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }

    pub fn swap(self) -> Self {
        LatticePoint::new(self.y, self.x)
    }

    /// Image in the fundamental octant `x ≥ y ≥ 0` under the board's
    /// dihedral symmetry group.
    pub fn to_octant(self) -> Self {
        let (ax, ay) = (self.x.abs(), self.y.abs());
        if ax >= ay {
            LatticePoint::new(ax, ay)
        } else {
            LatticePoint::new(ay, ax)
        }
    }

    pub fn is_origin(self) -> bool {
        self == Self::ORIGIN
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;

    fn add(self, rhs: Self) -> Self {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;

    fn sub(self, rhs: Self) -> Self {
        LatticePoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;

    fn neg(self) -> Self {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parameters of the (a, b)-knight, the leaper whose basic move is `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnightParams {
    pub a: u64,
    pub b: u64,
}

impl KnightParams {
    /// Accepts any positive, distinct pair. Ordering `b > a` is only
    /// demanded by the closed-form formulas, see [`KnightParams::ordered`].
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(Error::InvalidKnight { a, b });
        }
        Ok(KnightParams { a, b })
    }

    pub const CHESS: KnightParams = KnightParams { a: 1, b: 2 };

    /// Checks the `b > a` hypothesis of the asymptotic formulas.
    pub fn ordered(self) -> Result<Self> {
        if self.b > self.a {
            Ok(self)
        } else {
            Err(Error::Unordered {
                a: self.a,
                b: self.b,
            })
        }
    }

    /// `Ok` iff `gcd(a, b) = 1` and `a + b` is odd.
    pub fn primitivity(self) -> std::result::Result<(), PrimitivityViolation> {
        let g = self.a.gcd(&self.b);
        if g != 1 {
            Err(PrimitivityViolation::Gcd(g))
        } else if (self.a + self.b).is_multiple_of(2) {
            Err(PrimitivityViolation::Parity)
        } else {
            Ok(())
        }
    }

    pub fn require_primitive(self) -> Result<Self> {
        self.primitivity().map_err(|violation| Error::NotPrimitive {
            a: self.a,
            b: self.b,
            violation,
        })?;
        Ok(self)
    }

    /// The hypothesis shared by every formula: primitive with `b > a`.
    pub fn require_formula_domain(self) -> Result<Self> {
        self.ordered()?.require_primitive()
    }
}

pub fn is_primitive_knight(params: KnightParams) -> bool {
    params.primitivity().is_ok()
}

/// A finite set of moves. Moves are kept sorted lexicographically by
/// `(x, y)` so equality and iteration order are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    name: String,
    moves: Vec<LatticePoint>,
}

impl Piece {
    /// Builds a piece from an arbitrary move list. Duplicates are merged;
    /// the null move and empty lists are rejected.
    pub fn new(name: impl Into<String>, moves: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut moves: Vec<LatticePoint> = moves.into_iter().collect();
        if moves.iter().any(|m| m.is_origin()) {
            return Err(Error::NullMove);
        }
        moves.sort_unstable();
        moves.dedup();
        if moves.is_empty() {
            return Err(Error::EmptyPiece);
        }
        Ok(Piece {
            name: name.into(),
            moves,
        })
    }

    /// The king: every move of Chebyshev length one.
    pub fn king() -> Self {
        let moves = symmetric_orbit(LatticePoint::new(1, 0))
            .into_iter()
            .chain(symmetric_orbit(LatticePoint::new(1, 1)));
        Piece::new("K", moves).expect("king moves are valid")
    }

    pub fn knight(params: KnightParams) -> Result<Self> {
        let KnightParams { a, b } = KnightParams::new(params.a, params.b)?;
        let generator = LatticePoint::new(to_coord(a)?, to_coord(b)?);
        Piece::new(format!("N{a},{b}"), symmetric_orbit(generator))
    }

    /// The taxicab: the four unit steps.
    pub fn taxicab() -> Self {
        Piece::new("T", symmetric_orbit(LatticePoint::new(1, 0))).expect("taxicab moves are valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moves(&self) -> &[LatticePoint] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn contains(&self, m: LatticePoint) -> bool {
        self.moves.binary_search(&m).is_ok()
    }

    /// Longest move in the Chebyshev norm.
    pub fn reach(&self) -> u64 {
        self.moves.iter().map(|m| m.max_norm()).max().unwrap_or(0)
    }

    /// Longest move in the 1-norm.
    pub fn span(&self) -> u64 {
        self.moves.iter().map(|m| m.l1_norm()).max().unwrap_or(0)
    }

    /// Invariant under sign changes of either coordinate and under swapping
    /// the coordinates.
    pub fn is_symmetric(&self) -> bool {
        self.moves.iter().all(|&m| symmetric_orbit(m).into_iter().all(|o| self.contains(o)))
    }

    /// Union of two move sets under a new name.
    pub fn union(&self, other: &Piece, name: impl Into<String>) -> Self {
        Piece::new(name, self.moves.iter().chain(other.moves.iter()).copied())
            .expect("union of valid pieces is valid")
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Smallest symmetric piece containing `generator`.
pub fn symmetric_closure(generator: LatticePoint) -> Result<Piece> {
    if generator.is_origin() {
        return Err(Error::ZeroGenerator);
    }
    let LatticePoint { x, y } = generator.to_octant();
    Piece::new(format!("S{y},{x}"), symmetric_orbit(generator))
}

fn symmetric_orbit(p: LatticePoint) -> Vec<LatticePoint> {
    let mut out = Vec::with_capacity(8);
    for q in [p, p.swap()] {
        for (sx, sy) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            out.push(LatticePoint::new(sx * q.x, sy * q.y));
        }
    }
    out
}

fn to_coord(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidArgument(format!("coordinate {v} overflows i64")))
}
