//! Closed-form knight asymptotics in exact rational arithmetic.
//!
//! Every function here is pure. Floating point only appears in
//! [`golden_power_gap`], where the golden ratio is approximated in
//! fixed-point with an explicit number of bits.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{KnightParams, LatticePoint};
use crate::Rational;

fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// King distance, the Chebyshev norm.
pub fn king_distance(p: LatticePoint) -> u64 {
    p.max_norm()
}

/// Leading term of the (a, b)-knight distance with the `O(b)` error dropped.
///
/// After reducing `p` to the octant `x ≥ y ≥ 0`: `x/b` when `y ≤ (a/b)x`,
/// otherwise `(x + y)/(a + b)`. The two branches agree on `y = (a/b)x`.
pub fn knight_approx(params: KnightParams, p: LatticePoint) -> Result<Rational> {
    let KnightParams { a, b } = params.require_formula_domain()?;
    Ok(knight_approx_unchecked(a, b, p))
}

pub(crate) fn knight_approx_unchecked(a: u64, b: u64, p: LatticePoint) -> Rational {
    let LatticePoint { x, y } = p.to_octant();
    let (x, y) = (x as u64, y as u64);
    if u128::from(y) * u128::from(b) <= u128::from(a) * u128::from(x) {
        ratio(x, b)
    } else {
        ratio(x + y, a + b)
    }
}

/// Average velocity `2(a+b)b² / (a² + 3b²)` of the (a, b)-knight relative
/// to the king.
pub fn velocity_formula(params: KnightParams) -> Result<Rational> {
    let KnightParams { a, b } = params.require_formula_domain()?;
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    Ok(ratio(
        BigInt::from(2) * (&a + &b) * &b * &b,
        &a * &a + BigInt::from(3) * &b * &b,
    ))
}

/// Limiting mean of `N_{a,b}/K`, `(a² + 3b²) / (2(a+b)b²)`.
pub fn expected_ratio(params: KnightParams) -> Result<Rational> {
    let KnightParams { a, b } = params.require_formula_domain()?;
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    Ok(ratio(
        &a * &a + BigInt::from(3) * &b * &b,
        BigInt::from(2) * (&a + &b) * &b * &b,
    ))
}

/// Limiting distribution of `N_{a,b}/K` over growing boxes:
/// zero below `1/b`, linear `(a+b)t − 1` up to `2/(a+b)`, one above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseCdf {
    params: KnightParams,
    t_low: Rational,
    t_high: Rational,
    slope: Rational,
}

impl PiecewiseCdf {
    pub fn new(params: KnightParams) -> Result<Self> {
        let params = params.require_formula_domain()?;
        let KnightParams { a, b } = params;
        Ok(PiecewiseCdf {
            params,
            t_low: ratio(1, b),
            t_high: ratio(2, a + b),
            slope: int(a + b),
        })
    }

    pub fn params(&self) -> KnightParams {
        self.params
    }

    pub fn t_low(&self) -> &Rational {
        &self.t_low
    }

    pub fn t_high(&self) -> &Rational {
        &self.t_high
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        if *t < self.t_low {
            Rational::zero()
        } else if *t > self.t_high {
            Rational::one()
        } else {
            &self.slope * t - Rational::one()
        }
    }

    /// `lim_{s → t⁻} D(s)`; differs from [`eval`](Self::eval) only at `t_low`.
    pub fn left_limit(&self, t: &Rational) -> Rational {
        if *t <= self.t_low {
            Rational::zero()
        } else {
            self.eval(t)
        }
    }

    /// `∫₀^∞ (1 − D(t)) dt`, integrated piece by piece.
    pub fn complement_integral(&self) -> Rational {
        let two = int(2);
        let flat = self.t_low.clone();
        let sloped = &two * (&self.t_high - &self.t_low)
            - &self.slope * (&self.t_high * &self.t_high - &self.t_low * &self.t_low) / &two;
        flat + sloped
    }
}

pub fn cdf(params: KnightParams, t: &Rational) -> Result<Rational> {
    Ok(PiecewiseCdf::new(params)?.eval(t))
}

/// Mean king distance over the punctured ball, `2h/3 + 1/3`.
pub fn king_average_closed(h: u32) -> Result<Rational> {
    if h == 0 {
        return Err(Error::InvalidRadius { min: 1, got: 0 });
    }
    Ok(ratio(2 * u64::from(h) + 1, 3))
}

/// `F_n` with `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut cur, mut next) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let sum = &cur + &next;
        cur = std::mem::replace(&mut next, sum);
    }
    cur
}

/// The n-th Fibonacci knight `N_{F_{n+1}, F_{n+2}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiboKnight {
    pub n: u64,
    pub params: KnightParams,
    pub primitive: bool,
}

/// Parameters of the n-th Fibonacci knight; the first one is the chess
/// knight. Primitivity is reported, not enforced.
pub fn fiboknight_params(n: u64) -> Result<FiboKnight> {
    if n == 0 {
        return Err(Error::InvalidArgument("fiboknight index starts at 1".into()));
    }
    let to_u64 = |v: BigUint| u64::try_from(v).map_err(|_| Error::FibonacciOverflow(n));
    let a = to_u64(fibonacci(n + 1))?;
    let b = to_u64(fibonacci(n + 2))?;
    let params = KnightParams::new(a, b)?;
    Ok(FiboKnight {
        n,
        params,
        primitive: params.primitivity().is_ok(),
    })
}

/// `v(FN_{n+k}) / v(FN_n)`; both knights must be primitive.
pub fn fiboknight_velocity_ratio(n: u64, k: u64) -> Result<Rational> {
    let lo = fiboknight_params(n)?;
    let hi = fiboknight_params(n + k)?;
    Ok(velocity_formula(hi.params)? / velocity_formula(lo.params)?)
}

/// `φ^k` rounded down to a multiple of `2^-bits`, as an exact dyadic rational.
///
/// Uses `φ^k = (L_k + F_k √5) / 2` with `√5` truncated to `bits + 8` bits,
/// so the result is within `F_k · 2^-(bits+8)` of the true power.
pub fn golden_power(k: u64, bits: u32) -> Rational {
    let work = bits + 8;
    let scale = BigInt::one() << work;
    let sqrt5 = (BigInt::from(5) * &scale * &scale).sqrt();
    let f = BigInt::from(fibonacci(k));
    let lucas = BigInt::from(fibonacci(k + 1) + fibonacci(k.saturating_sub(1)));
    let lucas = if k == 0 { BigInt::from(2) } else { lucas };
    let scaled = (lucas * &scale + f * sqrt5) >> (work - bits + 1);
    Rational::new(scaled, BigInt::one() << bits)
}

/// `|r − φ^k|` with `φ^k` approximated to `bits` bits (absolute error below
/// `2^-(bits-1)` for `k` up to a few hundred).
pub fn golden_power_gap(r: &Rational, k: u64, bits: u32) -> Rational {
    let diff = r - golden_power(k, bits);
    if diff < Rational::zero() {
        -diff
    } else {
        diff
    }
}
