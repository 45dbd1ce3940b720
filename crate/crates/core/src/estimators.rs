//! Finite-box measurements of the asymptotic quantities.
//!
//! All sums are exact. Velocities are kept as rationals so identities such
//! as "relative velocity against the king equals the box velocity" can be
//! checked without tolerance; use `to_f64` only for reporting.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::closed_form::{knight_approx_unchecked, PiecewiseCdf};
use crate::error::{Error, Result};
use crate::lattice::{KnightParams, LatticePoint, Piece};
use crate::reach::{self, DistanceField};
use crate::Rational;

/// Which set the box mean is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalizer {
    /// All of `B_h`, origin included, `(2h+1)²` points.
    #[default]
    Box,
    /// `B_h` without the origin, `4h(h+1)` points.
    Punctured,
}

impl Normalizer {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalizer::Box => "box",
            Normalizer::Punctured => "punctured",
        }
    }

    /// Number of points averaged over in a box of radius `h`.
    pub fn cardinality(self, h: u32) -> u64 {
        let h = u64::from(h);
        match self {
            Normalizer::Box => (2 * h + 1) * (2 * h + 1),
            Normalizer::Punctured => 4 * h * (h + 1),
        }
    }
}

impl fmt::Display for Normalizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(2h/3) / mean`, the velocity normalisation shared by every estimator.
fn velocity_from_mean(h: u32, mean: &Rational) -> Rational {
    Rational::new(BigInt::from(2 * u64::from(h)), BigInt::from(3)) / mean
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VelocityEstimate {
    pub piece: String,
    pub h: u32,
    pub normalizer: Normalizer,
    pub distance_sum: BigInt,
    pub mean_distance: Rational,
    pub velocity: Rational,
}

impl VelocityEstimate {
    pub fn velocity_f64(&self) -> f64 {
        self.velocity.to_f64().unwrap_or(f64::NAN)
    }
}

/// Sum of distances over `B_h`, every cell visited. Fails on the first
/// unreachable cell.
pub fn box_distance_sum(field: &DistanceField) -> Result<BigInt> {
    let mut total: u128 = 0;
    for (p, d) in field.iter_box() {
        total += u128::from(d.ok_or_else(|| unreachable(field, p))?);
    }
    Ok(BigInt::from(total))
}

/// Same sum as [`box_distance_sum`] computed on the octant `x ≥ y ≥ 0`
/// with orbit weights. Only valid for symmetric pieces.
pub fn octant_distance_sum(field: &DistanceField) -> Result<BigInt> {
    if !field.piece().is_symmetric() {
        return Err(Error::InvalidArgument(format!(
            "octant reduction needs a symmetric piece, {} is not",
            field.piece()
        )));
    }
    let mut total: u128 = 0;
    for (p, d) in field.iter_octant() {
        let d = d.ok_or_else(|| unreachable(field, p))?;
        total += u128::from(d) * orbit_size(p);
    }
    Ok(BigInt::from(total))
}

/// Size of the dihedral orbit of an octant point.
fn orbit_size(p: LatticePoint) -> u128 {
    match (p.x, p.y) {
        (0, 0) => 1,
        (x, y) if y == 0 || x == y => 4,
        _ => 8,
    }
}

fn unreachable(field: &DistanceField, p: LatticePoint) -> Error {
    Error::Unreachable {
        piece: field.piece().name().to_string(),
        point: p,
    }
}

fn distance_sum(field: &DistanceField) -> Result<BigInt> {
    if field.piece().is_symmetric() {
        octant_distance_sum(field)
    } else {
        box_distance_sum(field)
    }
}

/// Box-average velocity of `piece` at radius `h`.
pub fn empirical_velocity(piece: &Piece, h: u32, normalizer: Normalizer) -> Result<VelocityEstimate> {
    let field = reach::compute_field_default(piece, h)?;
    velocity_from_field(&field, normalizer)
}

pub fn velocity_from_field(field: &DistanceField, normalizer: Normalizer) -> Result<VelocityEstimate> {
    let h = field.radius();
    let sum = distance_sum(field)?;
    let mean = Rational::new(sum.clone(), BigInt::from(normalizer.cardinality(h)));
    if mean.is_zero() {
        return Err(Error::InvalidRadius { min: 1, got: h });
    }
    Ok(VelocityEstimate {
        piece: field.piece().name().to_string(),
        h,
        normalizer,
        distance_sum: sum,
        velocity: velocity_from_mean(h, &mean),
        mean_distance: mean,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeVelocity {
    pub reference: String,
    pub target: String,
    pub h: u32,
    /// `|hA₀|` for the reference piece `A`.
    pub region_size: u64,
    pub mean_distance: Rational,
    pub velocity: Rational,
}

impl RelativeVelocity {
    pub fn velocity_f64(&self) -> f64 {
        self.velocity.to_f64().unwrap_or(f64::NAN)
    }
}

/// Velocity of `target` seen from `reference`: the target's mean distance
/// over `hA₀` (reference sumset with the null move), normalised by `2h/3`.
pub fn relative_velocity(reference: &Piece, target: &Piece, h: u32) -> Result<RelativeVelocity> {
    let region = reach::shells(reference, h)?;
    let extent = region.region().map(LatticePoint::max_norm).max().unwrap_or(1).max(1);
    let extent = u32::try_from(extent).expect("region extent fits u32");
    let field = reach::compute_field_default(target, extent)?;
    let mut total: u128 = 0;
    let mut count: u64 = 0;
    for p in region.region() {
        let d = field.padded_distance(p).ok_or_else(|| unreachable(&field, p))?;
        total += u128::from(d);
        count += 1;
    }
    let mean = Rational::new(BigInt::from(total), BigInt::from(count));
    if mean.is_zero() {
        return Err(Error::InvalidRadius { min: 1, got: h });
    }
    Ok(RelativeVelocity {
        reference: reference.name().to_string(),
        target: target.name().to_string(),
        h,
        region_size: count,
        velocity: velocity_from_mean(h, &mean),
        mean_distance: mean,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub params: KnightParams,
    pub h: u32,
    pub max_abs_residual: Rational,
    /// First octant point, in lexicographic order, attaining the maximum.
    pub argmax: LatticePoint,
}

/// Largest gap between the exact knight distance and its leading-term
/// approximation over `B_h`.
pub fn residual_report(params: KnightParams, h: u32) -> Result<ResidualReport> {
    let KnightParams { a, b } = params.require_formula_domain()?;
    let field = reach::compute_field_default(&Piece::knight(params)?, h)?;
    // Scaled by L = b(a+b) both branches of the approximation are integers.
    let (a, b) = (i128::from(a), i128::from(b));
    let scale = b * (a + b);
    let mut best: Option<(i128, LatticePoint)> = None;
    for (p, d) in field.iter_octant() {
        let Some(d) = d else { continue };
        let (x, y) = (i128::from(p.x), i128::from(p.y));
        let approx = if y * b <= a * x { x * (a + b) } else { (x + y) * b };
        let residual = (i128::from(d) * scale - approx).abs();
        if best.is_none_or(|(r, _)| residual > r) {
            best = Some((residual, p));
        }
    }
    let (residual, argmax) = best.expect("octant contains the origin");
    debug_assert_eq!(
        Rational::new(BigInt::from(residual), BigInt::from(scale)),
        {
            let d = field.padded_distance(argmax).unwrap();
            let diff = Rational::from_integer(BigInt::from(d))
                - knight_approx_unchecked(params.a, params.b, argmax);
            if diff < Rational::zero() { -diff } else { diff }
        }
    );
    Ok(ResidualReport {
        params,
        h,
        max_abs_residual: Rational::new(BigInt::from(residual), BigInt::from(scale)),
        argmax,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Bound {
    pub params: KnightParams,
    pub max_distance: u32,
    pub argmax: LatticePoint,
    /// `max_distance / b`.
    pub constant: Rational,
}

/// Largest knight distance over `B_{a+b}`, and its ratio to `b`.
pub fn lemma1_check(params: KnightParams) -> Result<Lemma1Bound> {
    let KnightParams { a, b } = params.require_formula_domain()?;
    let radius = u32::try_from(a + b).map_err(|_| Error::InvalidArgument("a + b overflows".into()))?;
    let field = reach::compute_field_default(&Piece::knight(params)?, radius)?;
    let mut best = (0u32, LatticePoint::ORIGIN);
    for (p, d) in field.iter_box() {
        let d = d.ok_or_else(|| unreachable(&field, p))?;
        if d > best.0 {
            best = (d, p);
        }
    }
    Ok(Lemma1Bound {
        params,
        max_distance: best.0,
        argmax: best.1,
        constant: Rational::new(BigInt::from(best.0), BigInt::from(b)),
    })
}

/// A ratio `N(p)/K(p)` with small numerator and denominator, compared by
/// cross-multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallRatio {
    pub num: u64,
    pub den: u64,
}

impl SmallRatio {
    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl Ord for SmallRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den)).cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl PartialOrd for SmallRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Empirical distribution of `N_{a,b}(p) / K(p)` over `B*_h`.
///
/// Stored as the distinct ratio values in increasing order with the
/// cumulative count of points at or below each.
#[derive(Debug, Clone)]
pub struct CdfEstimate {
    pub params: KnightParams,
    pub h: u32,
    values: Vec<SmallRatio>,
    cumulative: Vec<u64>,
    total: u64,
}

/// Where the supremum of `|F̂ − D|` is approached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdfGap {
    pub gap: Rational,
    pub at: Rational,
    /// `true` when the supremum is the left limit at `at`.
    pub from_left: bool,
}

impl CdfEstimate {
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Distinct ratio values, ascending.
    pub fn support(&self) -> &[SmallRatio] {
        &self.values
    }

    fn count_le(&self, t: &Rational) -> u64 {
        let idx = self.values.partition_point(|v| v.to_rational() <= *t);
        if idx == 0 {
            0
        } else {
            self.cumulative[idx - 1]
        }
    }

    /// Fraction of `B*_h` with ratio at most `t`.
    pub fn query(&self, t: &Rational) -> Rational {
        Rational::new(BigInt::from(self.count_le(t)), BigInt::from(self.total))
    }

    pub fn query_f64(&self, t: f64) -> f64 {
        let idx = self.values.partition_point(|v| (v.num as f64) <= t * v.den as f64);
        if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1] as f64 / self.total as f64
        }
    }

    /// Exact `sup_t |F̂(t) − D(t)|`.
    ///
    /// `F̂` is a right-continuous step function and `D` is piecewise linear
    /// and nondecreasing, so on each open interval between consecutive
    /// candidate points the gap is monotone; the supremum is a one-sided
    /// limit at a jump of `F̂` or a breakpoint of `D`.
    pub fn sup_gap(&self, closed: &PiecewiseCdf) -> CdfGap {
        let total = BigInt::from(self.total);
        let mut candidates: Vec<Rational> = self.values.iter().map(|v| v.to_rational()).collect();
        candidates.push(closed.t_low().clone());
        candidates.push(closed.t_high().clone());
        candidates.sort();
        candidates.dedup();

        let mut best = CdfGap {
            gap: Rational::zero(),
            at: Rational::zero(),
            from_left: false,
        };
        let mut below: u64 = 0; // points with ratio strictly below the candidate
        let mut vi = 0;
        for t in candidates {
            while vi < self.values.len() && self.values[vi].to_rational() < t {
                below = self.cumulative[vi];
                vi += 1;
            }
            let at_or_below = if vi < self.values.len() && self.values[vi].to_rational() == t {
                self.cumulative[vi]
            } else {
                below
            };
            let left = (Rational::new(BigInt::from(below), total.clone()) - closed.left_limit(&t)).abs_rational();
            let right = (Rational::new(BigInt::from(at_or_below), total.clone()) - closed.eval(&t)).abs_rational();
            if left > best.gap {
                best = CdfGap {
                    gap: left,
                    at: t.clone(),
                    from_left: true,
                };
            }
            if right > best.gap {
                best = CdfGap {
                    gap: right,
                    at: t,
                    from_left: false,
                };
            }
        }
        best
    }
}

trait AbsRational {
    fn abs_rational(self) -> Rational;
}

impl AbsRational for Rational {
    fn abs_rational(self) -> Rational {
        if self < Rational::zero() {
            -self
        } else {
            self
        }
    }
}

/// Empirical CDF of the knight/king distance ratio over `B*_h`.
pub fn empirical_cdf(params: KnightParams, h: u32) -> Result<CdfEstimate> {
    let params = params.require_formula_domain()?;
    let field = reach::compute_field_default(&Piece::knight(params)?, h)?;
    cdf_from_field(&field, params)
}

pub fn cdf_from_field(field: &DistanceField, params: KnightParams) -> Result<CdfEstimate> {
    let mut weighted: Vec<(SmallRatio, u64)> = Vec::new();
    for (p, d) in field.iter_octant() {
        if p.is_origin() {
            continue;
        }
        let d = d.ok_or_else(|| unreachable(field, p))?;
        let ratio = SmallRatio {
            num: u64::from(d),
            den: p.max_norm(),
        };
        weighted.push((ratio, orbit_size(p) as u64));
    }
    weighted.sort_unstable_by_key(|w| w.0);

    let mut values: Vec<SmallRatio> = Vec::new();
    let mut cumulative: Vec<u64> = Vec::new();
    let mut running = 0u64;
    for (ratio, w) in weighted {
        running += w;
        match values.last() {
            Some(last) if last.cmp(&ratio) == Ordering::Equal => {
                *cumulative.last_mut().unwrap() = running;
            }
            _ => {
                values.push(ratio);
                cumulative.push(running);
            }
        }
    }
    Ok(CdfEstimate {
        params,
        h: field.radius(),
        values,
        cumulative,
        total: running,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhovanskiiFit {
    pub piece: String,
    pub h: u32,
    /// `|hA₀|`.
    pub size: u64,
    /// `|hA₀| / h²`.
    pub leading: Rational,
}

impl KhovanskiiFit {
    pub fn leading_f64(&self) -> f64 {
        self.leading.to_f64().unwrap_or(f64::NAN)
    }
}

/// Leading-coefficient estimate `|hA₀| / h²` of the sumset growth polynomial.
pub fn khovanskii_fit(piece: &Piece, h: u32) -> Result<KhovanskiiFit> {
    if h < 20 {
        return Err(Error::InvalidRadius { min: 20, got: h });
    }
    let sizes = reach::sumset_sizes(piece, h)?;
    let size = sizes[h as usize];
    Ok(KhovanskiiFit {
        piece: piece.name().to_string(),
        h,
        size,
        leading: Rational::new(BigInt::from(size), BigInt::from(u64::from(h) * u64::from(h))),
    })
}

/// Half the second difference `(s_ℓ − 2s_{ℓ−1} + s_{ℓ−2}) / 2` of the sumset
/// sizes for `ℓ = 2..=h`. Once `|ℓA₀|` is polynomial this is its leading
/// coefficient exactly.
pub fn growth_second_differences(sizes: &[u64]) -> Vec<Rational> {
    sizes
        .windows(3)
        .map(|w| {
            let d2 = i128::from(w[2]) - 2 * i128::from(w[1]) + i128::from(w[0]);
            Rational::new(BigInt::from(d2), BigInt::from(2))
        })
        .collect()
}
