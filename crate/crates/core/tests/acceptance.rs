//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities. Run with `--nocapture` to see the report.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use leaper_core::closed_form::{self, PiecewiseCdf};
use leaper_core::estimators::{self, Normalizer};
use leaper_core::lattice::is_primitive_knight;
use leaper_core::reach::{self, SumsetFolds};
use leaper_core::{KnightParams, LatticePoint, Piece, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

fn kp(a: u64, b: u64) -> KnightParams {
    KnightParams::new(a, b).unwrap()
}

fn knight(a: u64, b: u64) -> Piece {
    Piece::knight(kp(a, b)).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn abs(r: Rational) -> Rational {
    if r < Rational::zero() {
        -r
    } else {
        r
    }
}

fn report(id: u32, name: &str, detail: impl AsRef<str>) {
    println!("[acceptance {id:02}] PASS {name}: {}", detail.as_ref());
}

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    parts.join(", ")
}

/// The five knights used by the residual and lemma criteria.
const KNIGHTS: [(u64, u64); 5] = [(1, 2), (2, 3), (1, 4), (2, 5), (3, 4)];

/// Upper bound on `max residual / b`; measured maxima range from 4/3 to 12/7.
const RESIDUAL_CONSTANT: i64 = 2;

/// Upper bound on `max_{B_{a+b}} N / b`; every knight above measures exactly 2.
const LEMMA_CONSTANT: i64 = 2;

/// Value of the chess knight's distance on `B_3` as drawn in the reference
/// figure, written out cell class by cell class.
fn reference_value(x: i64, y: i64) -> u32 {
    let (ax, ay) = (x.abs(), y.abs());
    match (ax.max(ay), ax.min(ay)) {
        (0, 0) => 0,
        (2, 1) => 1,
        (2, 2) => 4,
        (2, 0) => 2,
        _ if ax % 2 == 1 && ay % 2 == 1 => 2,
        _ => 3,
    }
}

#[test]
fn c01_reference_table() {
    let start = Instant::now();
    let field = reach::compute_field_default(&knight(1, 2), 3).unwrap();
    let mut counts = BTreeMap::new();
    for x in -3..=3 {
        for y in -3..=3 {
            let got = field.distance(LatticePoint::new(x, y)).unwrap().unwrap();
            assert_eq!(got, reference_value(x, y), "at ({x}, {y})");
            *counts.entry(got).or_insert(0) += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(counts, BTreeMap::from([(0, 1), (1, 8), (2, 20), (3, 16), (4, 4)]));
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
    report(1, "reference distance table", format!("49/49 cells match, {elapsed:?}"));
}

#[test]
fn c02_king_average_identity() {
    for h in 1..=200 {
        let est = estimators::empirical_velocity(&Piece::king(), h, Normalizer::Punctured).unwrap();
        assert_eq!(est.mean_distance, q(2 * i64::from(h) + 1, 3), "h = {h}");
        assert_eq!(est.mean_distance, closed_form::king_average_closed(h).unwrap());
    }
    report(2, "king mean over punctured ball = 2h/3 + 1/3", "exact for h in 1..=200");
}

#[test]
fn c03_ball_cardinalities() {
    let shells = reach::shells(&Piece::king(), 200).unwrap();
    let sizes = shells.cumulative_sizes();
    for h in 1..=200u32 {
        let h64 = u64::from(h);
        assert_eq!(shells.shell(h).len() as u64, 8 * h64, "|∂B_{h}|");
        assert!(shells.shell(h).iter().all(|p| p.max_norm() == h64));
        assert_eq!(sizes[h as usize] - 1, 4 * h64 * (h64 + 1), "|B*_{h}|");
        assert_eq!(Normalizer::Punctured.cardinality(h), sizes[h as usize] - 1);
        assert_eq!(Normalizer::Box.cardinality(h), sizes[h as usize]);
    }
    report(3, "|B*_h| = 4h(h+1), |∂B_h| = 8h", "exact for h in 1..=200");
}

/// Velocity errors along the doubling schedule; asserts strict decay and a
/// 4x reduction between the first and last radius.
fn doubling_decay(a: u64, b: u64, target: Rational) -> Vec<f64> {
    let piece = knight(a, b);
    let errors: Vec<Rational> = [125, 250, 500, 1000]
        .into_iter()
        .map(|h| {
            let est = estimators::empirical_velocity(&piece, h, Normalizer::Box).unwrap();
            abs(est.velocity - &target)
        })
        .collect();
    for w in errors.windows(2) {
        assert!(w[1] < w[0], "({a},{b}) error did not decrease: {} -> {}", w[0], w[1]);
    }
    assert!(&errors[3] * q(4, 1) <= errors[0], "({a},{b}) decay below 4x");
    errors.iter().map(|e| e.to_f64().unwrap()).collect()
}

#[test]
fn c04_title_constant() {
    let start = Instant::now();
    let target = closed_form::velocity_formula(kp(1, 2)).unwrap();
    assert_eq!(target, q(24, 13));
    let errs = doubling_decay(1, 2, target);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "{elapsed:?}");
    report(
        4,
        "knight velocity -> 24/13",
        format!("|v-24/13| at h=125..1000: {}, decay x{:.2}, {elapsed:?}", sci(&errs), errs[0] / errs[3]),
    );
}

#[test]
fn c05_other_knight_velocities() {
    for (a, b, want) in [(2, 3, q(90, 31)), (1, 4, q(160, 49))] {
        let target = closed_form::velocity_formula(kp(a, b)).unwrap();
        assert_eq!(target, want);
        let errs = doubling_decay(a, b, target.clone());
        report(
            5,
            &format!("({a},{b})-knight velocity -> {target}"),
            format!("errors {}, decay x{:.2}", sci(&errs), errs[0] / errs[3]),
        );
    }
}

#[test]
fn c06_residual_boundedness() {
    let frozen = [q(8, 3), q(24, 5), q(32, 5), q(60, 7), q(48, 7)];
    for ((a, b), expected) in KNIGHTS.into_iter().zip(frozen) {
        let maxima: Vec<Rational> = [200, 400, 800]
            .into_iter()
            .map(|h| estimators::residual_report(kp(a, b), h).unwrap().max_abs_residual)
            .collect();
        assert!(maxima.iter().all(|m| *m == maxima[0]), "({a},{b}): {maxima:?}");
        assert_eq!(maxima[0], expected, "({a},{b})");
        let per_b = &maxima[0] / q(b as i64, 1);
        assert!(per_b <= q(RESIDUAL_CONSTANT, 1), "({a},{b}) residual/b = {per_b}");
        report(6, &format!("({a},{b}) residual bounded"), format!("max {} at h=200,400,800; /b = {per_b}", maxima[0]));
    }
}

#[test]
fn c07_lemma_one_constant() {
    let chess = estimators::lemma1_check(kp(1, 2)).unwrap();
    assert_eq!(chess.max_distance, 4);
    for (a, b) in KNIGHTS {
        let bound = estimators::lemma1_check(kp(a, b)).unwrap();
        assert!(bound.constant <= q(LEMMA_CONSTANT, 1), "({a},{b}): {}", bound.constant);
        report(
            7,
            &format!("({a},{b}) max over B_(a+b)"),
            format!("{} at {}, /b = {}", bound.max_distance, bound.argmax, bound.constant),
        );
    }
}

#[test]
fn c08_ratio_distribution() {
    let params = kp(1, 2);
    let closed = PiecewiseCdf::new(params).unwrap();
    assert_eq!(closed.left_limit(&q(1, 2)), q(0, 1));
    assert_eq!(closed.eval(&(q(1, 2) - q(1, 1_000_000))), q(0, 1));
    assert_eq!(closed.eval(&q(2, 3)), q(1, 1));
    let gaps: Vec<Rational> = [250, 500, 1000]
        .into_iter()
        .map(|h| estimators::empirical_cdf(params, h).unwrap().sup_gap(&closed).gap)
        .collect();
    for w in gaps.windows(2) {
        assert!(w[1] < w[0], "sup gap did not decrease: {} -> {}", w[0], w[1]);
    }
    let shown: Vec<f64> = gaps.iter().map(|g| g.to_f64().unwrap()).collect();
    report(8, "empirical vs closed-form ratio CDF", format!("sup gaps at h=250,500,1000: {shown:.6?}"));
}

#[test]
fn c09_expected_ratio_identities() {
    let mut checked = 0;
    for b in 2..=50u64 {
        for a in 1..b {
            let params = kp(a, b);
            if !is_primitive_knight(params) {
                continue;
            }
            let v = closed_form::velocity_formula(params).unwrap();
            let e = closed_form::expected_ratio(params).unwrap();
            assert_eq!(&v * &e, q(1, 1), "({a},{b})");
            let integral = PiecewiseCdf::new(params).unwrap().complement_integral();
            let (a2, b2) = ((a * a) as i64, (b * b) as i64);
            assert_eq!(integral, q(a2 + 3 * b2, 2 * (a + b) as i64 * b2), "({a},{b})");
            checked += 1;
        }
    }
    report(9, "E(N/K) * v = 1 and integral of 1 - D", format!("{checked} primitive knights with b <= 50"));
}

#[test]
fn c10_relative_velocity_and_growth() {
    let chess = knight(1, 2);
    for h in 1..=200 {
        let rel = estimators::relative_velocity(&Piece::king(), &chess, h).unwrap();
        let boxed = estimators::empirical_velocity(&chess, h, Normalizer::Box).unwrap();
        assert_eq!(rel.velocity, boxed.velocity, "h = {h}");
    }
    let area = reach::hull_area(&chess).unwrap();
    assert_eq!(area, q(14, 1));
    let fit = estimators::khovanskii_fit(&chess, 300).unwrap();
    let rel_err = abs(&fit.leading - &area) / &area;
    assert!(rel_err < q(1, 100), "relative error {rel_err}");
    report(
        10,
        "relative velocity vs king = box velocity; |hN0|/h^2 -> 14",
        format!("exact for h <= 200; |300 N0|/300^2 = {:.5}", fit.leading_f64()),
    );
}

/// Bits of precision for the golden-ratio powers.
const PHI_BITS: u32 = 128;

fn golden_gaps(k: u64, ns: impl Iterator<Item = u64>) -> Vec<Rational> {
    ns.map(|n| {
        let r = closed_form::fiboknight_velocity_ratio(n, k).unwrap();
        closed_form::golden_power_gap(&r, k, PHI_BITS)
    })
    .collect()
}

fn strictly_decreasing(v: &[Rational]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn c11_fiboknights() {
    for n in 1..=30 {
        let fk = closed_form::fiboknight_params(n).unwrap();
        assert_eq!(fk.primitive, n % 3 != 0, "n = {n}");
    }
    let primitive = |n: u64| !n.is_multiple_of(3);

    // Consecutive primitive pairs FN_{3m+1}, FN_{3m+2}, m = 0..=9.
    let k1 = golden_gaps(1, (0..=9).map(|m| 3 * m + 1));
    assert!(strictly_decreasing(&k1), "k = 1");
    let k2 = golden_gaps(2, (1..=30).filter(|&n| primitive(n) && primitive(n + 2)));
    assert!(strictly_decreasing(&k2), "k = 2");
    let k3 = golden_gaps(3, (1..=30).filter(|&n| primitive(n)));
    assert!(strictly_decreasing(&k3), "k = 3");
    for gaps in [&k1, &k2, &k3] {
        assert!(*gaps.last().unwrap() < q(1, 1_000_000_000));
    }
    report(
        11,
        "Fibonacci knight ratios -> phi^k",
        format!(
            "final gaps k=1: {:.3e}, k=2: {:.3e}, k=3: {:.3e}",
            k1.last().unwrap().to_f64().unwrap(),
            k2.last().unwrap().to_f64().unwrap(),
            k3.last().unwrap().to_f64().unwrap()
        ),
    );
}

#[test]
fn c12_sumset_oracle_equivalence() {
    let start = Instant::now();
    for piece in [Piece::king(), Piece::taxicab(), knight(1, 2), knight(2, 3)] {
        let mut first_fold: BTreeMap<LatticePoint, u32> = BTreeMap::from([(LatticePoint::ORIGIN, 0)]);
        for (i, fold) in SumsetFolds::new(&piece).take(24).enumerate() {
            for p in fold {
                if p.max_norm() <= 6 {
                    first_fold.entry(p).or_insert(i as u32 + 1);
                }
            }
        }
        let field = reach::compute_field_default(&piece, 6).unwrap();
        for (p, d) in field.iter_box() {
            assert_eq!(first_fold.get(&p).copied(), d, "{piece} at {p}");
        }
        assert_eq!(first_fold.len(), 169);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
    report(12, "sumset folding = BFS distance on B_6", format!("4 pieces x 169 points, {elapsed:?}"));
}

#[test]
fn c13_primitivity_criterion() {
    let mut agree = 0;
    for b in 2..=8u64 {
        for a in 1..b {
            let params = kp(a, b);
            let field = reach::compute_field_default(&knight(a, b), 3).unwrap();
            assert_eq!(field.covers_box(), is_primitive_knight(params), "({a},{b})");
            agree += 1;
        }
    }
    report(13, "gcd/parity predicate = BFS coverage of B_3", format!("{agree} pairs with 1 <= a < b <= 8"));
}
