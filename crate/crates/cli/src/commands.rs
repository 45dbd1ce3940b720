//! One function per subcommand, each producing a [`Table`].

use leaper_core::closed_form::{self, PiecewiseCdf};
use leaper_core::estimators::{self, Normalizer};
use leaper_core::reach;
use leaper_core::{Error, KnightParams, Piece, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::table::{Cell, Table};

/// Piece selector as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceSpec {
    King,
    Taxicab,
    Knight { a: u64, b: u64 },
    Fibo { n: u64 },
}

impl PieceSpec {
    pub fn parse(tokens: &[String]) -> Result<Self, String> {
        let num = |s: &String| s.parse::<u64>().map_err(|_| format!("expected a positive integer, got {s:?}"));
        match tokens {
            [kind] if kind == "king" => Ok(PieceSpec::King),
            [kind] if kind == "taxicab" => Ok(PieceSpec::Taxicab),
            [kind, a, b] if kind == "knight" => Ok(PieceSpec::Knight { a: num(a)?, b: num(b)? }),
            [kind, n] if kind == "fibo" => Ok(PieceSpec::Fibo { n: num(n)? }),
            _ => Err(format!(
                "unrecognised piece {:?}; expected king | taxicab | knight A B | fibo N",
                tokens.join(" ")
            )),
        }
    }

    /// Knight parameters, for knight and Fibonacci-knight specs.
    pub fn knight_params(self) -> Result<Option<KnightParams>, Error> {
        match self {
            PieceSpec::Knight { a, b } => KnightParams::new(a, b).map(Some),
            PieceSpec::Fibo { n } => closed_form::fiboknight_params(n).map(|f| Some(f.params)),
            PieceSpec::King | PieceSpec::Taxicab => Ok(None),
        }
    }

    pub fn build(self) -> Result<Piece, Error> {
        match self {
            PieceSpec::King => Ok(Piece::king()),
            PieceSpec::Taxicab => Ok(Piece::taxicab()),
            _ => Piece::knight(self.knight_params()?.expect("knight spec")),
        }
    }

    /// Builds the piece, insisting on primitivity for knights.
    pub fn build_primitive(self) -> Result<Piece, Error> {
        if let Some(params) = self.knight_params()? {
            params.require_primitive()?;
        }
        self.build()
    }
}

/// Settings shared by every subcommand after parsing.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub piece: Option<PieceSpec>,
    pub radius: u32,
    pub margin: Option<u32>,
    pub normalizer: &'static str,
    pub grid_resolution: Option<u32>,
}

fn exact(r: Rational) -> Cell {
    Cell::Exact(r)
}

fn int(v: impl Into<i64>) -> Cell {
    Cell::Int(v.into())
}

pub fn cmd_distance(piece: &Piece, radius: u32, margin: Option<u32>) -> Result<Table, Error> {
    let margin = margin.unwrap_or_else(|| reach::default_margin(piece));
    let field = reach::compute_field(piece, radius, margin)?;
    let mut table = Table::new(vec!["x", "y", "distance"]);
    for (p, d) in field.iter_box() {
        let d = d.map_or(-1, i64::from);
        table.push(vec![int(p.x), int(p.y), int(d)]);
    }
    Ok(table)
}

/// `h, h/2, h/4, …` down to 1, ascending.
pub fn doubling_schedule(h: u32) -> Vec<u32> {
    let mut hs: Vec<u32> = std::iter::successors(Some(h), |&h| (h > 1).then_some(h / 2)).collect();
    hs.reverse();
    hs
}

/// Velocity of the king against itself is 1; knights use the closed form;
/// other pieces have none.
fn closed_velocity(spec: PieceSpec) -> Result<Option<Rational>, Error> {
    match spec {
        PieceSpec::King => Ok(Some(Rational::one())),
        PieceSpec::Taxicab => Ok(None),
        _ => {
            let params = spec.knight_params()?.expect("knight spec");
            // (a, b) and (b, a) generate the same piece.
            let ordered = KnightParams::new(params.a.min(params.b), params.a.max(params.b))?;
            closed_form::velocity_formula(ordered).map(Some)
        }
    }
}

pub fn cmd_velocity(
    spec: PieceSpec,
    radius: u32,
    margin: Option<u32>,
    normalizer: Normalizer,
) -> Result<Table, Error> {
    let piece = spec.build_primitive()?;
    let target = closed_velocity(spec)?;
    let margin = margin.unwrap_or_else(|| reach::default_margin(&piece));
    let estimates: Vec<_> = doubling_schedule(radius)
        .into_par_iter()
        .map(|h| {
            let field = reach::compute_field(&piece, h, margin)?;
            estimators::velocity_from_field(&field, normalizer)
        })
        .collect::<Result<_, Error>>()?;

    let mut table = Table::new(vec![
        "piece",
        "h",
        "normalizer",
        "mean_distance",
        "velocity",
        "closed_form",
        "closed_form_decimal",
        "abs_error",
    ]);
    for est in estimates {
        let (closed, closed_dec, err) = match &target {
            Some(t) => (
                exact(t.clone()),
                Cell::decimal_of(t),
                Cell::decimal_of(&(&est.velocity - t).abs()),
            ),
            None => (Cell::Empty, Cell::Empty, Cell::Empty),
        };
        table.push(vec![
            Cell::Text(est.piece.clone()),
            int(est.h),
            Cell::Text(est.normalizer.to_string()),
            exact(est.mean_distance.clone()),
            Cell::decimal_of(&est.velocity),
            closed,
            closed_dec,
            err,
        ]);
    }
    Ok(table)
}

pub fn cmd_cdf(spec: PieceSpec, radius: u32, margin: Option<u32>, resolution: u32) -> Result<Table, Error> {
    let params = spec
        .knight_params()?
        .ok_or_else(|| Error::InvalidArgument("cdf needs a knight or fibo piece".into()))?
        .require_formula_domain()?;
    let closed = PiecewiseCdf::new(params)?;
    let piece = Piece::knight(params)?;
    let margin = margin.unwrap_or_else(|| reach::default_margin(&piece));
    let field = reach::compute_field(&piece, radius, margin)?;
    let est = estimators::cdf_from_field(&field, params)?;
    if resolution == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive".into()));
    }

    let span = closed.t_high() + Rational::new(BigInt::from(1), BigInt::from(10));
    let mut table = Table::new(vec!["kind", "t", "empirical", "closed_form", "gap"]);
    let mut grid_sup = Rational::from_integer(0.into());
    for i in 0..=resolution {
        let t = &span * Rational::new(BigInt::from(i), BigInt::from(resolution));
        let emp = est.query(&t);
        let cl = closed.eval(&t);
        let gap = (&emp - &cl).abs();
        if gap > grid_sup {
            grid_sup = gap.clone();
        }
        table.push(vec![
            Cell::Text("grid".into()),
            Cell::decimal_of(&t),
            Cell::decimal_of(&emp),
            Cell::decimal_of(&cl),
            Cell::decimal_of(&gap),
        ]);
    }
    table.push(vec![
        Cell::Text("grid_sup_gap".into()),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::decimal_of(&grid_sup),
    ]);
    let sup = est.sup_gap(&closed);
    table.push(vec![
        Cell::Text(if sup.from_left { "sup_gap_left" } else { "sup_gap" }.into()),
        Cell::decimal_of(&sup.at),
        Cell::Empty,
        Cell::Empty,
        Cell::decimal_of(&sup.gap),
    ]);
    Ok(table)
}

const PHI_BITS: u32 = 128;

pub fn cmd_fibo(count: u32) -> Result<Table, Error> {
    let mut table = Table::new(vec![
        "n",
        "a",
        "b",
        "primitive",
        "velocity",
        "velocity_decimal",
        "previous_primitive",
        "ratio_to_previous",
        "phi_power_gap",
    ]);
    let mut previous: Option<(u64, Rational)> = None;
    for n in 1..=u64::from(count) {
        let fk = closed_form::fiboknight_params(n)?;
        let mut row = vec![
            int(n as i64),
            int(fk.params.a as i64),
            int(fk.params.b as i64),
            Cell::Bool(fk.primitive),
        ];
        if !fk.primitive {
            row.extend(std::iter::repeat_n(Cell::Empty, 5));
            table.push(row);
            continue;
        }
        let v = closed_form::velocity_formula(fk.params)?;
        row.push(exact(v.clone()));
        row.push(Cell::decimal_of(&v));
        match &previous {
            Some((m, pv)) => {
                let ratio = &v / pv;
                let gap = closed_form::golden_power_gap(&ratio, n - m, PHI_BITS);
                row.push(int(*m as i64));
                row.push(Cell::decimal_of(&ratio));
                row.push(Cell::decimal_of(&gap));
            }
            None => row.extend(std::iter::repeat_n(Cell::Empty, 3)),
        }
        previous = Some((n, v));
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_sumset(piece: &Piece, radius: u32) -> Result<Table, Error> {
    let sizes = reach::sumset_sizes(piece, radius)?;
    let area = reach::hull_area(piece).ok();
    let mut table = Table::new(vec!["l", "size", "shell_size", "size_over_l2", "hull_area"]);
    for l in 1..=radius as usize {
        let l2 = (l * l) as u64;
        table.push(vec![
            int(l as i64),
            int(sizes[l] as i64),
            int((sizes[l] - sizes[l - 1]) as i64),
            Cell::decimal_of(&Rational::new(BigInt::from(sizes[l]), BigInt::from(l2))),
            area.clone().map_or(Cell::Empty, exact),
        ]);
    }
    Ok(table)
}
