//! Ground-truth reachability: breadth-first distance fields, explicit
//! h-fold sumsets, shell decompositions and convex-hull areas.

use std::collections::BTreeSet;
use std::io::{self, Write};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Piece};
use crate::Rational;

const UNREACHABLE: u32 = u32::MAX;

/// Padding used when no margin is given: twice the longest move in the
/// 1-norm, i.e. `2(a + b)` for an (a, b)-knight.
pub fn default_margin(piece: &Piece) -> u32 {
    u32::try_from(2 * piece.span()).expect("move length fits u32")
}

/// Exact minimum move counts over the padded box `[-(h+m), h+m]²`.
///
/// Paths are confined to the padded box; queries are confined to the
/// reporting box `B_h`. Cells are stored densely, `x`-major, so a linear
/// scan visits points in lexicographic order.
#[derive(Debug, Clone)]
pub struct DistanceField {
    piece: Piece,
    radius: u32,
    margin: u32,
    half: i64,
    side: usize,
    cells: Vec<u32>,
}

/// Breadth-first frontier expansion from the origin.
pub fn compute_field(piece: &Piece, radius: u32, margin: u32) -> Result<DistanceField> {
    if radius == 0 {
        return Err(Error::InvalidRadius { min: 1, got: 0 });
    }
    let half = i64::from(radius) + i64::from(margin);
    let side = usize::try_from(2 * half + 1).expect("box side fits usize");
    let mut cells = vec![UNREACHABLE; side * side];

    // Moves that can never stay inside the box are dropped up front.
    let moves: Vec<(i64, i64)> = piece
        .moves()
        .iter()
        .filter(|m| m.max_norm() < side as u64)
        .map(|m| (m.x, m.y))
        .collect();

    let origin = (half as usize) * side + half as usize;
    cells[origin] = 0;
    let mut queue: Vec<u32> = Vec::with_capacity(side * side);
    queue.push(origin as u32);
    let side_i = side as i64;
    let mut head = 0;
    while head < queue.len() {
        let idx = queue[head] as usize;
        head += 1;
        let next = cells[idx] + 1;
        let (cx, cy) = ((idx / side) as i64, (idx % side) as i64);
        for &(dx, dy) in &moves {
            let (nx, ny) = (cx + dx, cy + dy);
            if nx < 0 || ny < 0 || nx >= side_i || ny >= side_i {
                continue;
            }
            let n = (nx * side_i + ny) as usize;
            if cells[n] == UNREACHABLE {
                cells[n] = next;
                queue.push(n as u32);
            }
        }
    }

    Ok(DistanceField {
        piece: piece.clone(),
        radius,
        margin,
        half,
        side,
        cells,
    })
}

/// [`compute_field`] with [`default_margin`].
pub fn compute_field_default(piece: &Piece, radius: u32) -> Result<DistanceField> {
    compute_field(piece, radius, default_margin(piece))
}

impl DistanceField {
    pub fn piece(&self) -> &Piece {
        &self.piece
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    /// Half-width `h + m` of the padded box.
    pub fn padded_radius(&self) -> i64 {
        self.half
    }

    fn index(&self, p: LatticePoint) -> Option<usize> {
        let (x, y) = (p.x + self.half, p.y + self.half);
        let side = self.side as i64;
        (0..side)
            .contains(&x)
            .then_some(())
            .filter(|_| (0..side).contains(&y))
            .map(|_| (x * side + y) as usize)
    }

    /// Distance to `p ∈ B_h`; `Ok(None)` means unreachable.
    pub fn distance(&self, p: LatticePoint) -> Result<Option<u32>> {
        if p.max_norm() > u64::from(self.radius) {
            return Err(Error::OutOfBox {
                point: p,
                radius: self.radius,
            });
        }
        Ok(self.padded_distance(p))
    }

    /// Distance anywhere in the padded box, `None` outside it or when
    /// unreachable. Values near the padded edge may exceed the true
    /// distance because paths cannot leave the box.
    pub fn padded_distance(&self, p: LatticePoint) -> Option<u32> {
        self.index(p)
            .map(|i| self.cells[i])
            .filter(|&d| d != UNREACHABLE)
    }

    /// Iterates `B_h` in lexicographic `(x, y)` order.
    pub fn iter_box(&self) -> impl Iterator<Item = (LatticePoint, Option<u32>)> + '_ {
        let r = i64::from(self.radius);
        (-r..=r).flat_map(move |x| {
            let base = ((x + self.half) * self.side as i64 + self.half) as usize;
            (-r..=r).map(move |y| {
                let d = self.cells[(base as i64 + y) as usize];
                (LatticePoint::new(x, y), (d != UNREACHABLE).then_some(d))
            })
        })
    }

    /// Iterates the whole padded box in lexicographic order.
    pub fn iter_padded(&self) -> impl Iterator<Item = (LatticePoint, Option<u32>)> + '_ {
        let side = self.side;
        let half = self.half;
        self.cells.iter().enumerate().map(move |(i, &d)| {
            let p = LatticePoint::new((i / side) as i64 - half, (i % side) as i64 - half);
            (p, (d != UNREACHABLE).then_some(d))
        })
    }

    /// Iterates the octant `h ≥ x ≥ y ≥ 0` of the reporting box.
    pub fn iter_octant(&self) -> impl Iterator<Item = (LatticePoint, Option<u32>)> + '_ {
        let r = i64::from(self.radius);
        (0..=r).flat_map(move |x| {
            (0..=x).map(move |y| {
                let p = LatticePoint::new(x, y);
                (p, self.padded_distance(p))
            })
        })
    }

    /// Largest distance in `B_h`, or `None` if some cell is unreachable.
    pub fn max_in_box(&self) -> Option<u32> {
        self.iter_box().try_fold(0, |acc, (_, d)| d.map(|d| acc.max(d)))
    }

    /// `true` iff every cell of `B_h` is reachable.
    pub fn covers_box(&self) -> bool {
        self.iter_box().all(|(_, d)| d.is_some())
    }

    /// Writes `x,y,distance` rows for `B_h` with a header line; unreachable
    /// cells are written as `-1`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,distance")?;
        for (p, d) in self.iter_box() {
            match d {
                Some(d) => writeln!(out, "{},{},{}", p.x, p.y, d)?,
                None => writeln!(out, "{},{},-1", p.x, p.y)?,
            }
        }
        Ok(())
    }
}

/// The exact h-fold sumset `hA`, by iterated Minkowski addition.
pub fn fold_sumset(piece: &Piece, h: u32) -> Result<BTreeSet<LatticePoint>> {
    if h == 0 {
        return Err(Error::InvalidArgument("fold count must be at least 1".into()));
    }
    Ok(SumsetFolds::new(piece).nth(h as usize - 1).expect("fold iterator is infinite"))
}

/// Yields `1A, 2A, 3A, …`.
#[derive(Debug, Clone)]
pub struct SumsetFolds<'a> {
    piece: &'a Piece,
    current: BTreeSet<LatticePoint>,
}

impl<'a> SumsetFolds<'a> {
    pub fn new(piece: &'a Piece) -> Self {
        SumsetFolds {
            piece,
            current: BTreeSet::from([LatticePoint::ORIGIN]),
        }
    }
}

impl Iterator for SumsetFolds<'_> {
    type Item = BTreeSet<LatticePoint>;

    fn next(&mut self) -> Option<Self::Item> {
        let next: BTreeSet<LatticePoint> = self
            .current
            .iter()
            .flat_map(|&p| self.piece.moves().iter().map(move |&m| p + m))
            .collect();
        self.current = next.clone();
        Some(next)
    }
}

/// `min { h ≥ 1 : p ∈ hA }` for `h ≤ max_folds`, with the origin mapped to 0.
pub fn fold_index(piece: &Piece, p: LatticePoint, max_folds: u32) -> Option<u32> {
    if p.is_origin() {
        return Some(0);
    }
    SumsetFolds::new(piece)
        .take(max_folds as usize)
        .position(|set| set.contains(&p))
        .map(|i| i as u32 + 1)
}

/// Level sets of the distance with the null move adjoined:
/// `shells[ℓ] = ℓA₀ \ (ℓ−1)A₀`.
#[derive(Debug, Clone)]
pub struct ShellDecomposition {
    piece: Piece,
    max_index: u32,
    shells: Vec<Vec<LatticePoint>>,
}

impl ShellDecomposition {
    pub fn piece(&self) -> &Piece {
        &self.piece
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    pub fn shell(&self, level: u32) -> &[LatticePoint] {
        &self.shells[level as usize]
    }

    pub fn shells(&self) -> &[Vec<LatticePoint>] {
        &self.shells
    }

    /// `|ℓA₀|` for `ℓ = 0..=h`.
    pub fn cumulative_sizes(&self) -> Vec<u64> {
        self.shells
            .iter()
            .scan(0u64, |acc, s| {
                *acc += s.len() as u64;
                Some(*acc)
            })
            .collect()
    }

    /// All points of `hA₀`, in shell order.
    pub fn region(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.shells.iter().flatten().copied()
    }
}

/// Shells up to index `h`.
///
/// A geodesic of length `ℓ ≤ h` never leaves `B_{ℓ·r}` where `r` is the
/// piece's longest move, so a field of radius `h·r` is exact on `hA₀`
/// without any padding.
pub fn shells(piece: &Piece, h: u32) -> Result<ShellDecomposition> {
    if h == 0 {
        return Err(Error::InvalidRadius { min: 1, got: 0 });
    }
    let radius = u32::try_from(u64::from(h) * piece.reach())
        .map_err(|_| Error::InvalidArgument(format!("shell radius overflows for h = {h}")))?;
    let field = compute_field(piece, radius, 0)?;
    let mut shells = vec![Vec::new(); h as usize + 1];
    for (p, d) in field.iter_padded() {
        if let Some(d) = d.filter(|&d| d <= h) {
            shells[d as usize].push(p);
        }
    }
    Ok(ShellDecomposition {
        piece: piece.clone(),
        max_index: h,
        shells,
    })
}

/// `|ℓA₀|` for `ℓ = 0..=h`, without materialising the shells.
pub fn sumset_sizes(piece: &Piece, h: u32) -> Result<Vec<u64>> {
    if h == 0 {
        return Err(Error::InvalidRadius { min: 1, got: 0 });
    }
    let radius = u32::try_from(u64::from(h) * piece.reach())
        .map_err(|_| Error::InvalidArgument(format!("shell radius overflows for h = {h}")))?;
    let field = compute_field(piece, radius, 0)?;
    let mut counts = vec![0u64; h as usize + 1];
    for d in field.cells.iter().filter(|&&d| d <= h) {
        counts[*d as usize] += 1;
    }
    Ok(counts
        .iter()
        .scan(0u64, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect())
}

/// Exact area of the convex hull of the move set.
pub fn hull_area(piece: &Piece) -> Result<Rational> {
    let hull = convex_hull(piece.moves());
    if hull.len() < 3 {
        return Err(Error::DegenerateHull(piece.name().to_string()));
    }
    let twice: i128 = hull
        .iter()
        .zip(hull.iter().cycle().skip(1))
        .map(|(p, q)| i128::from(p.x) * i128::from(q.y) - i128::from(q.x) * i128::from(p.y))
        .sum();
    Ok(Rational::new(BigInt::from(twice.abs()), BigInt::from(2)))
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    i128::from(a.x - o.x) * i128::from(b.y - o.y) - i128::from(a.y - o.y) * i128::from(b.x - o.x)
}

/// Andrew's monotone chain; returns hull vertices counter-clockwise with
/// collinear points removed.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
