//! Control polygons, exact de Casteljau evaluation and subdivision, hodographs
//! and coordinate monotonicity.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::kernel::{frac, Point3, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn of(self, p: &Point3) -> &Rational {
        match self {
            Axis::X => &p.x,
            Axis::Y => &p.y,
            Axis::Z => &p.z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
        }
    }
}

/// Set of coordinate axes, ordered X < Y < Z.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AxisSet(u8);

impl AxisSet {
    pub fn empty() -> Self {
        AxisSet(0)
    }

    pub fn insert(&mut self, axis: Axis) {
        self.0 |= 1 << axis.index();
    }

    pub fn contains(&self, axis: Axis) -> bool {
        self.0 & (1 << axis.index()) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Axis> + '_ {
        Axis::ALL.into_iter().filter(|a| self.contains(*a))
    }

    pub fn first(&self) -> Option<Axis> {
        self.iter().next()
    }
}

impl FromIterator<Axis> for AxisSet {
    fn from_iter<I: IntoIterator<Item = Axis>>(iter: I) -> Self {
        let mut set = AxisSet::empty();
        for a in iter {
            set.insert(a);
        }
        set
    }
}

impl fmt::Display for AxisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in self.iter() {
            if !first {
                f.write_str(", ")?;
            }
            f.write_str(a.name())?;
            first = false;
        }
        Ok(())
    }
}

/// Ordered control points `P_0 .. P_n` of a degree-`n` Bézier curve.
///
/// A closed curve repeats its first point at the end, as in the usual vertex
/// listing of a stick knot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlPolygon {
    points: Vec<Point3>,
    closed: bool,
}

impl ControlPolygon {
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain(format!(
                "control polygon needs at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(i) = (1..points.len()).find(|&i| points[i] == points[i - 1]) {
            return Err(Error::Degenerate(format!(
                "control points {} and {i} coincide at {}",
                i - 1,
                points[i]
            )));
        }
        Ok(Self::from_points_unchecked(points))
    }

    /// No validation; used for derived polygons such as hodographs, which may
    /// legitimately repeat points or have a single point.
    pub fn from_points_unchecked(points: Vec<Point3>) -> Self {
        let closed = points.len() >= 2 && points.first() == points.last();
        ControlPolygon { points, closed }
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point3> {
        self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn first(&self) -> &Point3 {
        &self.points[0]
    }

    pub fn last(&self) -> &Point3 {
        &self.points[self.points.len() - 1]
    }

    pub fn is_integral(&self) -> bool {
        self.points.iter().all(Point3::is_integral)
    }

    /// Every coordinate multiplied by `k`.
    pub fn scaled(&self, k: &Rational) -> ControlPolygon {
        ControlPolygon::from_points_unchecked(self.points.iter().map(|p| p.scale(k)).collect())
    }
}

fn check_closed_unit(t: &Rational) -> Result<()> {
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::Domain(format!("curve parameter {t} outside [0, 1]")));
    }
    Ok(())
}

/// Full de Casteljau triangle at `t`: returns the first and last column.
fn casteljau_columns(points: &[Point3], t: &Rational) -> (Vec<Point3>, Vec<Point3>) {
    let n = points.len();
    let mut row: Vec<Point3> = points.to_vec();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    left.push(row[0].clone());
    right.push(row[n - 1].clone());
    for _ in 1..n {
        row = row.windows(2).map(|w| w[0].lerp(&w[1], t)).collect();
        left.push(row[0].clone());
        right.push(row[row.len() - 1].clone());
    }
    right.reverse();
    (left, right)
}

/// Exact point on the curve at `t` in `[0, 1]`.
pub fn evaluate(cp: &ControlPolygon, t: &Rational) -> Result<Point3> {
    check_closed_unit(t)?;
    let mut row: Vec<Point3> = cp.points.clone();
    while row.len() > 1 {
        row = row.windows(2).map(|w| w[0].lerp(&w[1], t)).collect();
    }
    Ok(row.pop().expect("non-empty control polygon"))
}

/// Splits the curve at `t` in `(0, 1)` into the control polygons of `[0, t]`
/// and `[t, 1]`.
pub fn decasteljau_split(cp: &ControlPolygon, t: &Rational) -> Result<(ControlPolygon, ControlPolygon)> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::Domain(format!("split parameter {t} outside (0, 1)")));
    }
    let (left, right) = casteljau_columns(&cp.points, t);
    Ok((
        ControlPolygon::from_points_unchecked(left),
        ControlPolygon::from_points_unchecked(right),
    ))
}

/// The `2^level` sub-control polygons obtained by repeated splitting at 1/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionForest {
    pub level: u32,
    pub pieces: Vec<ControlPolygon>,
    /// Factor applied to the input before subdividing (1 when unscaled).
    pub scale: Rational,
}

impl SubdivisionForest {
    /// The PL curve formed by the pieces, with shared endpoints listed once.
    pub fn refinement_points(&self) -> Vec<Point3> {
        let mut out: Vec<Point3> = Vec::new();
        for (k, piece) in self.pieces.iter().enumerate() {
            let skip = usize::from(k > 0);
            out.extend(piece.points()[skip..].iter().cloned());
        }
        out
    }
}

pub fn subdivide_levels(cp: &ControlPolygon, level: u32) -> SubdivisionForest {
    let half = frac(1, 2);
    let mut pieces = alloc::vec![cp.clone()];
    for _ in 0..level {
        let mut next = Vec::with_capacity(pieces.len() * 2);
        for piece in &pieces {
            let (l, r) = casteljau_columns(&piece.points, &half);
            next.push(ControlPolygon::from_points_unchecked(l));
            next.push(ControlPolygon::from_points_unchecked(r));
        }
        pieces = next;
    }
    SubdivisionForest {
        level,
        pieces,
        scale: Rational::one(),
    }
}

/// Exponent `m = level * (degree + 1) + 1` of the power-of-two scaling that
/// keeps every subdivision point integral up to `level`.
pub fn scaling_exponent(degree: usize, level: u32) -> u32 {
    level * (degree as u32 + 1) + 1
}

/// Multiplies every coordinate of an integer control polygon by `2^m`.
pub fn scale_for_subdivision(cp: &ControlPolygon, level: u32) -> Result<(ControlPolygon, u32)> {
    if !cp.is_integral() {
        return Err(Error::Domain(
            "integer scaling needs integer control point coordinates".into(),
        ));
    }
    let m = scaling_exponent(cp.degree(), level);
    let factor = Rational::from_integer(BigInt::one() << m as usize);
    Ok((cp.scaled(&factor), m))
}

/// Integer scaling followed by subdivision; the forest records `2^m` as its scale.
pub fn subdivide_scaled(cp: &ControlPolygon, level: u32) -> Result<(SubdivisionForest, u32)> {
    let (scaled, m) = scale_for_subdivision(cp, level)?;
    let mut forest = subdivide_levels(&scaled, level);
    forest.scale = Rational::from_integer(BigInt::one() << m as usize);
    Ok((forest, m))
}

/// Control polygon of the derivative: `n * (P_{i+1} - P_i)` for `i = 0 .. n-1`.
pub fn hodograph(cp: &ControlPolygon) -> Result<ControlPolygon> {
    let n = cp.degree();
    if n == 0 {
        return Err(Error::Domain("hodograph of a degree-0 curve".into()));
    }
    let k = Rational::from_integer(BigInt::from(n));
    let pts = cp.points.windows(2).map(|w| (&w[1] - &w[0]).scale(&k)).collect();
    Ok(ControlPolygon::from_points_unchecked(pts))
}

/// Axes along which the control points are strictly increasing or strictly
/// decreasing.
pub fn monotone_axes(cp: &ControlPolygon) -> AxisSet {
    Axis::ALL
        .into_iter()
        .filter(|&axis| {
            let coords: Vec<&Rational> = cp.points.iter().map(|p| axis.of(p)).collect();
            coords.windows(2).all(|w| w[0] < w[1]) || coords.windows(2).all(|w| w[0] > w[1])
        })
        .collect()
}

/// Whether all points of `cp` lie on one line (straight-line curves).
pub fn is_straight(cp: &ControlPolygon) -> bool {
    let p0 = cp.first();
    let Some(q) = cp.points.iter().find(|p| *p != p0) else {
        return true;
    };
    let dir = q - p0;
    cp.points.iter().all(|p| (p - p0).cross(&dir).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kernel::int;

    fn poly(pts: &[(i64, i64, i64)]) -> ControlPolygon {
        ControlPolygon::new(pts.iter().map(|&(x, y, z)| Point3::from_ints(x, y, z)).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!(ControlPolygon::new(alloc::vec![Point3::from_ints(1, 2, 3)]).is_err());
        assert!(ControlPolygon::new(alloc::vec![Point3::from_ints(1, 2, 3), Point3::from_ints(1, 2, 3)]).is_err());
        assert!(fixtures::k0().is_closed());
    }

    #[test]
    fn evaluate_endpoints_and_domain() {
        let cp = fixtures::k1();
        assert_eq!(evaluate(&cp, &int(0)).unwrap(), cp.points()[0]);
        assert_eq!(evaluate(&cp, &int(1)).unwrap(), *cp.last());
        assert!(evaluate(&cp, &frac(3, 2)).is_err());
        assert!(evaluate(&cp, &frac(-1, 2)).is_err());
    }

    #[test]
    fn split_straight_line_stays_straight() {
        let cp = poly(&[(0, 0, 0), (2, 2, 2), (6, 6, 6)]);
        let (l, r) = decasteljau_split(&cp, &frac(1, 2)).unwrap();
        let all: Vec<Point3> = l.points().iter().chain(r.points()).cloned().collect();
        assert!(is_straight(&ControlPolygon::from_points_unchecked(all)));
        assert_eq!(l.last(), r.first());
        assert!(decasteljau_split(&cp, &int(0)).is_err());
        assert!(decasteljau_split(&cp, &int(1)).is_err());
    }

    #[test]
    fn level_zero_forest_is_input() {
        let cp = fixtures::k0();
        let f = subdivide_levels(&cp, 0);
        assert_eq!(f.pieces, alloc::vec![cp]);
    }

    #[test]
    fn scaling_exponent_formula() {
        let (scaled, m) = scale_for_subdivision(&fixtures::k1(), 4).unwrap();
        assert_eq!(m, 29);
        assert_eq!(scaled.points()[0], Point3::from_ints(0, 4831838208, 10737418240));
        let (_, m0) = scale_for_subdivision(&fixtures::k1(), 0).unwrap();
        assert_eq!(m0, 1);
        let frac_cp = ControlPolygon::new(alloc::vec![
            Point3::new(frac(1, 2), int(0), int(0)),
            Point3::from_ints(1, 1, 1)
        ])
        .unwrap();
        assert!(scale_for_subdivision(&frac_cp, 2).is_err());
    }

    #[test]
    fn hodograph_examples() {
        let line = poly(&[(0, 0, 0), (1, 0, 0)]);
        assert_eq!(hodograph(&line).unwrap().points(), &[Point3::from_ints(1, 0, 0)]);
        let quad = poly(&[(0, 0, 0), (1, 1, 0), (2, 0, 0)]);
        assert_eq!(
            hodograph(&quad).unwrap().points(),
            &[Point3::from_ints(2, 2, 0), Point3::from_ints(2, -2, 0)]
        );
        let point = ControlPolygon::from_points_unchecked(alloc::vec![Point3::zero()]);
        assert!(hodograph(&point).is_err());
    }

    #[test]
    fn monotone_axes_excludes_constant_coordinate() {
        let cp = poly(&[(1, 0, 0), (1, 1, 2), (1, 2, 1)]);
        let axes = monotone_axes(&cp);
        assert!(!axes.contains(Axis::X));
        assert!(axes.contains(Axis::Y));
        assert!(!axes.contains(Axis::Z));
        assert_eq!(alloc::format!("{axes}"), "Y");
    }
}
