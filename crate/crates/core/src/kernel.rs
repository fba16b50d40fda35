//! Exact rational scalars, points, planes and the geometric predicates built on them.
//!
//! Nothing in this module rounds. Rationals are `num_rational::BigRational`,
//! which keeps every value reduced with a positive denominator, so structural
//! equality is value equality.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Parses the text form `p/q` or `p` (decimal integers, optional leading minus
/// on the numerator, positive denominator).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Domain(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        None => parse_integer(s).map(Rational::from_integer).ok_or_else(bad),
        Some((n, d)) => {
            let num = parse_integer(n).ok_or_else(bad)?;
            if d.starts_with('-') {
                return Err(bad());
            }
            let den = parse_integer(d).ok_or_else(bad)?;
            if den.is_zero() {
                return Err(Error::Domain(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Text form used by every file format: `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{r}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A point (or vector) in 3-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(int(x), int(y), int(z))
    }

    pub fn zero() -> Self {
        Point3::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Point3) -> Rational {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn scale(&self, k: &Rational) -> Point3 {
        Point3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn midpoint(&self, other: &Point3) -> Point3 {
        let half = frac(1, 2);
        (self + other).scale(&half)
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Point3, t: &Rational) -> Point3 {
        self + &(other - self).scale(t)
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn is_integral(&self) -> bool {
        self.coords().iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl<'a> Add<&'a Point3> for &'a Point3 {
    type Output = Point3;
    fn add(self, rhs: &Point3) -> Point3 {
        Point3::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl<'a> Sub<&'a Point3> for &'a Point3 {
    type Output = Point3;
    fn sub(self, rhs: &Point3) -> Point3 {
        Point3::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl<'a> Mul<&'a Rational> for &'a Point3 {
    type Output = Point3;
    fn mul(self, k: &Rational) -> Point3 {
        self.scale(k)
    }
}

/// A point in a coordinate projection plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub u: Rational,
    pub v: Rational,
}

impl Point2 {
    pub fn new(u: Rational, v: Rational) -> Self {
        Point2 { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        Point2::new(int(u), int(v))
    }

    fn minus(&self, o: &Point2) -> Point2 {
        Point2::new(&self.u - &o.u, &self.v - &o.v)
    }

    fn dot(&self, o: &Point2) -> Rational {
        &self.u * &o.u + &self.v * &o.v
    }

    fn cross(&self, o: &Point2) -> Rational {
        &self.u * &o.v - &self.v * &o.u
    }

    fn along(&self, dir: &Point2, t: &Rational) -> Point2 {
        Point2::new(&self.u + &dir.u * t, &self.v + &dir.v * t)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// The plane `a*x + b*y + c*z + d = 0`; `plane_side` reports the sign of the
/// left-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plane {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Plane {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::Domain("plane normal is the zero vector".into()));
        }
        Ok(Plane { a, b, c, d })
    }

    /// Plane with the given normal passing through `p`.
    pub fn through(normal: &Point3, p: &Point3) -> Result<Self> {
        let d = -normal.dot(p);
        Plane::new(normal.x.clone(), normal.y.clone(), normal.z.clone(), d)
    }

    /// Plane `normal . x = offset`.
    pub fn with_offset(normal: &Point3, offset: &Rational) -> Result<Self> {
        Plane::new(normal.x.clone(), normal.y.clone(), normal.z.clone(), -offset)
    }

    pub fn normal(&self) -> Point3 {
        Point3::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn eval(&self, p: &Point3) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c * &p.z + &self.d
    }

    pub fn flipped(&self) -> Plane {
        Plane {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Same half-space, scaled so the first non-zero normal component is ±1.
    pub fn canonical(&self) -> Plane {
        let lead = [&self.a, &self.b, &self.c]
            .into_iter()
            .find(|c| !c.is_zero())
            .expect("plane normal is non-zero")
            .abs();
        Plane {
            a: &self.a / &lead,
            b: &self.b / &lead,
            c: &self.c / &lead,
            d: &self.d / &lead,
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment3 {
    pub p: Point3,
    pub q: Point3,
}

impl Segment3 {
    pub fn new(p: Point3, q: Point3) -> Result<Self> {
        if p == q {
            return Err(Error::Degenerate(format!("zero-length segment at {p}")));
        }
        Ok(Segment3 { p, q })
    }

    pub fn direction(&self) -> Point3 {
        &self.q - &self.p
    }

    pub fn at(&self, t: &Rational) -> Point3 {
        self.p.lerp(&self.q, t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment2 {
    pub p: Point2,
    pub q: Point2,
}

impl Segment2 {
    pub fn new(p: Point2, q: Point2) -> Result<Self> {
        if p == q {
            return Err(Error::Degenerate(format!("zero-length segment at {p}")));
        }
        Ok(Segment2 { p, q })
    }
}

/// Sign of `|b - a, c - a|`: positive for a counterclockwise turn.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> Sign {
    Sign::of(&b.minus(a).cross(&c.minus(a)))
}

/// Sign of `((b - a) x (c - a)) . (d - a)`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    Sign::of(&(b - a).cross(&(c - a)).dot(&(d - a)))
}

pub fn plane_side(plane: &Plane, p: &Point3) -> Sign {
    Sign::of(&plane.eval(p))
}

pub fn collinear3(a: &Point3, b: &Point3, c: &Point3) -> bool {
    (b - a).cross(&(c - a)).is_zero()
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seg2Intersection {
    Empty,
    /// Unique common point with its parameters along the first and second segment.
    Point {
        point: Point2,
        alpha: Rational,
        beta: Rational,
    },
    Overlap,
}

fn unit_interval(t: &Rational) -> bool {
    !t.is_negative() && *t <= Rational::one()
}

pub fn seg2_intersection(s: &Segment2, t: &Segment2) -> Seg2Intersection {
    let r = s.q.minus(&s.p);
    let w = t.q.minus(&t.p);
    let offset = t.p.minus(&s.p);
    let denom = r.cross(&w);
    if !denom.is_zero() {
        let alpha = offset.cross(&w) / &denom;
        let beta = offset.cross(&r) / &denom;
        if unit_interval(&alpha) && unit_interval(&beta) {
            let point = s.p.along(&r, &alpha);
            return Seg2Intersection::Point { point, alpha, beta };
        }
        return Seg2Intersection::Empty;
    }
    if !offset.cross(&r).is_zero() {
        return Seg2Intersection::Empty;
    }
    // Collinear: intersect parameter intervals along s.
    let rr = r.dot(&r);
    let t0 = offset.dot(&r) / &rr;
    let t1 = t.q.minus(&s.p).dot(&r) / &rr;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = if lo.is_negative() { Rational::zero() } else { lo };
    let hi = if hi > Rational::one() { Rational::one() } else { hi };
    if lo > hi {
        Seg2Intersection::Empty
    } else if lo == hi {
        let point = s.p.along(&r, &lo);
        let ww = w.dot(&w);
        let beta = point.minus(&t.p).dot(&w) / ww;
        Seg2Intersection::Point { point, alpha: lo, beta }
    } else {
        Seg2Intersection::Overlap
    }
}

/// Exact classification of how two 3D segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seg3Contact {
    Disjoint,
    /// Single common point that is an endpoint of at least one segment.
    Touching(Point3),
    /// Single common point interior to both segments.
    Crossing(Point3),
    /// Collinear segments sharing more than one point.
    Overlap,
}

fn is_endpoint(t: &Rational) -> bool {
    t.is_zero() || t.is_one()
}

pub fn seg3_contact(s: &Segment3, t: &Segment3) -> Seg3Contact {
    let r = s.direction();
    let w = t.direction();
    let offset = &t.p - &s.p;
    let n = r.cross(&w);
    let single = |alpha: Rational, beta: Rational| {
        let point = s.at(&alpha);
        if is_endpoint(&alpha) || is_endpoint(&beta) {
            Seg3Contact::Touching(point)
        } else {
            Seg3Contact::Crossing(point)
        }
    };
    if !n.is_zero() {
        if !offset.dot(&n).is_zero() {
            return Seg3Contact::Disjoint;
        }
        let nn = n.dot(&n);
        let alpha = offset.cross(&w).dot(&n) / &nn;
        let beta = offset.cross(&r).dot(&n) / &nn;
        if unit_interval(&alpha) && unit_interval(&beta) {
            return single(alpha, beta);
        }
        return Seg3Contact::Disjoint;
    }
    if !offset.cross(&r).is_zero() {
        return Seg3Contact::Disjoint;
    }
    let rr = r.dot(&r);
    let t0 = offset.dot(&r) / &rr;
    let t1 = (&t.q - &s.p).dot(&r) / &rr;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = if lo.is_negative() { Rational::zero() } else { lo };
    let hi = if hi > Rational::one() { Rational::one() } else { hi };
    if lo > hi {
        Seg3Contact::Disjoint
    } else if lo == hi {
        let ww = w.dot(&w);
        let beta = (&s.at(&lo) - &t.p).dot(&w) / ww;
        single(lo, beta)
    } else {
        Seg3Contact::Overlap
    }
}

/// Drops the coordinate along which `normal` has a non-zero component, giving a
/// projection that is injective on the plane with that normal.
pub(crate) fn dominant_drop(normal: &Point3) -> usize {
    let comps = [normal.x.abs(), normal.y.abs(), normal.z.abs()];
    let mut best = 0;
    for i in 1..3 {
        if comps[i] > comps[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn drop_coord(p: &Point3, axis: usize) -> Point2 {
    match axis {
        0 => Point2::new(p.y.clone(), p.z.clone()),
        1 => Point2::new(p.x.clone(), p.z.clone()),
        _ => Point2::new(p.x.clone(), p.y.clone()),
    }
}

/// Whether `p`, assumed coplanar with the non-degenerate triangle `abc`, lies in
/// the closed triangle.
fn coplanar_in_triangle(a: &Point3, b: &Point3, c: &Point3, p: &Point3) -> bool {
    let axis = dominant_drop(&(b - a).cross(&(c - a)));
    let (a2, b2, c2, p2) = (
        drop_coord(a, axis),
        drop_coord(b, axis),
        drop_coord(c, axis),
        drop_coord(p, axis),
    );
    let s1 = orient2d(&a2, &b2, &p2);
    let s2 = orient2d(&b2, &c2, &p2);
    let s3 = orient2d(&c2, &a2, &p2);
    let has_neg = [s1, s2, s3].contains(&Sign::Negative);
    let has_pos = [s1, s2, s3].contains(&Sign::Positive);
    !(has_neg && has_pos)
}

/// Returns a common point of segment `s` and the closed triangle `abc`, if any.
/// Degenerate (collinear) triangles are handled as the union of their edges.
pub fn segment_triangle_point(s: &Segment3, a: &Point3, b: &Point3, c: &Point3) -> Option<Point3> {
    let normal = (b - a).cross(&(c - a));
    if normal.is_zero() {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            if u == v {
                continue;
            }
            let edge = Segment3 {
                p: u.clone(),
                q: v.clone(),
            };
            match seg3_contact(s, &edge) {
                Seg3Contact::Disjoint => {}
                Seg3Contact::Touching(p) | Seg3Contact::Crossing(p) => return Some(p),
                Seg3Contact::Overlap => return Some(overlap_point(s, &edge)),
            }
        }
        return None;
    }
    let dp = normal.dot(&(&s.p - a));
    let dq = normal.dot(&(&s.q - a));
    if (dp.is_positive() && dq.is_positive()) || (dp.is_negative() && dq.is_negative()) {
        return None;
    }
    if dp.is_zero() && dq.is_zero() {
        if coplanar_in_triangle(a, b, c, &s.p) {
            return Some(s.p.clone());
        }
        if coplanar_in_triangle(a, b, c, &s.q) {
            return Some(s.q.clone());
        }
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let edge = Segment3 {
                p: u.clone(),
                q: v.clone(),
            };
            match seg3_contact(s, &edge) {
                Seg3Contact::Disjoint => {}
                Seg3Contact::Touching(p) | Seg3Contact::Crossing(p) => return Some(p),
                Seg3Contact::Overlap => return Some(overlap_point(s, &edge)),
            }
        }
        return None;
    }
    let t = &dp / (&dp - &dq);
    let p = s.at(&t);
    coplanar_in_triangle(a, b, c, &p).then_some(p)
}

fn overlap_point(s: &Segment3, t: &Segment3) -> Point3 {
    // Collinear overlap: one of the four endpoints lies on the other segment.
    let on = |x: &Point3, seg: &Segment3| {
        let d = seg.direction();
        let k = (x - &seg.p).dot(&d) / d.dot(&d);
        unit_interval(&k)
    };
    for p in [&s.p, &s.q] {
        if on(p, t) {
            return p.clone();
        }
    }
    if on(&t.p, s) {
        t.p.clone()
    } else {
        t.q.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(u: i64, v: i64) -> Point2 {
        Point2::from_ints(u, v)
    }

    fn s2(a: (i64, i64), b: (i64, i64)) -> Segment2 {
        Segment2::new(p2(a.0, a.1), p2(b.0, b.1)).unwrap()
    }

    fn s3(a: (i64, i64, i64), b: (i64, i64, i64)) -> Segment3 {
        Segment3::new(Point3::from_ints(a.0, a.1, a.2), Point3::from_ints(b.0, b.1, b.2)).unwrap()
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("17").unwrap(), int(17));
        assert_eq!(format_rational(&frac(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(-5)), "-5");
        for bad in ["", "-", "1/0", "1/-2", "+3", "1.5", " 2", "a/b", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn orient2d_examples() {
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 0), &p2(0, 1)), Sign::Positive);
        assert_eq!(orient2d(&p2(0, 0), &p2(1, 1), &p2(2, 2)), Sign::Zero);
        assert_eq!(orient2d(&p2(0, 0), &p2(0, 1), &p2(1, 0)), Sign::Negative);
    }

    #[test]
    fn seg2_examples() {
        assert_eq!(
            seg2_intersection(&s2((0, 0), (2, 2)), &s2((0, 2), (2, 0))),
            Seg2Intersection::Point {
                point: p2(1, 1),
                alpha: frac(1, 2),
                beta: frac(1, 2)
            }
        );
        assert_eq!(
            seg2_intersection(&s2((0, 0), (1, 0)), &s2((0, 1), (1, 1))),
            Seg2Intersection::Empty
        );
        assert_eq!(
            seg2_intersection(&s2((0, 0), (2, 0)), &s2((1, 0), (3, 0))),
            Seg2Intersection::Overlap
        );
        // Collinear, touching at one endpoint.
        assert_eq!(
            seg2_intersection(&s2((0, 0), (2, 0)), &s2((4, 0), (2, 0))),
            Seg2Intersection::Point {
                point: p2(2, 0),
                alpha: int(1),
                beta: int(1)
            }
        );
    }

    #[test]
    fn plane_side_examples() {
        let z0 = Plane::new(int(0), int(0), int(1), int(0)).unwrap();
        assert_eq!(plane_side(&z0, &Point3::from_ints(5, 7, 0)), Sign::Zero);
        assert_eq!(plane_side(&z0, &Point3::from_ints(0, 0, -3)), Sign::Negative);
        assert!(Plane::new(int(0), int(0), int(0), int(1)).is_err());
    }

    #[test]
    fn collinear3_examples() {
        let p = Point3::from_ints;
        assert!(collinear3(&p(0, 0, 0), &p(1, 1, 1), &p(2, 2, 2)));
        assert!(!collinear3(&p(0, 9, 20), &p(-15, -95, -50), &p(40, 80, -20)));
        assert!(!collinear3(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0)));
    }

    #[test]
    fn seg3_examples() {
        assert_eq!(
            seg3_contact(&s3((0, 0, 0), (1, 0, 0)), &s3((0, 0, 1), (1, 0, 1))),
            Seg3Contact::Disjoint
        );
        assert_eq!(
            seg3_contact(&s3((0, 0, 0), (2, 0, 0)), &s3((1, 0, 0), (1, 1, 0))),
            Seg3Contact::Touching(Point3::from_ints(1, 0, 0))
        );
        assert_eq!(
            seg3_contact(&s3((0, 0, 0), (2, 2, 2)), &s3((2, 0, 0), (0, 2, 2))),
            Seg3Contact::Crossing(Point3::from_ints(1, 1, 1))
        );
        assert_eq!(
            seg3_contact(&s3((0, 0, 0), (2, 0, 0)), &s3((1, 0, 0), (3, 0, 0))),
            Seg3Contact::Overlap
        );
        // Skew lines.
        assert_eq!(
            seg3_contact(&s3((0, 0, 0), (2, 0, 0)), &s3((1, -1, 1), (1, 1, 1))),
            Seg3Contact::Disjoint
        );
    }

    #[test]
    fn plane_canonical_form() {
        let p = Plane::new(int(-4), int(2), int(0), int(8)).unwrap();
        let c = p.canonical();
        assert_eq!(c, Plane::new(int(-1), frac(1, 2), int(0), int(2)).unwrap());
        assert_eq!(p.flipped().canonical(), c.flipped());
    }

    #[test]
    fn segment_triangle_cases() {
        let p = Point3::from_ints;
        let (a, b, c) = (p(0, 0, 0), p(4, 0, 0), p(0, 4, 0));
        // Pierces the interior.
        let hit = segment_triangle_point(&s3((1, 1, -1), (1, 1, 1)), &a, &b, &c);
        assert_eq!(hit, Some(p(1, 1, 0)));
        // Passes beside the hypotenuse.
        assert_eq!(segment_triangle_point(&s3((3, 3, -1), (3, 3, 1)), &a, &b, &c), None);
        // Coplanar and crossing an edge from outside.
        let hit = segment_triangle_point(&s3((-1, 1, 0), (1, 1, 0)), &a, &b, &c);
        assert!(hit.is_some());
        // Coplanar and outside.
        assert_eq!(segment_triangle_point(&s3((5, 5, 0), (6, 5, 0)), &a, &b, &c), None);
        // Degenerate triangle.
        let hit = segment_triangle_point(&s3((1, -1, 0), (1, 1, 0)), &a, &b, &p(2, 0, 0));
        assert_eq!(hit, Some(p(1, 0, 0)));
    }
}
