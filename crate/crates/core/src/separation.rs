//! Exact disjointness certificates for pairs of convex point sets.
//!
//! A pair is first tested against a family of candidate planes (coordinate
//! planes, hull facet planes, and planes spanned by an edge of one hull and
//! parallel to an edge of the other). When none of those separates, an exact
//! feasibility solve either produces a common point or, through its Farkas
//! certificate, a separating plane. Every verdict carries a witness that can
//! be re-checked with `plane_side` or hull membership alone.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::ConvexHull3;
use crate::kernel::{frac, Plane, Point3, Rational, Sign};
use crate::lp::{feasibility, Feasibility};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationResult {
    /// The first set lies strictly on the negative side of `witness`, the second
    /// strictly on the positive side.
    Separated { witness: Plane },
    /// As `Separated`, except that the listed common points lie on `witness`.
    SharedPointsOnly { points: Vec<Point3>, witness: Plane },
    /// `witness` belongs to both sets and is not an allowed shared point.
    Overlapping { witness: Point3 },
}

impl SeparationResult {
    pub fn is_disjoint_modulo_shared(&self) -> bool {
        !matches!(self, SeparationResult::Overlapping { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SeparationResult::Separated { .. } => "separated",
            SeparationResult::SharedPointsOnly { .. } => "shared_points_only",
            SeparationResult::Overlapping { .. } => "overlapping",
        }
    }

    /// Same verdict with the roles of the two sets exchanged.
    pub fn swapped(&self) -> SeparationResult {
        match self {
            SeparationResult::Separated { witness } => SeparationResult::Separated {
                witness: witness.flipped(),
            },
            SeparationResult::SharedPointsOnly { points, witness } => SeparationResult::SharedPointsOnly {
                points: points.clone(),
                witness: witness.flipped(),
            },
            other => other.clone(),
        }
    }
}

/// Checks a verdict against the two point sets it claims to describe.
/// `contains_a` / `contains_b` decide membership for an overlap witness.
pub fn verify_separation(
    a: &[Point3],
    b: &[Point3],
    result: &SeparationResult,
    contains_a: impl Fn(&Point3) -> bool,
    contains_b: impl Fn(&Point3) -> bool,
) -> bool {
    let sides_ok = |witness: &Plane, shared: &[Point3]| {
        a.iter().all(|p| {
            let s = Sign::of(&witness.eval(p));
            s == Sign::Negative || (s == Sign::Zero && shared.contains(p))
        }) && b.iter().all(|p| {
            let s = Sign::of(&witness.eval(p));
            s == Sign::Positive || (s == Sign::Zero && shared.contains(p))
        })
    };
    match result {
        SeparationResult::Separated { witness } => sides_ok(witness, &[]),
        SeparationResult::SharedPointsOnly { points, witness } => {
            !points.is_empty() && points.iter().all(|p| witness.eval(p).is_zero()) && sides_ok(witness, points)
        }
        SeparationResult::Overlapping { witness } => contains_a(witness) && contains_b(witness),
    }
}

fn unit(axis: usize) -> Point3 {
    match axis {
        0 => Point3::from_ints(1, 0, 0),
        1 => Point3::from_ints(0, 1, 0),
        _ => Point3::from_ints(0, 0, 1),
    }
}

fn edge_dirs(hull: &ConvexHull3) -> Vec<Point3> {
    hull.edges()
        .into_iter()
        .map(|(i, j)| &hull.vertices[j] - &hull.vertices[i])
        .collect()
}

/// Candidate separating directions for two hulls, cheapest first. The
/// edge-pair cross products are produced lazily.
fn candidate_axes<'a>(a: &'a ConvexHull3, b: &'a ConvexHull3) -> impl Iterator<Item = Point3> + 'a {
    let coords = (0..3).map(unit);
    let normals = a.halfspaces().iter().chain(b.halfspaces()).map(Plane::normal);
    let cross = core::iter::once(()).flat_map(move |_| {
        let db = edge_dirs(b);
        edge_dirs(a)
            .into_iter()
            .flat_map(move |u| db.clone().into_iter().map(move |v| u.cross(&v)))
    });
    coords.chain(normals).chain(cross).filter(|n| !n.is_zero())
}

fn range(points: &[Point3], n: &Point3) -> Option<(Rational, Rational)> {
    let mut it = points.iter().map(|p| n.dot(p));
    let first = it.next()?;
    let (mut lo, mut hi) = (first.clone(), first);
    for v in it {
        if v < lo {
            lo = v;
        } else if v > hi {
            hi = v;
        }
    }
    Some((lo, hi))
}

/// Plane strictly between `a` and `b` along `n`, if their projections are apart.
fn try_axis(a: &[Point3], b: &[Point3], n: &Point3) -> Option<Plane> {
    let (alo, ahi) = range(a, n)?;
    let (blo, bhi) = range(b, n)?;
    let half = frac(1, 2);
    if ahi < blo {
        Plane::with_offset(n, &((&ahi + &blo) * &half)).ok()
    } else if bhi < alo {
        Plane::with_offset(&-n, &(-(&bhi + &alo) * &half)).ok()
    } else {
        None
    }
}

/// Plane through `s` with every point of `a` strictly negative and every point
/// of `b` strictly positive (both lists exclude `s`).
fn try_axis_through(a: &[Point3], b: &[Point3], s: &Point3, n: &Point3) -> Option<Plane> {
    let level = n.dot(s);
    for dir in [n.clone(), -n] {
        let level = if dir == *n { level.clone() } else { -&level };
        if a.iter().all(|p| dir.dot(p) < level) && b.iter().all(|p| dir.dot(p) > level) {
            return Plane::with_offset(&dir, &level).ok();
        }
    }
    None
}

fn convex_combination(points: &[Point3], weights: &[Rational]) -> Point3 {
    let mut acc = Point3::zero();
    for (p, w) in points.iter().zip(weights) {
        if !w.is_zero() {
            acc = &acc + &p.scale(w);
        }
    }
    acc
}

/// Decides whether `conv(a)` and `conv(b)` are disjoint, with no shared points.
fn separate_disjoint(a: &[Point3], b: &[Point3], axes: impl IntoIterator<Item = Point3>) -> SeparationResult {
    for n in axes {
        if let Some(witness) = try_axis(a, b, &n) {
            return SeparationResult::Separated { witness };
        }
    }
    // sum l_i a_i - sum m_j b_j = 0, sum l = 1, sum m = 1.
    let cols = a.len() + b.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(5);
    for k in 0..3 {
        let mut row = Vec::with_capacity(cols);
        row.extend(a.iter().map(|p| p.coords()[k].clone()));
        row.extend(b.iter().map(|p| -p.coords()[k]));
        rows.push(row);
    }
    let mut ra = alloc::vec![Rational::one(); a.len()];
    ra.extend(core::iter::repeat_n(Rational::zero(), b.len()));
    let mut rb = alloc::vec![Rational::zero(); a.len()];
    rb.extend(core::iter::repeat_n(Rational::one(), b.len()));
    rows.push(ra);
    rows.push(rb);
    let rhs = [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
        Rational::one(),
    ];
    match feasibility(&rows, &rhs) {
        Feasibility::Feasible(x) => SeparationResult::Overlapping {
            witness: convex_combination(a, &x[..a.len()]),
        },
        Feasibility::Infeasible(y) => {
            // n.a <= -alpha and n.b >= beta with beta > -alpha.
            let n = Point3::new(y[0].clone(), y[1].clone(), y[2].clone());
            let offset = (&y[4] - &y[3]) * frac(1, 2);
            let witness = Plane::with_offset(&n, &offset).expect("Farkas normal is non-zero");
            SeparationResult::Separated { witness }
        }
    }
}

/// Decides whether `conv(a) ∩ conv(b) = {s}` for a point `s` in both hulls.
fn separate_at_point(
    a: &[Point3],
    b: &[Point3],
    s: &Point3,
    axes: impl IntoIterator<Item = Point3>,
) -> SeparationResult {
    let a_rest: Vec<Point3> = a.iter().filter(|p| *p != s).cloned().collect();
    let b_rest: Vec<Point3> = b.iter().filter(|p| *p != s).cloned().collect();
    for n in axes {
        if let Some(witness) = try_axis_through(&a_rest, &b_rest, s, &n) {
            return SeparationResult::SharedPointsOnly {
                points: alloc::vec![s.clone()],
                witness,
            };
        }
    }
    // Cones at s: sum l_i (a_i - s) - sum m_j (b_j - s) = 0, sum l + sum m = 1.
    let da: Vec<Point3> = a_rest.iter().map(|p| p - s).collect();
    let db: Vec<Point3> = b_rest.iter().map(|p| p - s).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(4);
    for k in 0..3 {
        let mut row = Vec::with_capacity(da.len() + db.len());
        row.extend(da.iter().map(|p| p.coords()[k].clone()));
        row.extend(db.iter().map(|p| -p.coords()[k]));
        rows.push(row);
    }
    rows.push(alloc::vec![Rational::one(); da.len() + db.len()]);
    let rhs = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::one()];
    match feasibility(&rows, &rhs) {
        Feasibility::Feasible(x) => {
            let dir = convex_combination(&da, &x[..da.len()]);
            // The weights sum to at most one on each side, so s + dir is a
            // convex combination in both hulls.
            SeparationResult::Overlapping { witness: s + &dir }
        }
        Feasibility::Infeasible(y) => {
            // n.(a - s) <= -alpha < 0 and n.(b - s) >= alpha > 0.
            let n = Point3::new(y[0].clone(), y[1].clone(), y[2].clone());
            let witness = Plane::through(&n, s).expect("Farkas normal is non-zero");
            SeparationResult::SharedPointsOnly {
                points: alloc::vec![s.clone()],
                witness,
            }
        }
    }
}

/// Core decision on vertex lists. `shared` are the allowed points lying in both sets.
pub(crate) fn separate_points(
    a: &[Point3],
    b: &[Point3],
    shared: &[Point3],
    axes: impl IntoIterator<Item = Point3>,
) -> SeparationResult {
    match shared {
        [] => separate_disjoint(a, b, axes),
        [s] => {
            let res = separate_at_point(a, b, s, axes);
            if let SeparationResult::Overlapping { witness } = &res {
                if witness == s {
                    // Zero common direction: s is not extreme in one of the sets,
                    // so no certificate through s exists. Report s itself.
                    return SeparationResult::Overlapping { witness: s.clone() };
                }
            }
            res
        }
        [s, t, ..] => {
            // The whole segment st lies in both sets.
            let mut k = 2;
            loop {
                let w = s.lerp(t, &frac(1, k));
                if !shared.contains(&w) {
                    return SeparationResult::Overlapping { witness: w };
                }
                k += 1;
            }
        }
    }
}

pub fn separate(a: &ConvexHull3, b: &ConvexHull3, allowed_shared: &[Point3]) -> SeparationResult {
    let mut shared: Vec<Point3> = Vec::new();
    for s in allowed_shared {
        if a.contains(s) && b.contains(s) && !shared.contains(s) {
            shared.push(s.clone());
        }
    }
    separate_points(&a.vertices, &b.vertices, &shared, candidate_axes(a, b))
}

pub(crate) fn axes_for<'a>(a: &'a ConvexHull3, b: &'a ConvexHull3) -> impl Iterator<Item = Point3> + 'a {
    candidate_axes(a, b)
}

/// Distinct points where `polyline` meets `plane`. An edge lying in the plane
/// is a degenerate input.
pub fn plane_polyline_intersections(plane: &Plane, polyline: &[Point3]) -> Result<(usize, Vec<Point3>)> {
    let values: Vec<Rational> = polyline.iter().map(|p| plane.eval(p)).collect();
    let mut points: Vec<Point3> = Vec::new();
    let add = |p: Point3, points: &mut Vec<Point3>| {
        if !points.contains(&p) {
            points.push(p);
        }
    };
    for (k, p) in polyline.iter().enumerate() {
        if k + 1 < polyline.len() {
            let (u, v) = (&values[k], &values[k + 1]);
            if u.is_zero() && v.is_zero() {
                return Err(Error::Degenerate(alloc::format!("polyline edge {k} lies in the plane")));
            }
            if (u.is_negative() && v.is_positive()) || (u.is_positive() && v.is_negative()) {
                let t = u / (u - v);
                add(p.lerp(&polyline[k + 1], &t), &mut points);
            }
        }
        if values[k].is_zero() {
            add(p.clone(), &mut points);
        }
    }
    Ok((points.len(), points))
}
