//! Trimmed hull enclosures `E = H ∩ (H_L ∪ H_R)` for a single sub-control
//! polygon, where `H` is its convex hull and `H_L`, `H_R` are closed half-spaces
//! bounded by planes through the curve midpoint.
//!
//! `Π_L` contains the line through the curve midpoint and the final control
//! point; `Π_R` contains the line through the initial control point and the
//! midpoint. Each half-space keeps the side where its plane evaluates `>= 0`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bezier::{evaluate, ControlPolygon};
use crate::error::{Error, Result};
use crate::hull::{convex_hull, ConvexHull3};
use crate::kernel::{frac, Plane, Point3, Rational};
use crate::separation::{axes_for, plane_polyline_intersections, separate_points, SeparationResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub hull: ConvexHull3,
    pub left_half: Plane,
    pub right_half: Plane,
}

impl Enclosure {
    pub fn contains(&self, p: &Point3) -> bool {
        self.hull.contains(p) && (!self.left_half.eval(p).is_negative() || !self.right_half.eval(p).is_negative())
    }

    /// Vertex list of `H ∩ {side >= 0}`: kept hull vertices plus the points where
    /// segments between hull vertices cross the plane.
    fn clipped(&self, side: &Plane) -> Vec<Point3> {
        let verts = &self.hull.vertices;
        let vals: Vec<Rational> = verts.iter().map(|v| side.eval(v)).collect();
        let mut out: Vec<Point3> = verts
            .iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(p, _)| p.clone())
            .collect();
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                let (u, v) = (&vals[i], &vals[j]);
                if (u.is_negative() && v.is_positive()) || (u.is_positive() && v.is_negative()) {
                    let q = verts[i].lerp(&verts[j], &(u / (u - v)));
                    if !out.contains(&q) {
                        out.push(q);
                    }
                }
            }
        }
        out
    }

    /// The two convex parts `H ∩ H_L` and `H ∩ H_R` as hulls.
    pub fn parts(&self) -> (ConvexHull3, ConvexHull3) {
        (
            convex_hull(&self.clipped(&self.left_half)),
            convex_hull(&self.clipped(&self.right_half)),
        )
    }
}

/// Builds the enclosure of `cp` from the midpoint `mid = c(1/2)` and the two
/// plane normals. Each normal must be orthogonal to its line; the kept sides
/// are chosen (by sign flips) so that every control point lies in `E`.
pub fn build_enclosure(cp: &ControlPolygon, mid: &Point3, normal_l: &Point3, normal_r: &Point3) -> Result<Enclosure> {
    if normal_l.is_zero() || normal_r.is_zero() {
        return Err(Error::Domain("enclosure normal is the zero vector".into()));
    }
    let expected = evaluate(cp, &frac(1, 2))?;
    if *mid != expected {
        return Err(Error::Domain(format!(
            "midpoint {mid} is not the curve point at 1/2 ({expected})"
        )));
    }
    let line_l = cp.last() - mid;
    let line_r = mid - cp.first();
    if !normal_l.dot(&line_l).is_zero() {
        return Err(Error::Domain(format!(
            "left normal {normal_l} is not orthogonal to the line from {mid} to {}",
            cp.last()
        )));
    }
    if !normal_r.dot(&line_r).is_zero() {
        return Err(Error::Domain(format!(
            "right normal {normal_r} is not orthogonal to the line from {} to {mid}",
            cp.first()
        )));
    }
    let hull = convex_hull(cp.points());
    let base_l = Plane::through(normal_l, mid)?;
    let base_r = Plane::through(normal_r, mid)?;
    for (fl, fr) in [(false, false), (false, true), (true, false), (true, true)] {
        let e = Enclosure {
            hull: hull.clone(),
            left_half: if fl { base_l.flipped() } else { base_l.clone() },
            right_half: if fr { base_r.flipped() } else { base_r.clone() },
        };
        if cp.points().iter().all(|p| e.contains(p)) {
            return Ok(e);
        }
    }
    Err(Error::Construction(
        "no orientation of the two half-spaces contains every control point".into(),
    ))
}

/// Verdicts for the two convex parts of an enclosure against another hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosureSeparation {
    pub left: SeparationResult,
    pub right: SeparationResult,
}

impl EnclosureSeparation {
    pub fn is_disjoint_modulo_shared(&self) -> bool {
        self.left.is_disjoint_modulo_shared() && self.right.is_disjoint_modulo_shared()
    }

    /// Overlap witness from either part, if any.
    pub fn overlap(&self) -> Option<&Point3> {
        [&self.left, &self.right].into_iter().find_map(|r| match r {
            SeparationResult::Overlapping { witness } => Some(witness),
            _ => None,
        })
    }

    pub fn shared_points(&self) -> Vec<Point3> {
        let mut out: Vec<Point3> = Vec::new();
        for r in [&self.left, &self.right] {
            if let SeparationResult::SharedPointsOnly { points, .. } = r {
                for p in points {
                    if !out.contains(p) {
                        out.push(p.clone());
                    }
                }
            }
        }
        out
    }
}

/// Tests `H ∩ H_L` and `H ∩ H_R` separately against `other`.
pub fn enclosure_disjoint(e: &Enclosure, other: &ConvexHull3, allowed_shared: &[Point3]) -> EnclosureSeparation {
    parts_disjoint(&e.parts(), other, allowed_shared)
}

/// As [`enclosure_disjoint`] with the two parts already computed.
pub fn parts_disjoint(
    parts: &(ConvexHull3, ConvexHull3),
    other: &ConvexHull3,
    allowed_shared: &[Point3],
) -> EnclosureSeparation {
    let run = |part: &ConvexHull3| {
        let shared: Vec<Point3> = allowed_shared
            .iter()
            .filter(|s| part.contains(s) && other.contains(s))
            .cloned()
            .collect();
        separate_points(&part.vertices, &other.vertices, &shared, axes_for(part, other))
    };
    EnclosureSeparation {
        left: run(&parts.0),
        right: run(&parts.1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCheck {
    pub parameter: Rational,
    pub point: Point3,
    pub inside: bool,
}

/// Computational content of the containment argument for the curve in `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosureEvidence {
    pub left_count: usize,
    pub left_points: Vec<Point3>,
    pub right_count: usize,
    pub right_points: Vec<Point3>,
    pub samples: Vec<SampleCheck>,
}

/// Replays the containment argument: each bounding plane meets the control
/// polygon in exactly two points (so, by variation diminishing, the curve meets
/// it only at the midpoint and an endpoint), and the sampled curve points lie
/// in `E` and are distinct from each other and from those three points.
pub fn curve_in_enclosure(cp: &ControlPolygon, e: &Enclosure, samples: &[Rational]) -> Result<EnclosureEvidence> {
    for s in samples {
        if !s.is_positive() || *s >= Rational::one() {
            return Err(Error::Domain(format!("sample parameter {s} outside (0, 1)")));
        }
    }
    let (left_count, left_points) = plane_polyline_intersections(&e.left_half, cp.points())?;
    if left_count != 2 {
        return Err(Error::Evidence(format!(
            "left plane meets the control polygon {left_count} times, expected 2"
        )));
    }
    let (right_count, right_points) = plane_polyline_intersections(&e.right_half, cp.points())?;
    if right_count != 2 {
        return Err(Error::Evidence(format!(
            "right plane meets the control polygon {right_count} times, expected 2"
        )));
    }
    let mid = evaluate(cp, &frac(1, 2))?;
    let mut seen: Vec<Point3> = alloc::vec![cp.first().clone(), mid, cp.last().clone()];
    let mut checks = Vec::with_capacity(samples.len());
    for s in samples {
        let point = evaluate(cp, s)?;
        let inside = e.contains(&point);
        if !inside {
            return Err(Error::Evidence(format!(
                "curve point at {s} ({point}) lies outside the enclosure"
            )));
        }
        if *s != frac(1, 2) {
            if seen.contains(&point) {
                return Err(Error::Evidence(format!("curve point at {s} repeats an earlier point")));
            }
            seen.push(point.clone());
        }
        checks.push(SampleCheck {
            parameter: s.clone(),
            point,
            inside,
        });
    }
    Ok(EnclosureEvidence {
        left_count,
        left_points,
        right_count,
        right_points,
        samples: checks,
    })
}

/// Normals orthogonal to `line`, starting with the horizontal one
/// `(dy, -dx, 0)` and then tilting it about the line over a small grid.
pub fn normal_candidates(line: &Point3) -> Vec<Point3> {
    let mut base = Point3::new(line.y.clone(), -&line.x, Rational::zero());
    if base.is_zero() {
        base = Point3::from_ints(1, 0, 0);
    }
    let tilt = line.cross(&base);
    // Bring the tilt direction to a comparable magnitude.
    let scale = {
        let b = base.dot(&base);
        let t = tilt.dot(&tilt);
        if t.is_zero() {
            Rational::zero()
        } else {
            crate::kernel::int(1) / rational_sqrt_floor(&(t / b))
        }
    };
    let tilt = tilt.scale(&scale);
    let mut out = Vec::new();
    for k in [0i64, 1, -1, 2, -2, 4, -4] {
        let n = &base + &tilt.scale(&frac(k, 4));
        for cand in [n.clone(), -&n] {
            if !cand.is_zero() && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Rough positive rational close to `sqrt(r)` for `r > 0` (only used to
/// normalise a search grid, so any positive value works).
fn rational_sqrt_floor(r: &Rational) -> Rational {
    let q = r.numer() / r.denom();
    let s = q.sqrt();
    if s.is_zero() {
        Rational::one()
    } else {
        Rational::from_integer(s)
    }
}
