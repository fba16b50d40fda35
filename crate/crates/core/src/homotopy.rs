//! Straight-line motion of one control point and a bisection search for the
//! parameter where the certified knot type of the Bézier curve changes.

use alloc::format;

use num_traits::{One, Signed, Zero};

use crate::bezier::ControlPolygon;
use crate::certify::{bezier_knot_type, IsotopyCertificate};
use crate::error::{Error, Result};
use crate::jones::KnotClass;
use crate::kernel::{frac, Point3, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexHomotopy {
    pub base: ControlPolygon,
    pub vertex: usize,
    pub start: Point3,
    pub end: Point3,
}

impl VertexHomotopy {
    pub fn new(base: ControlPolygon, vertex: usize, start: Point3, end: Point3) -> Result<Self> {
        if vertex >= base.points().len() {
            return Err(Error::Domain(format!("vertex {vertex} out of range")));
        }
        let h = VertexHomotopy {
            base,
            vertex,
            start,
            end,
        };
        polygon_at(&h, &Rational::zero())?;
        polygon_at(&h, &Rational::one())?;
        Ok(h)
    }

    /// The family between two polygons that differ in exactly one control point.
    pub fn between(p0: &ControlPolygon, p1: &ControlPolygon) -> Result<Self> {
        let (a, b) = (p0.points(), p1.points());
        if a.len() != b.len() {
            return Err(Error::Domain("polygons have different lengths".into()));
        }
        let diff: alloc::vec::Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        match diff.as_slice() {
            [i] => VertexHomotopy::new(p0.clone(), *i, a[*i].clone(), b[*i].clone()),
            _ => Err(Error::Domain(format!(
                "polygons must differ in exactly one control point, they differ in {}",
                diff.len()
            ))),
        }
    }
}

/// The base polygon with the moving vertex at `(1 - s) start + s end`.
pub fn polygon_at(h: &VertexHomotopy, s: &Rational) -> Result<ControlPolygon> {
    if s.is_negative() || *s > Rational::one() {
        return Err(Error::Domain(format!("homotopy parameter {s} outside [0, 1]")));
    }
    let mut pts = h.base.points().to_vec();
    pts[h.vertex] = h.start.lerp(&h.end, s);
    ControlPolygon::new(pts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub class_lo: KnotClass,
    pub class_hi: KnotClass,
    pub cert_lo: IsotopyCertificate,
    pub cert_hi: IsotopyCertificate,
    /// Set when certification failed at the midpoint of the returned interval.
    pub uncertified_gap: bool,
    /// Parameter where certification failed, if any.
    pub failed_at: Option<Rational>,
}

/// Bisects `[0, 1]` keeping certified, distinct knot classes at both ends.
pub fn bisect_transition(h: &VertexHomotopy, tol: &Rational, max_level: u32) -> Result<TransitionInterval> {
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let (class_lo, cert_lo) = bezier_knot_type(&polygon_at(h, &Rational::zero())?, max_level)?;
    let (class_hi, cert_hi) = bezier_knot_type(&polygon_at(h, &Rational::one())?, max_level)?;
    if class_lo == class_hi {
        return Err(Error::Precondition(format!(
            "both ends of the family have knot class {class_lo}"
        )));
    }
    let mut t = TransitionInterval {
        lo: Rational::zero(),
        hi: Rational::one(),
        class_lo,
        class_hi,
        cert_lo,
        cert_hi,
        uncertified_gap: false,
        failed_at: None,
    };
    let half = frac(1, 2);
    while &t.hi - &t.lo > *tol {
        let mid = (&t.lo + &t.hi) * &half;
        match bezier_knot_type(&polygon_at(h, &mid)?, max_level) {
            Ok((class, cert)) => {
                if class == t.class_lo {
                    t.lo = mid;
                    t.cert_lo = cert;
                } else {
                    // Any class other than the lower one differs from it, so the
                    // change still happens in the lower half.
                    t.hi = mid;
                    t.class_hi = class;
                    t.cert_hi = cert;
                }
            }
            Err(Error::Certification(_)) => {
                t.uncertified_gap = true;
                t.failed_at = Some(mid);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(t)
}
