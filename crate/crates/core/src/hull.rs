//! Exact convex hulls of small 3D point sets.
//!
//! Sub-control polygons have a handful of points, so facets are found by
//! brute force over point triples. Lower-dimensional inputs keep a half-space
//! description too (supporting plane plus side planes for a polygon, caps plus
//! two supporting planes for a segment), so membership is always "every
//! half-space evaluates to `<= 0`".

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::kernel::{dominant_drop, drop_coord, orient2d, Plane, Point2, Point3, Rational, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    Full3D,
    Planar,
    Collinear,
    Point,
}

/// A facet plane oriented outward, with the indices of the hull vertices on it
/// in boundary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub plane: Plane,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexHull3 {
    /// Extreme points only.
    pub vertices: Vec<Point3>,
    /// Proper facets for `Full3D`; empty otherwise.
    pub facets: Vec<Facet>,
    pub degeneracy: Degeneracy,
    halfspaces: Vec<Plane>,
}

impl ConvexHull3 {
    /// Closed half-spaces (`plane.eval(p) <= 0`) whose intersection is the hull.
    pub fn halfspaces(&self) -> &[Plane] {
        &self.halfspaces
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.halfspaces.iter().all(|h| !h.eval(p).is_positive())
    }

    /// Edges as vertex index pairs (boundary edges of facets, or the polygon /
    /// segment itself when degenerate).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut push = |a: usize, b: usize| {
            let e = if a < b { (a, b) } else { (b, a) };
            if a != b && !edges.contains(&e) {
                edges.push(e);
            }
        };
        match self.degeneracy {
            Degeneracy::Full3D => {
                for f in &self.facets {
                    for k in 0..f.vertices.len() {
                        push(f.vertices[k], f.vertices[(k + 1) % f.vertices.len()]);
                    }
                }
            }
            Degeneracy::Planar => {
                let n = self.vertices.len();
                for k in 0..n {
                    push(k, (k + 1) % n);
                }
            }
            Degeneracy::Collinear => push(0, 1),
            Degeneracy::Point => {}
        }
        edges
    }
}

fn dedup(points: &[Point3]) -> Vec<Point3> {
    let mut out: Vec<Point3> = Vec::with_capacity(points.len());
    for p in points {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

/// Strictly convex hull of 2D points in counterclockwise order (Andrew's
/// monotone chain); returns indices into `pts`.
fn hull2d(pts: &[Point2]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    order.dedup_by(|a, b| pts[*a] == pts[*b]);
    if order.len() < 3 {
        return order;
    }
    let mut chain: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = chain.len();
        let iter: Vec<usize> = if pass == 0 {
            order.clone()
        } else {
            order.iter().rev().cloned().collect()
        };
        for i in iter {
            while chain.len() >= start + 2
                && orient2d(&pts[chain[chain.len() - 2]], &pts[chain[chain.len() - 1]], &pts[i]) != Sign::Positive
            {
                chain.pop();
            }
            chain.push(i);
        }
        chain.pop();
    }
    chain
}

fn axis_unit(axis: usize) -> Point3 {
    match axis {
        0 => Point3::from_ints(1, 0, 0),
        1 => Point3::from_ints(0, 1, 0),
        _ => Point3::from_ints(0, 0, 1),
    }
}

/// Half-space `normal . x <= normal . p` as a plane evaluating `<= 0` inside.
fn bound(normal: &Point3, p: &Point3) -> Plane {
    Plane::through(normal, p).expect("non-zero normal")
}

pub fn convex_hull(points: &[Point3]) -> ConvexHull3 {
    assert!(!points.is_empty(), "convex hull of an empty point set");
    let pts = dedup(points);
    let a = &pts[0];
    let Some(b) = pts.iter().find(|p| *p != a) else {
        let mut halfspaces = Vec::with_capacity(6);
        for axis in 0..3 {
            let e = axis_unit(axis);
            halfspaces.push(bound(&e, a));
            halfspaces.push(bound(&-&e, a));
        }
        return ConvexHull3 {
            vertices: pts,
            facets: Vec::new(),
            degeneracy: Degeneracy::Point,
            halfspaces,
        };
    };
    let dir = b - a;
    let Some(c) = pts.iter().find(|p| !(*p - a).cross(&dir).is_zero()) else {
        return collinear_hull(&pts, &dir);
    };
    let normal = dir.cross(&(c - a));
    if pts.iter().all(|p| normal.dot(&(p - a)).is_zero()) {
        return planar_hull(&pts, &normal);
    }
    full_hull(&pts)
}

fn collinear_hull(pts: &[Point3], dir: &Point3) -> ConvexHull3 {
    let key = |p: &Point3| dir.dot(p);
    let lo = pts.iter().min_by(|p, q| key(p).cmp(&key(q))).unwrap().clone();
    let hi = pts.iter().max_by(|p, q| key(p).cmp(&key(q))).unwrap().clone();
    let e = axis_unit(dominant_drop(dir));
    // Any coordinate axis not parallel to dir gives a perpendicular.
    let mut n1 = dir.cross(&e);
    if n1.is_zero() {
        n1 = dir.cross(&axis_unit((dominant_drop(dir) + 1) % 3));
    }
    let n2 = dir.cross(&n1);
    let halfspaces = alloc::vec![
        bound(dir, &hi),
        bound(&-dir, &lo),
        bound(&n1, &lo),
        bound(&-&n1, &lo),
        bound(&n2, &lo),
        bound(&-&n2, &lo),
    ];
    ConvexHull3 {
        vertices: alloc::vec![lo, hi],
        facets: Vec::new(),
        degeneracy: Degeneracy::Collinear,
        halfspaces,
    }
}

fn planar_hull(pts: &[Point3], normal: &Point3) -> ConvexHull3 {
    let axis = dominant_drop(normal);
    let flat: Vec<Point2> = pts.iter().map(|p| drop_coord(p, axis)).collect();
    let ring = hull2d(&flat);
    let vertices: Vec<Point3> = ring.iter().map(|&i| pts[i].clone()).collect();
    let n = vertices.len();
    let mut halfspaces = alloc::vec![bound(normal, &vertices[0]), bound(&-normal, &vertices[0])];
    // An interior reference point: the vertex average.
    let count = Rational::from_integer((n as i64).into());
    let mut centroid = Point3::zero();
    for v in &vertices {
        centroid = &centroid + v;
    }
    let centroid = centroid.scale(&(Rational::from_integer(1.into()) / count));
    for k in 0..n {
        let (p, q) = (&vertices[k], &vertices[(k + 1) % n]);
        let mut m = (q - p).cross(normal);
        if m.dot(&(&centroid - p)).is_positive() {
            m = -&m;
        }
        halfspaces.push(bound(&m, p));
    }
    ConvexHull3 {
        vertices,
        facets: Vec::new(),
        degeneracy: Degeneracy::Planar,
        halfspaces,
    }
}

fn full_hull(pts: &[Point3]) -> ConvexHull3 {
    let n = pts.len();
    let mut planes: Vec<Plane> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (&pts[j] - &pts[i]).cross(&(&pts[k] - &pts[i]));
                if normal.is_zero() {
                    continue;
                }
                let plane = bound(&normal, &pts[i]);
                let mut pos = false;
                let mut neg = false;
                for p in pts {
                    match Sign::of(&plane.eval(p)) {
                        Sign::Positive => pos = true,
                        Sign::Negative => neg = true,
                        Sign::Zero => {}
                    }
                    if pos && neg {
                        break;
                    }
                }
                let outward = match (pos, neg) {
                    (false, true) => plane,
                    (true, false) => plane.flipped(),
                    _ => continue,
                };
                let canon = outward.canonical();
                if !planes.contains(&canon) {
                    planes.push(canon);
                }
            }
        }
    }
    let mut vertices: Vec<Point3> = Vec::new();
    let mut facet_rings: Vec<(Plane, Vec<Point3>)> = Vec::with_capacity(planes.len());
    for plane in planes {
        let on: Vec<Point3> = pts.iter().filter(|p| plane.eval(p).is_zero()).cloned().collect();
        let axis = dominant_drop(&plane.normal());
        let flat: Vec<Point2> = on.iter().map(|p| drop_coord(p, axis)).collect();
        let ring: Vec<Point3> = hull2d(&flat).into_iter().map(|i| on[i].clone()).collect();
        for v in &ring {
            if !vertices.contains(v) {
                vertices.push(v.clone());
            }
        }
        facet_rings.push((plane, ring));
    }
    // Keep vertices in input order for determinism.
    vertices.sort_by_key(|v| pts.iter().position(|p| p == v));
    let facets: Vec<Facet> = facet_rings
        .into_iter()
        .map(|(plane, ring)| Facet {
            vertices: ring
                .iter()
                .map(|v| vertices.iter().position(|w| w == v).unwrap())
                .collect(),
            plane,
        })
        .collect();
    let halfspaces = facets.iter().map(|f| f.plane.clone()).collect();
    ConvexHull3 {
        vertices,
        facets,
        degeneracy: Degeneracy::Full3D,
        halfspaces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    #[test]
    fn tetrahedron() {
        let h = convex_hull(&[p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]);
        assert_eq!(h.degeneracy, Degeneracy::Full3D);
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.edges().len(), 6);
        assert!(h.contains(&Point3::new(
            crate::kernel::frac(1, 4),
            crate::kernel::frac(1, 4),
            crate::kernel::frac(1, 4)
        )));
        assert!(!h.contains(&p(1, 1, 1)));
    }

    #[test]
    fn cube_with_center() {
        let mut pts = Vec::new();
        for x in [0, 2] {
            for y in [0, 2] {
                for z in [0, 2] {
                    pts.push(p(x, y, z));
                }
            }
        }
        pts.push(p(1, 1, 1));
        let h = convex_hull(&pts);
        assert_eq!(h.vertices.len(), 8);
        assert!(!h.vertices.contains(&p(1, 1, 1)));
        assert_eq!(h.facets.len(), 6);
        assert!(h.facets.iter().all(|f| f.vertices.len() == 4));
        for q in &pts {
            assert!(h.contains(q));
        }
    }

    #[test]
    fn degenerate_inputs() {
        let point = convex_hull(&[p(1, 2, 3), p(1, 2, 3)]);
        assert_eq!(point.degeneracy, Degeneracy::Point);
        assert!(point.contains(&p(1, 2, 3)));
        assert!(!point.contains(&p(1, 2, 4)));

        let seg = convex_hull(&[p(0, 0, 0), p(2, 2, 2), p(1, 1, 1), p(-1, -1, -1)]);
        assert_eq!(seg.degeneracy, Degeneracy::Collinear);
        assert_eq!(seg.vertices, alloc::vec![p(-1, -1, -1), p(2, 2, 2)]);
        assert!(seg.contains(&p(0, 0, 0)));
        assert!(!seg.contains(&p(3, 3, 3)));
        assert!(!seg.contains(&p(0, 0, 1)));

        let square = convex_hull(&[p(0, 0, 5), p(2, 0, 5), p(2, 2, 5), p(0, 2, 5), p(1, 1, 5), p(1, 0, 5)]);
        assert_eq!(square.degeneracy, Degeneracy::Planar);
        assert_eq!(square.vertices.len(), 4);
        assert!(square.contains(&p(1, 1, 5)));
        assert!(!square.contains(&p(1, 1, 4)));
        assert!(!square.contains(&p(3, 1, 5)));
    }
}
