//! Regular coordinate projections of PL knots and their crossings.
//!
//! A diagram is named by the coordinate it drops: `Axis::Z` is the XY plane
//! with `(u, v) = (x, y)`, `Axis::X` is YZ with `(y, z)` and `Axis::Y` is XZ with
//! `(x, z)`. At a crossing the strand with the larger dropped coordinate is over.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bezier::Axis;
use crate::error::{Error, Result};
use crate::kernel::{drop_coord, seg2_intersection, Point2, Rational, Seg2Intersection, Segment2};
use crate::pl::PLKnot;

/// Projection plane name for the dropped axis.
pub fn plane_name(dropped: Axis) -> &'static str {
    match dropped {
        Axis::X => "yz",
        Axis::Y => "xz",
        Axis::Z => "xy",
    }
}

pub fn parse_plane(name: &str) -> Result<Axis> {
    match name.to_ascii_lowercase().as_str() {
        "xy" => Ok(Axis::Z),
        "yz" => Ok(Axis::X),
        "xz" => Ok(Axis::Y),
        _ => Err(Error::Domain(format!("unknown projection plane {name:?}"))),
    }
}

/// Preferred order when searching for a regular projection.
pub const PROJECTION_ORDER: [Axis; 3] = [Axis::Z, Axis::X, Axis::Y];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub location: Point2,
    pub over_edge: usize,
    pub under_edge: usize,
    /// Parameters of the crossing along the over and under edges, in `(0, 1)`.
    pub over_param: Rational,
    pub under_param: Rational,
    pub over_depth: Rational,
    pub under_depth: Rational,
    /// +1 or -1 by the right-hand rule, viewed from the positive dropped axis.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    pub axis: Axis,
    /// Projected vertices of the knot, in order.
    pub vertices: Vec<Point2>,
    /// Crossings numbered by their first visit along the knot from vertex 0.
    pub crossings: Vec<Crossing>,
}

/// One pass of the knot through a crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
    pub edge: usize,
    pub param: Rational,
}

impl KnotDiagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    /// The `2c` crossing visits in traversal order.
    pub fn visits(&self) -> Vec<Visit> {
        let mut out: Vec<Visit> = Vec::with_capacity(2 * self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            out.push(Visit {
                crossing: i,
                over: true,
                edge: c.over_edge,
                param: c.over_param.clone(),
            });
            out.push(Visit {
                crossing: i,
                over: false,
                edge: c.under_edge,
                param: c.under_param.clone(),
            });
        }
        out.sort_by(|a, b| a.edge.cmp(&b.edge).then_with(|| a.param.cmp(&b.param)));
        out
    }
}

fn irregular(axis: Axis, reason: alloc::string::String) -> Error {
    Error::DegenerateProjection { axis, reason }
}

/// Projects `k` along `axis`, rejecting non-regular projections: an edge that
/// collapses to a point, adjacent edges folding onto each other, a vertex landing
/// on another edge, two crossings at the same point, or an actual intersection.
pub fn project_diagram(k: &PLKnot, axis: Axis) -> Result<KnotDiagram> {
    let n = k.len();
    let drop = axis.index();
    let vertices: Vec<Point2> = k.vertices().iter().map(|p| drop_coord(p, drop)).collect();
    let edges: Vec<Segment2> = (0..n)
        .map(|i| {
            Segment2::new(vertices[i].clone(), vertices[(i + 1) % n].clone())
                .map_err(|_| irregular(axis, format!("edge {i} projects to a point")))
        })
        .collect::<Result<_>>()?;
    let depth = |edge: usize, t: &Rational| -> Rational {
        let s = k.edge(edge);
        s.at(t).coords()[drop].clone()
    };
    // Viewing the XZ plane from +y, (x, z) is a left-handed frame.
    let handed: i8 = if axis == Axis::Y { -1 } else { 1 };

    let mut crossings: Vec<Crossing> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let hit = seg2_intersection(&edges[i], &edges[j]);
            if k.are_adjacent(i, j) {
                match hit {
                    Seg2Intersection::Point { .. } => {}
                    Seg2Intersection::Overlap => {
                        return Err(irregular(
                            axis,
                            format!("adjacent edges {i} and {j} overlap in projection"),
                        ))
                    }
                    // Only possible for a triangle, whose edges all share vertices.
                    Seg2Intersection::Empty => {}
                }
                continue;
            }
            match hit {
                Seg2Intersection::Empty => {}
                Seg2Intersection::Overlap => {
                    return Err(irregular(axis, format!("edges {i} and {j} overlap in projection")))
                }
                Seg2Intersection::Point { point, alpha, beta } => {
                    let interior = |t: &Rational| t.is_positive() && *t < Rational::one();
                    if !interior(&alpha) || !interior(&beta) {
                        return Err(irregular(
                            axis,
                            format!("a vertex of edge {i} or {j} projects onto the other edge at {point}"),
                        ));
                    }
                    let (di, dj) = (depth(i, &alpha), depth(j, &beta));
                    if di == dj {
                        return Err(irregular(
                            axis,
                            format!("edges {i} and {j} intersect in space above {point}"),
                        ));
                    }
                    if crossings.iter().any(|c| c.location == point) {
                        return Err(irregular(axis, format!("more than two strands cross at {point}")));
                    }
                    let (over, under, op, up, od, ud) = if di > dj {
                        (i, j, alpha, beta, di, dj)
                    } else {
                        (j, i, beta, alpha, dj, di)
                    };
                    let dir = |e: &Segment2| (&e.q.u - &e.p.u, &e.q.v - &e.p.v);
                    let (ou, ov) = dir(&edges[over]);
                    let (uu, uv) = dir(&edges[under]);
                    let cross = &ou * &uv - &ov * &uu;
                    debug_assert!(!cross.is_zero());
                    let sign = if cross.is_positive() { handed } else { -handed };
                    crossings.push(Crossing {
                        location: point,
                        over_edge: over,
                        under_edge: under,
                        over_param: op,
                        under_param: up,
                        over_depth: od,
                        under_depth: ud,
                        sign,
                    });
                }
            }
        }
    }

    // Renumber crossings by first visit along the knot.
    let mut d = KnotDiagram {
        axis,
        vertices,
        crossings,
    };
    let mut order: Vec<usize> = Vec::new();
    for v in d.visits() {
        if !order.contains(&v.crossing) {
            order.push(v.crossing);
        }
    }
    let old = core::mem::take(&mut d.crossings);
    let mut slots: Vec<Option<Crossing>> = old.into_iter().map(Some).collect();
    d.crossings = order
        .into_iter()
        .map(|i| slots[i].take().expect("each crossing once"))
        .collect();
    Ok(d)
}

/// The first regular projection in [`PROJECTION_ORDER`].
pub fn first_regular_projection(k: &PLKnot) -> Result<KnotDiagram> {
    let mut last = None;
    for axis in PROJECTION_ORDER {
        match project_diagram(k, axis) {
            Ok(d) => return Ok(d),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one projection tried"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Point3;

    fn knot(pts: &[(i64, i64, i64)]) -> PLKnot {
        PLKnot::new(pts.iter().map(|&(x, y, z)| Point3::from_ints(x, y, z)).collect()).unwrap()
    }

    #[test]
    fn square_has_no_crossings() {
        let k = knot(&[(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]);
        let d = project_diagram(&k, Axis::Z).unwrap();
        assert!(d.crossings.is_empty());
        // Viewed edge-on the square collapses.
        assert!(matches!(
            project_diagram(&k, Axis::X),
            Err(Error::DegenerateProjection { .. })
        ));
    }

    #[test]
    fn single_negative_crossing() {
        // Over strand along +u at height 1, under strand heading +v at height 0.
        let k = knot(&[(-2, 0, 1), (2, 0, 1), (2, 3, 1), (1, 3, 0), (1, -2, 0), (-2, -2, 1)]);
        let d = project_diagram(&k, Axis::Z).unwrap();
        assert_eq!(d.crossings.len(), 1);
        let c = &d.crossings[0];
        assert_eq!(c.location, Point2::from_ints(1, 0));
        assert_eq!(c.over_edge, 0);
        assert_eq!(c.under_edge, 3);
        // Under strand heads -v: passes left to right beneath the over strand.
        assert_eq!(c.sign, -1);
        assert_eq!(d.writhe(), -1);
    }

    #[test]
    fn mirror_flips_signs_in_every_plane() {
        let k = PLKnot::from_closed_polygon(&crate::fixtures::k1()).unwrap();
        for axis in PROJECTION_ORDER {
            if let Ok(d) = project_diagram(&k, axis) {
                for m in Axis::ALL {
                    let dm = project_diagram(&k.mirrored(m), axis).unwrap();
                    assert_eq!(dm.writhe(), -d.writhe());
                }
            }
        }
    }

    #[test]
    fn vertex_on_edge_is_irregular() {
        // Vertex (1, 0, 0) sits below edge 0 in the XY projection.
        let k = knot(&[(0, 0, 1), (2, 0, 1), (2, 2, 1), (1, 0, 0), (0, 2, 0)]);
        assert!(matches!(
            project_diagram(&k, Axis::Z),
            Err(Error::DegenerateProjection { .. })
        ));
    }

    #[test]
    fn plane_names_round_trip() {
        for a in Axis::ALL {
            assert_eq!(parse_plane(plane_name(a)).unwrap(), a);
        }
        assert!(parse_plane("xx").is_err());
    }
}
