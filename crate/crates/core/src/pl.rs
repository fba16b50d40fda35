//! Closed PL curves and exact simplicity checks.

use alloc::format;
use alloc::vec::Vec;

use crate::bezier::ControlPolygon;
use crate::error::{Error, Result};
use crate::kernel::{collinear3, seg3_contact, Point3, Seg3Contact, Segment3};

/// A closed polygon; the closing edge runs from the last vertex back to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLKnot {
    vertices: Vec<Point3>,
}

impl PLKnot {
    pub fn new(vertices: Vec<Point3>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Domain(format!(
                "a closed PL curve needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let n = vertices.len();
        if let Some(i) = (0..n).find(|&i| vertices[i] == vertices[(i + 1) % n]) {
            return Err(Error::Degenerate(format!(
                "vertices {i} and {} coincide at {}",
                (i + 1) % n,
                vertices[i]
            )));
        }
        Ok(PLKnot { vertices })
    }

    /// The control polygon of a closed curve with its repeated endpoint dropped.
    pub fn from_closed_polygon(cp: &ControlPolygon) -> Result<Self> {
        if !cp.is_closed() {
            return Err(Error::Precondition("control polygon is not closed".into()));
        }
        let pts = cp.points();
        PLKnot::new(pts[..pts.len() - 1].to_vec())
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> Segment3 {
        let n = self.vertices.len();
        Segment3 {
            p: self.vertices[i].clone(),
            q: self.vertices[(i + 1) % n].clone(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment3> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        (i + 1) % n == j || (j + 1) % n == i
    }

    /// Reflection through `axis = 0` (mirror image).
    pub fn mirrored(&self, axis: crate::bezier::Axis) -> PLKnot {
        let vertices = self
            .vertices
            .iter()
            .map(|p| {
                let mut q = p.clone();
                match axis {
                    crate::bezier::Axis::X => q.x = -&q.x,
                    crate::bezier::Axis::Y => q.y = -&q.y,
                    crate::bezier::Axis::Z => q.z = -&q.z,
                }
                q
            })
            .collect();
        PLKnot { vertices }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    SelfIntersecting { edges: (usize, usize), witness: Point3 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub verdict: SimplicityVerdict,
    /// `collinear[i]` is true when the edges meeting at vertex `i` are collinear.
    pub collinear: Vec<bool>,
}

impl SimplicityCertificate {
    pub fn is_simple(&self) -> bool {
        self.verdict == SimplicityVerdict::Simple
    }
}

#[derive(Clone)]
struct Bbox {
    lo: [crate::kernel::Rational; 3],
    hi: [crate::kernel::Rational; 3],
}

impl Bbox {
    fn of(s: &Segment3) -> Bbox {
        let (p, q) = (s.p.coords(), s.q.coords());
        let lo = core::array::from_fn(|k| core::cmp::min(p[k], q[k]).clone());
        let hi = core::array::from_fn(|k| core::cmp::max(p[k], q[k]).clone());
        Bbox { lo, hi }
    }

    fn disjoint(&self, o: &Bbox) -> bool {
        (0..3).any(|k| self.hi[k] < o.lo[k] || o.hi[k] < self.lo[k])
    }
}

/// Exact simplicity test: non-adjacent edges must be disjoint and adjacent
/// edges may only meet at their shared vertex. Collinear consecutive edges
/// that continue straight through their common vertex are reported but allowed.
pub fn is_simple(k: &PLKnot) -> SimplicityCertificate {
    let n = k.len();
    let collinear: Vec<bool> = (0..n)
        .map(|i| collinear3(&k.vertices[(i + n - 1) % n], &k.vertices[i], &k.vertices[(i + 1) % n]))
        .collect();
    let edges: Vec<Segment3> = k.edges().collect();
    let boxes: Vec<Bbox> = edges.iter().map(Bbox::of).collect();
    for i in 0..n {
        for j in i + 1..n {
            if boxes[i].disjoint(&boxes[j]) {
                continue;
            }
            let contact = seg3_contact(&edges[i], &edges[j]);
            let fail = |witness: Point3| SimplicityCertificate {
                verdict: SimplicityVerdict::SelfIntersecting { edges: (i, j), witness },
                collinear: collinear.clone(),
            };
            if k.are_adjacent(i, j) {
                let shared = if (i + 1) % n == j { &edges[j].p } else { &edges[i].p };
                match contact {
                    Seg3Contact::Touching(ref p) if p == shared => {}
                    // A triangle's edges are pairwise adjacent; nothing else can touch.
                    Seg3Contact::Disjoint => {}
                    Seg3Contact::Overlap => {
                        // Folding back onto the previous edge.
                        let other = if (i + 1) % n == j { &edges[j].q } else { &edges[i].q };
                        let witness = if edges[i].p == *shared || edges[i].q == *shared {
                            shared.midpoint(other)
                        } else {
                            shared.clone()
                        };
                        return fail(witness);
                    }
                    Seg3Contact::Touching(p) | Seg3Contact::Crossing(p) => return fail(p),
                }
            } else {
                match contact {
                    Seg3Contact::Disjoint => {}
                    Seg3Contact::Touching(p) | Seg3Contact::Crossing(p) => return fail(p),
                    Seg3Contact::Overlap => return fail(edges[j].p.clone()),
                }
            }
        }
    }
    SimplicityCertificate {
        verdict: SimplicityVerdict::Simple,
        collinear,
    }
}
