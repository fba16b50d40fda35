//! The two degree-6 closed curves used throughout the tests and the CLI
//! examples: an unknotted stick polygon `K0` and the polygon `K1` obtained by
//! moving one vertex. Both control polygons are unknots; the Bézier curve of
//! `K0` is an unknot while that of `K1` is a trefoil.

use alloc::vec::Vec;

use crate::bezier::ControlPolygon;
use crate::kernel::Point3;

const K0_VERTICES: [(i64, i64, i64); 7] = [
    (0, 9, 20),
    (-15, -95, -50),
    (40, 80, -20),
    (-10, -60, 58),
    (-60, 30, 20),
    (40, -60, -60),
    (0, 9, 20),
];

/// Index of the vertex moved between `K0` and `K1`.
pub const MOVED_VERTEX: usize = 3;

pub fn moved_vertex_start() -> Point3 {
    Point3::from_ints(-10, -60, 58)
}

pub fn moved_vertex_end() -> Point3 {
    Point3::from_ints(10, -60, 58)
}

fn polygon(vertices: &[(i64, i64, i64)]) -> ControlPolygon {
    let pts: Vec<Point3> = vertices.iter().map(|&(x, y, z)| Point3::from_ints(x, y, z)).collect();
    ControlPolygon::new(pts).expect("fixture polygon is valid")
}

pub fn k0() -> ControlPolygon {
    polygon(&K0_VERTICES)
}

pub fn k1() -> ControlPolygon {
    let mut v = K0_VERTICES;
    v[MOVED_VERTEX] = (10, -60, 58);
    polygon(&v)
}
