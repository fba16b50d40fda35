//! Exact-arithmetic certificates for the knot type of closed Bézier curves.
//!
//! Everything here runs on arbitrary-precision rationals: control polygons are
//! subdivided with de Casteljau at parameter 1/2, each sub-control polygon is
//! checked for strict coordinate monotonicity, the convex hulls of the pieces
//! are shown pairwise disjoint with explicit separating planes, and the PL
//! refinement is classified through an exact knot diagram and its Jones
//! polynomial. A one-vertex homotopy driver brackets the parameter where the
//! certified knot type of the Bézier curve changes.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, reports and the
//! command-line front end live in the `knotcert` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bezier;
pub mod certify;
pub mod diagram;
pub mod enclosure;
pub mod error;
pub mod fixtures;
pub mod gauss;
pub mod homotopy;
pub mod hull;
pub mod jones;
pub mod kernel;
pub mod lp;
pub mod pl;
pub mod separation;

pub use bezier::{Axis, ControlPolygon, SubdivisionForest};
pub use certify::{
    bezier_knot_type, certify_isotopy, certify_isotopy_with, certify_push, CertifyOptions, IsotopyCertificate,
    PieceCertificate, PushCertificate,
};
pub use diagram::{Crossing, KnotDiagram};
pub use error::{Error, Obstruction, Result};
pub use homotopy::{bisect_transition, polygon_at, TransitionInterval, VertexHomotopy};
pub use hull::ConvexHull3;
pub use jones::{KnotClass, LaurentPoly};
pub use kernel::{Plane, Point2, Point3, Rational};
pub use pl::{is_simple, PLKnot};
pub use separation::SeparationResult;
