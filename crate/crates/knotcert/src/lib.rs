//! Files, reports and drawings for `knotcert-core`: control polygon formats,
//! subdivision tables, line-oriented certificate reports that can be read back
//! and re-checked, and SVG knot diagrams. The `knotcert` binary drives these
//! from the command line.

pub mod error;
pub mod formats;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
