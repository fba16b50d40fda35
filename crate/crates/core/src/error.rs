use alloc::boxed::Box;
use alloc::string::String;

use crate::bezier::Axis;
use crate::kernel::Point3;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// What stopped a certification attempt at its last tried level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// A sub-control polygon has no strictly monotone coordinate.
    NotMonotone { level: u32, piece: usize },
    /// Two piece hulls share a point that is not an allowed subdivision point.
    Overlap {
        level: u32,
        first: usize,
        second: usize,
        witness: Point3,
    },
    /// The PL refinement failed the simplicity check.
    NotSimple { level: u32, edges: (usize, usize) },
    /// No coordinate projection of the refinement was regular.
    NoRegularProjection { level: u32 },
}

impl core::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Obstruction::NotMonotone { level, piece } => {
                write!(
                    f,
                    "level {level}: piece {piece} is not strictly monotone in any coordinate"
                )
            }
            Obstruction::Overlap {
                level,
                first,
                second,
                witness,
            } => write!(
                f,
                "level {level}: hulls of pieces {first} and {second} overlap at {witness}"
            ),
            Obstruction::NotSimple { level, edges } => write!(
                f,
                "level {level}: refinement edges {} and {} intersect",
                edges.0, edges.1
            ),
            Obstruction::NoRegularProjection { level } => {
                write!(f, "level {level}: no regular coordinate projection")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("irregular projection along {axis:?}: {reason}")]
    DegenerateProjection { axis: Axis, reason: String },
    #[error("diagram has {crossings} crossings, state sum is limited to {limit}")]
    Capacity { crossings: usize, limit: usize },
    #[error("certification failed: {0}")]
    Certification(Box<Obstruction>),
    #[error("push of vertex {vertex} sweeps into edge {edge} at {witness}")]
    PushFailure {
        vertex: usize,
        edge: usize,
        witness: Box<Point3>,
    },
    #[error("evidence check failed: {0}")]
    Evidence(String),
    #[error("enclosure construction failed: {0}")]
    Construction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
