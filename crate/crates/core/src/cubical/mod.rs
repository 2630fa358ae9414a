//! Voxel solids on the integer lattice and their cubical cell complexes.
//!
//! A voxel `(x, y, z)` is the closed unit cube `[x, x+1] × [y, y+1] × [z, z+1]`.
//! Cells of every dimension are addressed in doubled coordinates (see
//! [`Cell`]), which gives each vertex, edge, square and cube a unique integer
//! key and makes the face relation a matter of adding or subtracting one.

mod complex;
mod cycle;
mod solid;
mod surface;

pub use complex::{build_complex, Cell, CubicalComplex};
pub use cycle::EdgeCycle;
pub use solid::{PinchKind, Voxel, VoxelSolid, COORD_LIMIT};
pub use surface::{boundary_surface, SurfaceComplex};

use thiserror::Error;

/// A lattice point.
pub type Point = [i64; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicalError {
    #[error("coordinate {value} exceeds the lattice bound 2^30")]
    CoordinateOutOfRange { value: i64 },
    #[error("solid is pinched at {at:?} ({kind})")]
    PinchedSolid { at: Point, kind: PinchKind },
    #[error("solid has no voxels")]
    EmptySolid,
    #[error("invalid edge cycle: {0}")]
    InvalidCycle(String),
    #[error("edge {from:?} -> {to:?} does not lie on the surface")]
    CycleNotOnSurface { from: Point, to: Point },
    #[error("surface edge at {at:?} has {faces} incident faces")]
    NonManifoldSurface { at: Point, faces: usize },
    #[error("no path between {from:?} and {to:?} on the surface")]
    Disconnected { from: Point, to: Point },
}

impl CubicalError {
    pub fn name(&self) -> &'static str {
        match self {
            CubicalError::CoordinateOutOfRange { .. } => "CoordinateOutOfRange",
            CubicalError::PinchedSolid { .. } => "PinchedSolid",
            CubicalError::EmptySolid => "EmptySolid",
            CubicalError::InvalidCycle(_) => "InvalidCycle",
            CubicalError::CycleNotOnSurface { .. } => "CycleNotOnSurface",
            CubicalError::NonManifoldSurface { .. } => "NonManifoldSurface",
            CubicalError::Disconnected { .. } => "Disconnected",
        }
    }
}
