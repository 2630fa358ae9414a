//! Mod-2 quadruple-point invariant of embedded tori, computed on voxel solids.

pub mod cubical;
pub mod embedding;
pub mod fixtures;
pub mod gf2;
pub mod mcg;
pub mod moves;
