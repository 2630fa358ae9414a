use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CubicalError, Point};

/// Largest admissible absolute voxel coordinate.
pub const COORD_LIMIT: i64 = 1 << 30;

/// The unit cube `[x, x+1] × [y, y+1] × [z, z+1]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Voxel {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Voxel {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Voxel { x, y, z }
    }

    pub const fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub const fn offset(self, dx: i64, dy: i64, dz: i64) -> Self {
        Voxel::new(self.x + dx, self.y + dy, self.z + dz)
    }

    /// Corner with the smallest coordinates.
    pub const fn min_corner(self) -> Point {
        [self.x, self.y, self.z]
    }

    /// The six voxels sharing a square face with this one.
    pub fn face_neighbors(self) -> [Voxel; 6] {
        [
            self.offset(-1, 0, 0),
            self.offset(1, 0, 0),
            self.offset(0, -1, 0),
            self.offset(0, 1, 0),
            self.offset(0, 0, -1),
            self.offset(0, 0, 1),
        ]
    }

    fn check_range(self) -> Result<(), CubicalError> {
        for value in self.to_array() {
            if value.abs() > COORD_LIMIT {
                return Err(CubicalError::CoordinateOutOfRange { value });
            }
        }
        Ok(())
    }
}

impl From<[i64; 3]> for Voxel {
    fn from([x, y, z]: [i64; 3]) -> Self {
        Voxel::new(x, y, z)
    }
}

impl From<Voxel> for [i64; 3] {
    fn from(v: Voxel) -> Self {
        v.to_array()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinchKind {
    /// Two solid voxels meet along a lattice edge whose other two voxels are empty.
    Edge,
    /// The solid or empty octants around a lattice vertex fall apart.
    Vertex,
}

impl fmt::Display for PinchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PinchKind::Edge => f.write_str("edge"),
            PinchKind::Vertex => f.write_str("vertex"),
        }
    }
}

/// A finite set of voxels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VoxelSolid {
    voxels: BTreeSet<Voxel>,
}

impl VoxelSolid {
    pub fn new<I: IntoIterator<Item = Voxel>>(voxels: I) -> Result<Self, CubicalError> {
        let voxels: BTreeSet<Voxel> = voxels.into_iter().collect();
        for v in &voxels {
            v.check_range()?;
        }
        Ok(VoxelSolid { voxels })
    }

    pub fn len(&self) -> usize {
        self.voxels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voxels.is_empty()
    }

    pub fn contains(&self, v: &Voxel) -> bool {
        self.voxels.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Voxel> + '_ {
        self.voxels.iter()
    }

    /// Smallest and largest voxel coordinates along each axis.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.voxels.iter();
        let first = it.next()?.to_array();
        let (mut lo, mut hi) = (first, first);
        for v in it {
            for (k, c) in v.to_array().into_iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        Some((lo, hi))
    }

    pub fn translated(&self, by: Point) -> Result<Self, CubicalError> {
        VoxelSolid::new(self.voxels.iter().map(|v| v.offset(by[0], by[1], by[2])))
    }

    pub fn difference(&self, other: &VoxelSolid) -> VoxelSolid {
        VoxelSolid {
            voxels: self.voxels.difference(&other.voxels).copied().collect(),
        }
    }

    /// Checks that the boundary of the solid is a closed 2-manifold.
    ///
    /// Around every lattice edge the four incident voxels must not form a
    /// diagonal pattern, and around every lattice vertex both the solid and
    /// the empty octants must be face-connected within the 2×2×2 block.
    /// Together these make the link of every boundary vertex a single circle.
    pub fn check_manifold(&self) -> Result<(), CubicalError> {
        let mut vertices = HashSet::new();
        for v in &self.voxels {
            for dx in 0..2 {
                for dy in 0..2 {
                    for dz in 0..2 {
                        vertices.insert([v.x + dx, v.y + dy, v.z + dz]);
                    }
                }
            }
        }
        let mut vertices: Vec<Point> = vertices.into_iter().collect();
        vertices.sort_unstable();

        for &p in &vertices {
            let mask = self.octant_mask(p);
            // an edge touching the solid lies in a solid voxel, so it is the
            // positive-direction edge of one of these vertices
            for axis in 0..3 {
                if self.edge_is_pinched(p, axis) {
                    return Err(CubicalError::PinchedSolid {
                        at: p,
                        kind: PinchKind::Edge,
                    });
                }
            }
            if mask != 0 && mask != 0xff && !(octants_connected(mask) && octants_connected(!mask)) {
                return Err(CubicalError::PinchedSolid {
                    at: p,
                    kind: PinchKind::Vertex,
                });
            }
        }
        Ok(())
    }

    /// Bit `dx | dy << 1 | dz << 2` is set when voxel `p - 1 + d` is solid.
    fn octant_mask(&self, p: Point) -> u8 {
        let mut mask = 0u8;
        for bit in 0..8u8 {
            let d = [
                (bit & 1) as i64,
                (bit >> 1 & 1) as i64,
                (bit >> 2 & 1) as i64,
            ];
            let v = Voxel::new(p[0] - 1 + d[0], p[1] - 1 + d[1], p[2] - 1 + d[2]);
            if self.voxels.contains(&v) {
                mask |= 1 << bit;
            }
        }
        mask
    }

    /// The lattice edge from `p` to `p + e_axis`.
    fn edge_is_pinched(&self, p: Point, axis: usize) -> bool {
        let (u, w) = ((axis + 1) % 3, (axis + 2) % 3);
        let at = |du: i64, dw: i64| {
            let mut c = p;
            c[u] += du;
            c[w] += dw;
            self.voxels.contains(&Voxel::from(c))
        };
        let (a, b, c, d) = (at(-1, -1), at(0, 0), at(-1, 0), at(0, -1));
        (a && b && !c && !d) || (c && d && !a && !b)
    }
}

impl<'a> IntoIterator for &'a VoxelSolid {
    type Item = &'a Voxel;
    type IntoIter = std::collections::btree_set::Iter<'a, Voxel>;

    fn into_iter(self) -> Self::IntoIter {
        self.voxels.iter()
    }
}

/// Face-connectivity of a set of octants of the 2×2×2 block.
fn octants_connected(mask: u8) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask.trailing_zeros() as u8;
    let mut seen = 1u8 << start;
    let mut stack = vec![start];
    while let Some(o) = stack.pop() {
        for flip in [1u8, 2, 4] {
            let n = o ^ flip;
            if mask >> n & 1 == 1 && seen >> n & 1 == 0 {
                seen |= 1 << n;
                stack.push(n);
            }
        }
    }
    seen == mask
}
