use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::FixtureError;
use crate::cubical::{Point, Voxel, VoxelSolid};

/// A chain of lattice points with unit steps, read as the centers of a
/// chain of voxels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    points: Vec<Point>,
    closed: bool,
}

fn unit_step(a: Point, b: Point) -> bool {
    (0..3).map(|k| (a[k] - b[k]).abs()).sum::<i64>() == 1
}

impl LatticePath {
    /// A closed path must not repeat its first point at the end.
    pub fn new(points: Vec<Point>, closed: bool) -> Result<Self, FixtureError> {
        let min_len = if closed { 4 } else { 1 };
        if points.len() < min_len {
            return Err(FixtureError::InvalidPath(format!(
                "need at least {min_len} points, got {}",
                points.len()
            )));
        }
        let mut seen = HashSet::new();
        for (i, &p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(FixtureError::InvalidPath(format!(
                    "point {p:?} repeats at index {i}"
                )));
            }
        }
        let steps = if closed {
            points.len()
        } else {
            points.len() - 1
        };
        for i in 0..steps {
            let (a, b) = (points[i], points[(i + 1) % points.len()]);
            if !unit_step(a, b) {
                return Err(FixtureError::InvalidPath(format!(
                    "step {i}: {a:?} -> {b:?} is not a unit step"
                )));
            }
        }
        Ok(LatticePath { points, closed })
    }

    pub fn closed(points: Vec<Point>) -> Result<Self, FixtureError> {
        LatticePath::new(points, true)
    }

    pub fn open(points: Vec<Point>) -> Result<Self, FixtureError> {
        LatticePath::new(points, false)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index distance along the path, cyclic when closed.
    fn gap(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        if self.closed {
            d.min(self.points.len() - d)
        } else {
            d
        }
    }

    /// Fails with the first pair of non-consecutive points at unit distance.
    pub fn check_taut(&self) -> Result<(), FixtureError> {
        let index: std::collections::HashMap<Point, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        for (i, p) in self.points.iter().enumerate() {
            for v in Voxel::from(*p).face_neighbors() {
                if let Some(&j) = index.get(&v.to_array()) {
                    if self.gap(i, j) > 1 {
                        return Err(FixtureError::NotTaut {
                            first: i.min(j),
                            second: i.max(j),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Scales by 2 and inserts the midpoints, so distinct strands end up
    /// at least two apart.
    pub fn doubled(&self) -> LatticePath {
        let n = self.points.len();
        let steps = if self.closed { n } else { n - 1 };
        let mut points = Vec::with_capacity(2 * n);
        for i in 0..steps {
            let (a, b) = (self.points[i], self.points[(i + 1) % n]);
            points.push([2 * a[0], 2 * a[1], 2 * a[2]]);
            points.push([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
        }
        if !self.closed {
            let last = self.points[n - 1];
            points.push([2 * last[0], 2 * last[1], 2 * last[2]]);
        }
        LatticePath {
            points,
            closed: self.closed,
        }
    }

    pub fn translated(&self, by: Point) -> LatticePath {
        LatticePath {
            points: self
                .points
                .iter()
                .map(|p| [p[0] + by[0], p[1] + by[1], p[2] + by[2]])
                .collect(),
            closed: self.closed,
        }
    }

    pub fn voxels(&self) -> Result<VoxelSolid, FixtureError> {
        Ok(VoxelSolid::new(
            self.points.iter().map(|&p| Voxel::from(p)),
        )?)
    }

    /// Voxel centers in doubled coordinates, for the linking oracle.
    pub fn doubled_centers(&self) -> Vec<Point> {
        self.points
            .iter()
            .map(|p| [2 * p[0] + 1, 2 * p[1] + 1, 2 * p[2] + 1])
            .collect()
    }

    /// First index `j` whose neighbors `j-1`, `j+1` are collinear with it.
    pub fn straight_index(&self) -> Option<usize> {
        let n = self.points.len();
        let range = if self.closed {
            0..n
        } else {
            1..n.saturating_sub(1)
        };
        range.into_iter().find(|&j| {
            let (a, b, c) = (
                self.points[(j + n - 1) % n],
                self.points[j],
                self.points[(j + 1) % n],
            );
            (0..3).all(|k| b[k] - a[k] == c[k] - b[k])
        })
    }
}

/// The boundary of the `w × h` rectangle of lattice points at `z = 0`,
/// counterclockwise from the origin.
pub fn rectangle(w: i64, h: i64) -> Result<LatticePath, FixtureError> {
    if w < 2 || h < 2 {
        return Err(FixtureError::InvalidParameter(format!(
            "rectangle needs both sides at least 2, got {w} x {h}"
        )));
    }
    let mut points = Vec::new();
    points.extend((0..w - 1).map(|x| [x, 0, 0]));
    points.extend((0..h - 1).map(|y| [w - 1, y, 0]));
    points.extend((1..w).rev().map(|x| [x, h - 1, 0]));
    points.extend((1..h).rev().map(|y| [0, y, 0]));
    LatticePath::closed(points)
}

const COARSE_TREFOIL: [Point; 44] = [
    [0, -1, 0],
    [1, -1, 0],
    [1, -1, -1],
    [2, -1, -1],
    [2, 0, -1],
    [3, 0, -1],
    [3, 1, -1],
    [3, 1, 0],
    [3, 2, 0],
    [3, 2, 1],
    [2, 2, 1],
    [1, 2, 1],
    [0, 2, 1],
    [0, 1, 1],
    [-1, 1, 1],
    [-1, 1, 0],
    [-1, 0, 0],
    [-1, 0, -1],
    [-1, -1, -1],
    [-1, -2, -1],
    [-1, -3, -1],
    [0, -3, -1],
    [0, -3, 0],
    [0, -3, 1],
    [1, -3, 1],
    [1, -2, 1],
    [1, -1, 1],
    [1, 0, 1],
    [1, 0, 0],
    [1, 1, 0],
    [0, 1, 0],
    [0, 1, -1],
    [0, 2, -1],
    [-1, 2, -1],
    [-2, 2, -1],
    [-3, 2, -1],
    [-3, 2, 0],
    [-3, 1, 0],
    [-3, 1, 1],
    [-3, 0, 1],
    [-2, 0, 1],
    [-2, -1, 1],
    [-1, -1, 1],
    [-1, -1, 0],
];

/// A taut closed lattice trefoil of 88 points.
pub fn trefoil() -> LatticePath {
    LatticePath::closed(COARSE_TREFOIL.to_vec())
        .expect("trefoil constant is a simple closed lattice path")
        .doubled()
}
