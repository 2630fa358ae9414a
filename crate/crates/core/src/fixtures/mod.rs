//! Benchmark embeddings with canonical markings, and independent oracles
//! for cross-checking the homology solver.

mod drilled;
mod linking;
mod path;
mod tube;

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::cubical::{Cell, CubicalError, EdgeCycle, Point, SurfaceComplex, Voxel};
use crate::embedding::EmbeddingError;

pub use drilled::{drilled_cube, straight_tunnel, tunnel_closure};
pub use linking::{
    fox_three_colorings, linking_parity, linking_parity_polygons, LinkingParity, PROJECTION,
};
pub use path::{rectangle, trefoil, LatticePath};
pub use tube::{
    adjust_framing, core_of_tube, donut, donut_core, meridian_disk_crossings, tube,
    tube_with_framing, verify_tube_oracle, ClassCheck, Framing, OracleReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("invalid lattice path: {0}")]
    InvalidPath(String),
    #[error("path is not taut: points {first} and {second} are adjacent")]
    NotTaut { first: usize, second: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid tunnel: {0}")]
    InvalidTunnel(String),
    #[error("curves meet near {near:?}")]
    SharedPoint { near: Point },
    #[error("projection is not generic near {near:?}")]
    DegenerateProjection { near: Point },
    #[error("path has no three collinear consecutive points")]
    NoStraightSegment,
}

impl FixtureError {
    pub fn name(&self) -> &'static str {
        match self {
            FixtureError::Cubical(e) => e.name(),
            FixtureError::Embedding(e) => e.name(),
            FixtureError::InvalidPath(_) => "InvalidPath",
            FixtureError::NotTaut { .. } => "NotTaut",
            FixtureError::InvalidParameter(_) => "InvalidParameter",
            FixtureError::InvalidTunnel(_) => "InvalidTunnel",
            FixtureError::SharedPoint { .. } => "SharedPoint",
            FixtureError::DegenerateProjection { .. } => "DegenerateProjection",
            FixtureError::NoStraightSegment => "NoStraightSegment",
        }
    }
}

/// Corners of the square shared by face-adjacent voxels, in cyclic order.
fn shared_face(a: Voxel, b: Voxel) -> [Point; 4] {
    let (pa, pb) = (a.to_array(), b.to_array());
    let k = (0..3).find(|&k| pa[k] != pb[k]).expect("distinct voxels");
    let (u, w) = ((k + 1) % 3, (k + 2) % 3);
    let corner = |du: i64, dw: i64| {
        let mut p = pa;
        p[k] = pa[k].max(pb[k]);
        p[u] += du;
        p[w] += dw;
        p
    };
    [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)]
}

/// The boundary loop of the square shared by two voxels.
fn face_cycle(a: Voxel, b: Voxel) -> EdgeCycle {
    EdgeCycle::new(shared_face(a, b).to_vec()).expect("a square is a closed unit walk")
}

/// Shortest walk from `from` to one of `targets` along the edges of voxel
/// `v` that lie on `surface`. Excludes `from`, ends at the target reached.
fn walk_in_voxel(
    surface: &SurfaceComplex,
    v: Voxel,
    from: Point,
    targets: &[Point],
) -> Option<Vec<Point>> {
    let mut corners: Vec<Point> = Vec::with_capacity(8);
    for dx in 0..2 {
        for dy in 0..2 {
            for dz in 0..2 {
                corners.push([v.x + dx, v.y + dy, v.z + dz]);
            }
        }
    }
    let on_surface =
        |a: Point, b: Point| Cell::edge(a, b).is_some_and(|e| surface.complex().contains(&e));
    bfs(
        from,
        |p| targets.contains(&p),
        |p| {
            corners
                .iter()
                .copied()
                .filter(|&q| on_surface(p, q))
                .collect()
        },
    )
}

/// Breadth-first search over points. Returns the path after `start` up to
/// the first goal found, or an empty path when `start` is a goal.
fn bfs<G, N>(start: Point, is_goal: G, neighbors: N) -> Option<Vec<Point>>
where
    G: Fn(Point) -> bool,
    N: Fn(Point) -> Vec<Point>,
{
    let mut prev: HashMap<Point, Point> = HashMap::new();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if is_goal(p) {
            let mut path = Vec::new();
            let mut cur = p;
            while cur != start {
                path.push(cur);
                cur = prev[&cur];
            }
            path.reverse();
            return Some(path);
        }
        let mut next = neighbors(p);
        next.sort_unstable();
        for q in next {
            if seen.insert(q) {
                prev.insert(q, p);
                queue.push_back(q);
            }
        }
    }
    None
}
