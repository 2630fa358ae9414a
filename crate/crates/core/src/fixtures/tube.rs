use std::collections::BTreeMap;
use std::fmt;

use super::{face_cycle, linking_parity, shared_face, walk_in_voxel, FixtureError, LatticePath};
use crate::cubical::{boundary_surface, EdgeCycle, Point, SurfaceComplex, Voxel, VoxelSolid};
use crate::embedding::{bounding_classes, H1Class, MarkedTorusEmbedding};

/// Which longitude a tube gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Framing {
    /// The edge walk that follows the voxel chain.
    Lattice,
    /// Even linking with the core.
    Even,
    /// Odd linking with the core.
    Odd,
}

impl std::str::FromStr for Framing {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lattice" => Ok(Framing::Lattice),
            "even" => Ok(Framing::Even),
            "odd" => Ok(Framing::Odd),
            other => Err(FixtureError::InvalidParameter(format!(
                "unknown framing {other:?}; expected lattice, even or odd"
            ))),
        }
    }
}

fn voxel_chain(knot: &LatticePath) -> Vec<Voxel> {
    knot.points().iter().map(|&p| Voxel::from(p)).collect()
}

/// Walks once around a closed voxel chain on its boundary surface, passing
/// from each voxel to the next through a corner of their shared face.
fn lattice_longitude(surface: &SurfaceComplex, chain: &[Voxel]) -> Result<EdgeCycle, FixtureError> {
    let n = chain.len();
    let start = shared_face(chain[n - 1], chain[0])[0];
    let mut vertices = vec![start];
    let mut at = start;
    for i in 0..n {
        let targets: Vec<Point> = if i == n - 1 {
            vec![start]
        } else {
            shared_face(chain[i], chain[i + 1]).to_vec()
        };
        let step = walk_in_voxel(surface, chain[i], at, &targets).ok_or_else(|| {
            FixtureError::InvalidPath(format!("no surface walk through voxel {:?}", chain[i]))
        })?;
        if let Some(&last) = step.last() {
            at = last;
        }
        vertices.extend(step);
    }
    Ok(EdgeCycle::new(vertices)?)
}

/// The boundary of a one-voxel-thick tube around a closed taut path.
///
/// `m` is the square shared by the voxels at the first straight stretch of
/// the path and its successor; `l` is the lattice longitude.
pub fn tube(knot: &LatticePath) -> Result<MarkedTorusEmbedding, FixtureError> {
    if !knot.is_closed() {
        return Err(FixtureError::InvalidPath(
            "a tube needs a closed path".into(),
        ));
    }
    let solid = knot.voxels()?;
    solid.check_manifold()?;
    knot.check_taut()?;
    let j = knot
        .straight_index()
        .ok_or(FixtureError::NoStraightSegment)?;
    let chain = voxel_chain(knot);
    let m = face_cycle(chain[j], chain[(j + 1) % chain.len()]);
    let surface = boundary_surface(&solid)?;
    let l = lattice_longitude(&surface, &chain)?;
    Ok(MarkedTorusEmbedding::new(solid, m, l)?)
}

pub fn tube_with_framing(
    knot: &LatticePath,
    framing: Framing,
) -> Result<MarkedTorusEmbedding, FixtureError> {
    let e = tube(knot)?;
    let odd = linking_parity(e.l_cycle(), knot)?.odd;
    match framing {
        Framing::Even if odd => adjust_framing(&e),
        Framing::Odd if !odd => adjust_framing(&e),
        _ => Ok(e),
    }
}

/// Replaces `l` by a loop in the class `l + m`.
pub fn adjust_framing(e: &MarkedTorusEmbedding) -> Result<MarkedTorusEmbedding, FixtureError> {
    let l = e.l_cycle().band_sum(e.m_cycle(), e.surface())?;
    Ok(e.remarked(e.m_cycle().clone(), l)?)
}

/// The `outer × outer` square ring of height 1 with a one-voxel wall.
///
/// `m` girdles the wall between voxels `(0,0,0)` and `(1,0,0)`; `l` is the
/// bottom rim of the hole.
pub fn donut(outer: i64) -> Result<MarkedTorusEmbedding, FixtureError> {
    if outer < 3 {
        return Err(FixtureError::InvalidParameter(format!(
            "donut needs outer >= 3 to have a hole, got {outer}"
        )));
    }
    let mut voxels = Vec::new();
    for x in 0..outer {
        for y in 0..outer {
            if x == 0 || y == 0 || x == outer - 1 || y == outer - 1 {
                voxels.push(Voxel::new(x, y, 0));
            }
        }
    }
    let solid = VoxelSolid::new(voxels)?;
    let m = face_cycle(Voxel::new(0, 0, 0), Voxel::new(1, 0, 0));
    let k = outer - 1;
    let mut rim = Vec::new();
    rim.extend((1..k).map(|x| [x, 1, 0]));
    rim.extend((1..k).map(|y| [k, y, 0]));
    rim.extend((2..=k).rev().map(|x| [x, k, 0]));
    rim.extend((2..=k).rev().map(|y| [1, y, 0]));
    let l = EdgeCycle::new(rim)?;
    Ok(MarkedTorusEmbedding::new(solid, m, l)?)
}

/// The voxel chain of `donut(outer)` as a closed path.
pub fn donut_core(outer: i64) -> Result<LatticePath, FixtureError> {
    super::rectangle(outer, outer)
}

/// Recovers the closed voxel chain of a one-voxel-thick tube: every voxel
/// must have exactly two face neighbors and the voxels must form one cycle.
pub fn core_of_tube(solid: &VoxelSolid) -> Option<LatticePath> {
    let mut neighbors: BTreeMap<Voxel, Vec<Voxel>> = BTreeMap::new();
    for &v in solid {
        let ns: Vec<Voxel> = v
            .face_neighbors()
            .into_iter()
            .filter(|n| solid.contains(n))
            .collect();
        if ns.len() != 2 {
            return None;
        }
        neighbors.insert(v, ns);
    }
    let start = *neighbors.keys().next()?;
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, neighbors[&start].iter().copied().min()?);
    while cur != start {
        order.push(cur);
        let next = neighbors[&cur].iter().copied().find(|&n| n != prev)?;
        prev = cur;
        cur = next;
    }
    if order.len() != solid.len() {
        return None;
    }
    LatticePath::closed(order.into_iter().map(Voxel::to_array).collect()).ok()
}

/// Traversals of `z` across the four lengthwise edges of the voxel at the
/// first straight stretch of `core`. Mod 2 this is the intersection number
/// of `z` with a meridian disk cutting that voxel in half.
pub fn meridian_disk_crossings(z: &EdgeCycle, core: &LatticePath) -> Result<usize, FixtureError> {
    let j = core
        .straight_index()
        .ok_or(FixtureError::NoStraightSegment)?;
    let n = core.len();
    let (v, next) = (core.points()[j], core.points()[(j + 1) % n]);
    let axis = (0..3).find(|&k| v[k] != next[k]).expect("unit step");
    let lengthwise = |a: Point, b: Point| {
        (0..3).all(|k| {
            if k == axis {
                a[k].min(b[k]) == v[k] && a[k].abs_diff(b[k]) == 1
            } else {
                a[k] == b[k] && (a[k] == v[k] || a[k] == v[k] + 1)
            }
        })
    };
    Ok(z.edges().filter(|&(a, b)| lengthwise(a, b)).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCheck {
    pub class: H1Class,
    pub outer_solver: bool,
    pub outer_oracle: bool,
    pub compact_solver: bool,
    pub compact_oracle: bool,
}

impl ClassCheck {
    pub fn agrees(&self) -> bool {
        self.outer_solver == self.outer_oracle && self.compact_solver == self.compact_oracle
    }
}

/// Solver and oracle verdicts on "bounds in this region" for all three
/// nonzero classes of a tube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub checks: Vec<ClassCheck>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.checks.iter().all(ClassCheck::agrees)
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bit = |b: bool| u8::from(b);
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "class={} outer_solver={} outer_oracle={} compact_solver={} compact_oracle={} agree={}",
                c.class,
                bit(c.outer_solver),
                bit(c.outer_oracle),
                bit(c.compact_solver),
                bit(c.compact_oracle),
                c.agrees()
            )?;
        }
        Ok(())
    }
}

/// Cross-checks the solver on a tube around `core`: a class bounds outside
/// iff it links the core an even number of times, and bounds inside iff it
/// crosses a meridian disk an even number of times.
pub fn verify_tube_oracle(
    e: &MarkedTorusEmbedding,
    core: &LatticePath,
) -> Result<OracleReport, FixtureError> {
    let outer = bounding_classes(&e.outer_region(), e)?;
    let compact = bounding_classes(&e.compact_region(), e)?;
    let mut checks = Vec::new();
    for class in H1Class::ALL {
        let z = e.realize(class)?;
        checks.push(ClassCheck {
            class,
            outer_solver: outer.contains(&class),
            outer_oracle: !linking_parity(&z, core)?.odd,
            compact_solver: compact.contains(&class),
            compact_oracle: meridian_disk_crossings(&z, core)? % 2 == 0,
        });
    }
    Ok(OracleReport { checks })
}
