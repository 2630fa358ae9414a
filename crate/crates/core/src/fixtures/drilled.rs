use std::collections::HashMap;

use super::{
    bfs, face_cycle, linking_parity_polygons, shared_face, walk_in_voxel, FixtureError, LatticePath,
};
use crate::cubical::{boundary_surface, EdgeCycle, Point, SurfaceComplex, Voxel, VoxelSolid};
use crate::embedding::MarkedTorusEmbedding;

/// Clearance, in doubled coordinates, between the cube and the box on which
/// the tunnel's closing arc runs.
const CLOSURE_GAP: i64 = 4;

/// The straight tunnel along z through column `(side/2 - 1, side/2 - 1)`.
pub fn straight_tunnel(side: i64) -> Result<LatticePath, FixtureError> {
    let c = side / 2 - 1;
    LatticePath::open((0..side).map(|z| [c, c, z]).collect())
}

/// The outward axis and sign of the single cube face a boundary voxel
/// touches.
fn mouth_normal(side: i64, t: Point) -> Result<(usize, i64), FixtureError> {
    let touching: Vec<(usize, i64)> = (0..3)
        .filter_map(|k| match t[k] {
            0 => Some((k, -1)),
            x if x == side - 1 => Some((k, 1)),
            _ => None,
        })
        .collect();
    match touching[..] {
        [one] => Ok(one),
        [] => Err(FixtureError::InvalidTunnel(format!(
            "end voxel {t:?} does not reach the cube boundary"
        ))),
        _ => Err(FixtureError::InvalidTunnel(format!(
            "end voxel {t:?} sits on a cube edge or corner"
        ))),
    }
}

fn outside(t: Point, (k, sign): (usize, i64)) -> Voxel {
    let mut p = t;
    p[k] += sign;
    Voxel::from(p)
}

fn validate_tunnel(side: i64, tunnel: &LatticePath) -> Result<(), FixtureError> {
    if side < 4 {
        return Err(FixtureError::InvalidParameter(format!(
            "drilled cube needs side >= 4, got {side}"
        )));
    }
    if tunnel.is_closed() || tunnel.len() < 2 {
        return Err(FixtureError::InvalidTunnel(
            "a tunnel is an open path of at least 2 voxels".into(),
        ));
    }
    let pts = tunnel.points();
    for &p in pts {
        if p.iter().any(|&x| x < 0 || x >= side) {
            return Err(FixtureError::InvalidTunnel(format!(
                "voxel {p:?} lies outside the cube"
            )));
        }
    }
    for &p in &pts[1..pts.len() - 1] {
        if p.iter().any(|&x| x == 0 || x == side - 1) {
            return Err(FixtureError::InvalidTunnel(format!(
                "voxel {p:?} touches the cube wall mid-course"
            )));
        }
    }
    mouth_normal(side, pts[0])?;
    mouth_normal(side, pts[pts.len() - 1])?;
    tunnel.check_taut()
}

/// A closed curve in doubled coordinates that runs through the tunnel and
/// returns outside the cube, around a box `CLOSURE_GAP` away from it.
pub fn tunnel_closure(side: i64, tunnel: &LatticePath) -> Result<Vec<Point>, FixtureError> {
    validate_tunnel(side, tunnel)?;
    let (lo, hi) = (-CLOSURE_GAP, 2 * side + CLOSURE_GAP);
    let centers = tunnel.doubled_centers();
    let route = |center: Point, (k, sign): (usize, i64)| {
        let mut p = center;
        p[k] = if sign < 0 { lo } else { hi };
        let mut out = vec![p];
        for axis in (0..3).filter(|&a| a != k).chain([k]) {
            if p[axis] != lo {
                p[axis] = lo;
                out.push(p);
            }
        }
        out
    };
    let pts = tunnel.points();
    let entry = route(centers[0], mouth_normal(side, pts[0])?);
    let exit = route(
        centers[centers.len() - 1],
        mouth_normal(side, pts[pts.len() - 1])?,
    );
    let mut poly = centers;
    poly.extend(exit);
    // both routes end at the same corner
    poly.extend(entry.into_iter().rev().skip(1));
    poly.dedup();
    Ok(poly)
}

/// Shortest walk along surface edges that stay in the cube's outer faces.
fn walk_outside(
    surface: &SurfaceComplex,
    side: i64,
    from: Point,
    to: Point,
) -> Result<Vec<Point>, FixtureError> {
    let on_wall = |a: Point, b: Point| (0..3).any(|k| a[k] == b[k] && (a[k] == 0 || a[k] == side));
    let mut adjacent: HashMap<Point, Vec<Point>> = HashMap::new();
    for e in surface.complex().cells(1) {
        let (a, b) = e.endpoints().expect("edge cell");
        if on_wall(a, b) {
            adjacent.entry(a).or_default().push(b);
            adjacent.entry(b).or_default().push(a);
        }
    }
    bfs(
        from,
        |p| p == to,
        |p| adjacent.get(&p).cloned().unwrap_or_default(),
    )
    .ok_or_else(|| {
        FixtureError::InvalidTunnel(format!("no path over the outside from {from:?} to {to:?}"))
    })
}

/// A `side³` cube with a one-voxel tunnel removed.
///
/// Marking convention: `m` girdles the entry mouth of the tunnel; `l` runs
/// through the tunnel and back over the outer faces of the cube, and is
/// chosen to link the tunnel's closure an even number of times, so that it
/// bounds in the drilled cube.
pub fn drilled_cube(side: i64, tunnel: &LatticePath) -> Result<MarkedTorusEmbedding, FixtureError> {
    validate_tunnel(side, tunnel)?;
    let holes: Vec<Voxel> = tunnel.points().iter().map(|&p| Voxel::from(p)).collect();
    let mut voxels = Vec::new();
    for x in 0..side {
        for y in 0..side {
            for z in 0..side {
                let v = Voxel::new(x, y, z);
                if !holes.contains(&v) {
                    voxels.push(v);
                }
            }
        }
    }
    let solid = VoxelSolid::new(voxels)?;
    let surface = boundary_surface(&solid)?;

    let pts = tunnel.points();
    let (first, last) = (holes[0], holes[holes.len() - 1]);
    let entry = shared_face(first, outside(pts[0], mouth_normal(side, pts[0])?));
    let exit = shared_face(
        last,
        outside(pts[pts.len() - 1], mouth_normal(side, pts[pts.len() - 1])?),
    );
    let m = face_cycle(first, outside(pts[0], mouth_normal(side, pts[0])?));

    let start = entry[0];
    let mut vertices = vec![start];
    let mut at = start;
    for (i, &v) in holes.iter().enumerate() {
        let targets: Vec<Point> = match holes.get(i + 1) {
            Some(&next) => shared_face(v, next).to_vec(),
            None => exit.to_vec(),
        };
        let step = walk_in_voxel(&surface, v, at, &targets).ok_or_else(|| {
            FixtureError::InvalidTunnel(format!("no surface walk through tunnel voxel {v:?}"))
        })?;
        if let Some(&p) = step.last() {
            at = p;
        }
        vertices.extend(step);
    }
    vertices.extend(walk_outside(&surface, side, at, start)?);
    let mut l = EdgeCycle::new(vertices)?;

    let closure = tunnel_closure(side, tunnel)?;
    let doubled: Vec<Point> = l.vertices().iter().map(|p| p.map(|x| 2 * x)).collect();
    if linking_parity_polygons(&doubled, &closure)?.odd {
        l = l.band_sum(&m, &surface)?;
    }
    Ok(MarkedTorusEmbedding::new(solid, m, l)?)
}
