//! Mod-2 linking numbers from a generic plane projection.
//!
//! Everything is exact: polygons live in doubled lattice coordinates and
//! crossings are found by Cramer's rule in `i128`. The projection direction
//! has coordinates far larger than any fixture coordinate, so a projected
//! vertex can only land on another projected segment when the two actually
//! meet in space.

use std::cmp::Ordering;
use std::fmt;

use super::{FixtureError, LatticePath};
use crate::cubical::{EdgeCycle, Point};

/// The projection direction.
pub const PROJECTION: [i64; 3] = [3, 1_000_003, 1_000_033];

/// Parity of the linking number of two disjoint closed curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinkingParity {
    pub odd: bool,
}

impl LinkingParity {
    pub fn bit(self) -> u8 {
        u8::from(self.odd)
    }
}

impl fmt::Display for LinkingParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// An exact fraction with positive denominator.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frac {
    num: i128,
    den: i128,
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// A projected crossing of segment `p0 p1` with segment `q0 q1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Crossing {
    /// Parameter along the first segment.
    pub s: Frac,
    /// Parameter along the second segment.
    pub t: Frac,
    /// Whether the first segment passes over the second.
    pub first_over: bool,
}

fn sub(a: Point, b: Point) -> [i128; 3] {
    [
        (a[0] - b[0]) as i128,
        (a[1] - b[1]) as i128,
        (a[2] - b[2]) as i128,
    ]
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn det(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    dot(a, cross(b, c))
}

fn neg(a: [i128; 3]) -> [i128; 3] {
    [-a[0], -a[1], -a[2]]
}

pub(crate) fn segment_crossing(
    p0: Point,
    p1: Point,
    q0: Point,
    q1: Point,
) -> Result<Option<Crossing>, FixtureError> {
    let d = PROJECTION.map(|x| x as i128);
    let (u, v, w) = (sub(p1, p0), sub(q1, q0), sub(q0, p0));
    let (nv, nd) = (neg(v), neg(d));
    let mut den = det(u, nv, nd);
    let (mut ds, mut dt, mut dl) = (det(w, nv, nd), det(u, w, nd), det(u, nv, w));
    if den == 0 {
        return degenerate_pair(p0, u, v, w);
    }
    if den < 0 {
        den = -den;
        ds = -ds;
        dt = -dt;
        dl = -dl;
    }
    if ds < 0 || ds > den || dt < 0 || dt > den {
        return Ok(None);
    }
    if dl == 0 {
        return Err(FixtureError::SharedPoint { near: p0 });
    }
    if ds == 0 || ds == den || dt == 0 || dt == den {
        return Err(FixtureError::DegenerateProjection { near: p0 });
    }
    Ok(Some(Crossing {
        s: Frac { num: ds, den },
        t: Frac { num: dt, den },
        first_over: dl > 0,
    }))
}

/// Both segments project to parallel lines.
fn degenerate_pair(
    p0: Point,
    u: [i128; 3],
    v: [i128; 3],
    w: [i128; 3],
) -> Result<Option<Crossing>, FixtureError> {
    let d = PROJECTION.map(|x| x as i128);
    let normal = if cross(u, v) == [0; 3] {
        cross(u, d)
    } else {
        cross(u, v)
    };
    if dot(w, normal) != 0 {
        // parallel projected lines that do not coincide
        return Ok(None);
    }
    if cross(u, v) == [0; 3] && cross(u, w) == [0; 3] {
        // collinear in space: they meet iff the intervals overlap
        let (a0, a1) = (0, dot(u, u));
        let (start, end) = (dot(w, u), dot(w, u) + dot(v, u));
        let (b0, b1) = (start.min(end), start.max(end));
        if b0 <= a1 && a0 <= b1 {
            return Err(FixtureError::SharedPoint { near: p0 });
        }
        return Ok(None);
    }
    Err(FixtureError::DegenerateProjection { near: p0 })
}

fn segments(poly: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
    let n = poly.len();
    (0..n).map(move |i| (poly[i], poly[(i + 1) % n]))
}

/// Mod-2 linking number of two closed polygons given by their vertices.
pub fn linking_parity_polygons(a: &[Point], b: &[Point]) -> Result<LinkingParity, FixtureError> {
    let mut odd = false;
    for (p0, p1) in segments(a) {
        for (q0, q1) in segments(b) {
            if let Some(c) = segment_crossing(p0, p1, q0, q1)? {
                odd ^= c.first_over;
            }
        }
    }
    Ok(LinkingParity { odd })
}

/// Mod-2 linking number of an edge cycle with the closed curve through the
/// voxel centers of `core`.
pub fn linking_parity(
    cycle: &EdgeCycle,
    core: &LatticePath,
) -> Result<LinkingParity, FixtureError> {
    if !core.is_closed() {
        return Err(FixtureError::InvalidPath(
            "the core must be a closed path".into(),
        ));
    }
    let a: Vec<Point> = cycle
        .vertices()
        .iter()
        .map(|p| [2 * p[0], 2 * p[1], 2 * p[2]])
        .collect();
    linking_parity_polygons(&a, &core.doubled_centers())
}

/// Position along a closed polygon: segment index, then parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Position {
    segment: usize,
    t: Frac,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SelfCrossing {
    pub over: Position,
    pub under: Position,
}

/// Crossings of a closed polygon's projection with itself.
pub(crate) fn self_crossings(poly: &[Point]) -> Result<Vec<SelfCrossing>, FixtureError> {
    let n = poly.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (p0, p1) = (poly[i], poly[(i + 1) % n]);
            let (q0, q1) = (poly[j], poly[(j + 1) % n]);
            if let Some(c) = segment_crossing(p0, p1, q0, q1)? {
                let a = Position { segment: i, t: c.s };
                let b = Position { segment: j, t: c.t };
                let (over, under) = if c.first_over { (a, b) } else { (b, a) };
                out.push(SelfCrossing { over, under });
            }
        }
    }
    Ok(out)
}

/// Number of Fox 3-colorings of the projected diagram of a closed polygon:
/// 3 for the unknot, 9 for the trefoil.
pub fn fox_three_colorings(poly: &[Point]) -> Result<usize, FixtureError> {
    let crossings = self_crossings(poly)?;
    if crossings.is_empty() {
        return Ok(3);
    }
    let mut unders: Vec<Position> = crossings.iter().map(|c| c.under).collect();
    unders.sort();
    let k = unders.len();
    // arc i runs from unders[i] to unders[i + 1]
    let arc_at = |p: Position| {
        let before = unders.iter().filter(|&&u| u < p).count();
        (before + k - 1) % k
    };
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for c in &crossings {
        let i = unders
            .iter()
            .position(|&u| u == c.under)
            .expect("collected above");
        let (incoming, outgoing, over) = ((i + k - 1) % k, i, arc_at(c.over));
        let mut row = vec![0u8; k];
        row[over] = (row[over] + 2) % 3;
        row[incoming] = (row[incoming] + 2) % 3;
        row[outgoing] = (row[outgoing] + 2) % 3;
        rows.push(row);
    }
    // rank over Z/3
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = if rows[rank][col] == 1 { 1 } else { 2 };
        for x in rows[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let f = row[col];
            if r != rank && f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + 3 * f - f * y) % 3;
                }
            }
        }
        rank += 1;
    }
    Ok(3usize.pow((k - rank) as u32))
}
