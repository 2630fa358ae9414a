use serde::{Deserialize, Serialize};

use super::{Cell, CubicalComplex, CubicalError, Point, SurfaceComplex, COORD_LIMIT};
use crate::gf2::Gf2Vector;

/// A closed walk along unit lattice edges.
///
/// Stored without repeating the first vertex; the last vertex steps back to
/// the first. As a Z/2 chain, an edge traversed an even number of times
/// cancels, so every edge cycle has zero boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct EdgeCycle {
    vertices: Vec<Point>,
}

impl EdgeCycle {
    /// Accepts the walk with or without the closing repeat of the first
    /// vertex.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, CubicalError> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 2 {
            return Err(CubicalError::InvalidCycle(format!(
                "a closed walk needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        for p in &vertices {
            if let Some(&value) = p.iter().find(|c| c.abs() > COORD_LIMIT) {
                return Err(CubicalError::CoordinateOutOfRange { value });
            }
        }
        let n = vertices.len();
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if Cell::edge(a, b).is_none() {
                return Err(CubicalError::InvalidCycle(format!(
                    "step {i}: {a:?} -> {b:?} is not a unit lattice edge"
                )));
            }
        }
        Ok(EdgeCycle { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn edge_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.edges()
            .map(|(a, b)| Cell::edge(a, b).expect("validated"))
    }

    /// The cycle as a Z/2 1-chain of `complex`.
    pub fn chain_in(&self, complex: &CubicalComplex) -> Result<Gf2Vector, CubicalError> {
        let mut indices = Vec::with_capacity(self.len());
        for (a, b) in self.edges() {
            let cell = Cell::edge(a, b).expect("validated");
            match complex.index_of(&cell) {
                Some(i) => indices.push(i),
                None => return Err(CubicalError::CycleNotOnSurface { from: a, to: b }),
            }
        }
        Ok(Gf2Vector::from_chain(complex.cell_count(1), indices).expect("indices in range"))
    }

    pub fn translated(&self, by: Point) -> Result<Self, CubicalError> {
        EdgeCycle::new(
            self.vertices
                .iter()
                .map(|p| [p[0] + by[0], p[1] + by[1], p[2] + by[2]])
                .collect(),
        )
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        EdgeCycle { vertices }
    }

    /// The same walk started at its first visit of `p`.
    pub fn rotated_to(&self, p: Point) -> Option<Self> {
        let i = self.vertices.iter().position(|&v| v == p)?;
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(i);
        Some(EdgeCycle { vertices })
    }

    /// A single closed walk whose chain is the sum of both chains.
    ///
    /// When the walks share a vertex they are spliced there; otherwise they
    /// are joined by a shortest surface path traversed once in each
    /// direction, which cancels mod 2.
    pub fn band_sum(
        &self,
        other: &EdgeCycle,
        surface: &SurfaceComplex,
    ) -> Result<Self, CubicalError> {
        if let Some(&p) = self.vertices.iter().find(|p| other.vertices.contains(p)) {
            let mut vertices = self.rotated_to(p).expect("shared").vertices;
            vertices.extend(other.rotated_to(p).expect("shared").vertices);
            return EdgeCycle::new(vertices);
        }
        let (p, q) = (self.vertices[0], other.vertices[0]);
        let path = surface.shortest_path(p, q)?;
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&path);
        vertices.extend_from_slice(&other.vertices[1..]);
        vertices.push(q);
        vertices.extend(path[1..path.len() - 1].iter().rev());
        EdgeCycle::new(vertices)
    }
}

impl TryFrom<Vec<Point>> for EdgeCycle {
    type Error = CubicalError;

    fn try_from(vertices: Vec<Point>) -> Result<Self, Self::Error> {
        EdgeCycle::new(vertices)
    }
}

impl From<EdgeCycle> for Vec<Point> {
    fn from(c: EdgeCycle) -> Self {
        c.vertices
    }
}
