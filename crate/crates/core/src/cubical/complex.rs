use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use super::{CubicalError, Point, Voxel, VoxelSolid};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// A cell of the unit cubical lattice in doubled coordinates.
///
/// Coordinate `2k` means the cell sits at lattice coordinate `k` along that
/// axis; `2k + 1` means it spans `[k, k+1]`. The dimension is the number of
/// odd coordinates, so vertices, edges, squares and cubes share one key type
/// and sort lexicographically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(pub [i64; 3]);

impl Cell {
    pub fn vertex(p: Point) -> Cell {
        Cell([2 * p[0], 2 * p[1], 2 * p[2]])
    }

    pub fn cube(v: Voxel) -> Cell {
        Cell([2 * v.x + 1, 2 * v.y + 1, 2 * v.z + 1])
    }

    /// The edge between two lattice points at unit distance.
    pub fn edge(a: Point, b: Point) -> Option<Cell> {
        let diff: i64 = (0..3).map(|k| (a[k] - b[k]).abs()).sum();
        (diff == 1).then(|| Cell([a[0] + b[0], a[1] + b[1], a[2] + b[2]]))
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| c.rem_euclid(2) == 1).count()
    }

    /// Codimension-one faces.
    pub fn faces(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..3)
            .filter(|&k| self.0[k].rem_euclid(2) == 1)
            .flat_map(move |k| {
                [-1, 1].into_iter().map(move |d| {
                    let mut c = self.0;
                    c[k] += d;
                    Cell(c)
                })
            })
    }

    /// The cell together with all of its faces of every dimension.
    pub fn closure(&self) -> Vec<Cell> {
        let ranges: Vec<Vec<i64>> = self
            .0
            .iter()
            .map(|&c| {
                if c.rem_euclid(2) == 1 {
                    vec![c - 1, c, c + 1]
                } else {
                    vec![c]
                }
            })
            .collect();
        let mut out = Vec::with_capacity(27);
        for &x in &ranges[0] {
            for &y in &ranges[1] {
                for &z in &ranges[2] {
                    out.push(Cell([x, y, z]));
                }
            }
        }
        out
    }

    /// Lattice coordinates of a vertex cell.
    pub fn as_point(&self) -> Option<Point> {
        (self.dim() == 0).then(|| [self.0[0] / 2, self.0[1] / 2, self.0[2] / 2])
    }

    /// Endpoints of an edge cell, smaller first.
    pub fn endpoints(&self) -> Option<(Point, Point)> {
        if self.dim() != 1 {
            return None;
        }
        let mut a = self.0;
        let mut b = self.0;
        for k in 0..3 {
            if self.0[k].rem_euclid(2) == 1 {
                a[k] -= 1;
                b[k] += 1;
            }
        }
        Some((
            [a[0] / 2, a[1] / 2, a[2] / 2],
            [b[0] / 2, b[1] / 2, b[2] / 2],
        ))
    }
}

/// A finite cubical complex with its Z/2 boundary operators.
///
/// Cells of each dimension are kept in sorted order and every boundary
/// matrix is indexed by that order. The complex is closed under taking faces
/// and satisfies `∂ₖ₋₁ ∘ ∂ₖ = 0`, both checked on construction.
#[derive(Debug)]
pub struct CubicalComplex {
    cells: [Vec<Cell>; 4],
    index: [HashMap<Cell, usize>; 4],
    /// `boundary[k - 1]` maps k-chains to (k-1)-chains, k = 1..=3.
    boundary: [Gf2Matrix; 3],
    ranks: OnceLock<[usize; 3]>,
}

impl Clone for CubicalComplex {
    fn clone(&self) -> Self {
        CubicalComplex {
            cells: self.cells.clone(),
            index: self.index.clone(),
            boundary: self.boundary.clone(),
            ranks: self
                .ranks
                .get()
                .map(|r| OnceLock::from(*r))
                .unwrap_or_default(),
        }
    }
}

impl CubicalComplex {
    /// Closure of an arbitrary set of cells.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut all = HashSet::new();
        for c in cells {
            all.extend(c.closure());
        }
        Self::from_closed(all)
    }

    /// Complex of a set of voxels, without any manifold check.
    pub fn from_voxels<'a, I: IntoIterator<Item = &'a Voxel>>(voxels: I) -> Self {
        Self::from_cells(voxels.into_iter().map(|&v| Cell::cube(v)))
    }

    fn from_closed(all: HashSet<Cell>) -> Self {
        let mut cells: [Vec<Cell>; 4] = Default::default();
        for c in all {
            cells[c.dim()].push(c);
        }
        for list in &mut cells {
            list.sort_unstable();
        }
        let index: [HashMap<Cell, usize>; 4] =
            std::array::from_fn(|d| cells[d].iter().enumerate().map(|(i, &c)| (c, i)).collect());
        let boundary: [Gf2Matrix; 3] = std::array::from_fn(|k| {
            let dim = k + 1;
            let entries = cells[dim].iter().enumerate().flat_map(|(j, c)| {
                let index = &index[dim - 1];
                c.faces().map(move |f| (index[&f], j)).collect::<Vec<_>>()
            });
            Gf2Matrix::from_entries(cells[dim - 1].len(), cells[dim].len(), entries)
                .expect("faces are indexed")
        });
        let complex = CubicalComplex {
            cells,
            index,
            boundary,
            ranks: OnceLock::new(),
        };
        assert!(
            complex.chain_condition_holds(),
            "boundary of boundary is nonzero"
        );
        complex
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        &self.cells[dim]
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells[dim].len()
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index[cell.dim()].get(cell).copied()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.index[cell.dim()].contains_key(cell)
    }

    /// Top dimension holding at least one cell, or `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        (0..4).rev().find(|&d| !self.cells[d].is_empty())
    }

    /// The operator ∂ₖ for k in 1..=3.
    pub fn boundary_matrix(&self, k: usize) -> &Gf2Matrix {
        assert!((1..=3).contains(&k), "boundary degree must be 1, 2 or 3");
        &self.boundary[k - 1]
    }

    pub fn chain_condition_holds(&self) -> bool {
        (2..=3).all(|k| {
            self.boundary_matrix(k - 1)
                .mul(self.boundary_matrix(k))
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    /// Rank of ∂ₖ for k = 1..=3, computed once.
    ///
    /// Reduces from the top dimension down, clearing every column of ∂ₖ
    /// whose cell is a pivot row of the reduced ∂ₖ₊₁.
    pub fn boundary_ranks(&self) -> [usize; 3] {
        *self.ranks.get_or_init(|| {
            let mut ranks = [0; 3];
            let mut cleared = vec![false; self.cells[3].len()];
            for k in (0..3).rev() {
                let echelon = self.boundary[k].echelon_skipping(&cleared);
                ranks[k] = echelon.rank();
                cleared = vec![false; self.cells[k].len()];
                for r in echelon.pivot_rows() {
                    cleared[r] = true;
                }
            }
            ranks
        })
    }

    /// Z/2 Betti number `bₖ = dim ker ∂ₖ − rank ∂ₖ₊₁`, for k in 0..=3.
    pub fn betti(&self, k: usize) -> usize {
        let ranks = self.boundary_ranks();
        let rank_of = |d: usize| {
            if (1..=3).contains(&d) {
                ranks[d - 1]
            } else {
                0
            }
        };
        self.cells[k].len() - rank_of(k) - rank_of(k + 1)
    }

    /// `(b₀, b₁, b₂)`.
    pub fn betti_numbers(&self) -> [usize; 3] {
        [self.betti(0), self.betti(1), self.betti(2)]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if d % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    /// Connected components of the 1-skeleton, by union-find over edges.
    pub fn connected_components(&self) -> usize {
        let n = self.cells[0].len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut components = n;
        let d1 = self.boundary_matrix(1);
        for j in 0..d1.cols() {
            if let [a, b] = *d1.column(j) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    components -= 1;
                }
            }
        }
        components
    }

    /// Indicator vector of a set of cells of one dimension. Cells listed
    /// twice cancel. Returns `None` if some cell is not in the complex.
    pub fn chain<I: IntoIterator<Item = Cell>>(&self, dim: usize, cells: I) -> Option<Gf2Vector> {
        let idx: Option<Vec<usize>> = cells
            .into_iter()
            .map(|c| {
                if c.dim() == dim {
                    self.index[dim].get(&c).copied()
                } else {
                    None
                }
            })
            .collect();
        Some(Gf2Vector::from_chain(self.cells[dim].len(), idx?).expect("indices in range"))
    }
}

/// Full cubical complex of a solid: its cubes and all their faces.
pub fn build_complex(solid: &VoxelSolid) -> Result<CubicalComplex, CubicalError> {
    solid.check_manifold()?;
    Ok(CubicalComplex::from_voxels(solid))
}

#[cfg(test)]
mod tests {
    use super::super::test_support::{genus_two, ring3, solid};
    use super::*;

    fn counts(c: &CubicalComplex) -> [usize; 4] {
        std::array::from_fn(|d| c.cell_count(d))
    }

    #[test]
    fn single_voxel_counts_and_homology() {
        let c = build_complex(&solid(&[[0, 0, 0]])).unwrap();
        assert_eq!(counts(&c), [8, 12, 6, 1]);
        assert_eq!(c.betti_numbers(), [1, 0, 0]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn bar_counts() {
        // edges: 8 along x, 6 along y, 6 along z; squares: 4 + 4 + 3
        let c = build_complex(&solid(&[[0, 0, 0], [1, 0, 0]])).unwrap();
        assert_eq!(counts(&c), [12, 20, 11, 2]);
        assert_eq!(c.betti_numbers(), [1, 0, 0]);
    }

    #[test]
    fn pinched_rejected() {
        let err = build_complex(&solid(&[[0, 0, 0], [1, 1, 1]])).unwrap_err();
        assert_eq!(err.name(), "PinchedSolid");
    }

    #[test]
    fn ring_is_a_circle() {
        let c = build_complex(&ring3()).unwrap();
        assert_eq!(c.betti_numbers(), [1, 1, 0]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn genus_two_solid() {
        let c = build_complex(&genus_two()).unwrap();
        assert_eq!(c.betti_numbers(), [1, 2, 0]);
    }

    #[test]
    fn components_match_b0() {
        let c = CubicalComplex::from_voxels(solid(&[[0, 0, 0], [3, 0, 0], [6, 6, 6]]).iter());
        assert_eq!(c.connected_components(), 3);
        assert_eq!(c.betti(0), 3);
    }

    #[test]
    fn edge_cells() {
        let e = Cell::edge([0, 0, 0], [0, 1, 0]).unwrap();
        assert_eq!(e, Cell([0, 1, 0]));
        assert_eq!(e.endpoints(), Some(([0, 0, 0], [0, 1, 0])));
        assert!(Cell::edge([0, 0, 0], [1, 1, 0]).is_none());
        let neg = Cell::edge([-1, 0, 0], [-2, 0, 0]).unwrap();
        assert_eq!(neg.dim(), 1);
        assert_eq!(neg.endpoints(), Some(([-2, 0, 0], [-1, 0, 0])));
    }

    #[test]
    fn empty_complex() {
        let c = CubicalComplex::from_cells(std::iter::empty());
        assert_eq!(c.dimension(), None);
        assert_eq!(c.betti_numbers(), [0, 0, 0]);
        assert_eq!(c.euler_characteristic(), 0);
    }
}
