use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::{Cell, CubicalComplex, CubicalError, EdgeCycle, Point, Voxel, VoxelSolid};
use crate::gf2::{ColumnEchelon, Gf2Matrix, Gf2Vector};

/// The boundary surface of a voxel solid as a pure 2-dimensional complex.
///
/// Each face remembers the solid voxel on one side and the empty voxel on
/// the other.
#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    complex: CubicalComplex,
    sides: Vec<(Voxel, Voxel)>,
    h1: OnceLock<H1Basis>,
}

/// Cycles completing im ∂₂ to a basis of ker ∂₁, with a tracked echelon of
/// `[∂₂ | generators]` for reading off coordinates.
#[derive(Debug, Clone)]
struct H1Basis {
    generators: Vec<Gf2Vector>,
    echelon: ColumnEchelon,
    faces: usize,
}

/// Faces separating the solid from its complement, with all their edges and
/// vertices.
pub fn boundary_surface(solid: &VoxelSolid) -> Result<SurfaceComplex, CubicalError> {
    if solid.is_empty() {
        return Err(CubicalError::EmptySolid);
    }
    solid.check_manifold()?;
    let mut side_of = HashMap::new();
    for &v in solid {
        let cube = Cell::cube(v);
        for n in v.face_neighbors() {
            if !solid.contains(&n) {
                let face = Cell([
                    cube.0[0] + (n.x - v.x),
                    cube.0[1] + (n.y - v.y),
                    cube.0[2] + (n.z - v.z),
                ]);
                side_of.insert(face, (v, n));
            }
        }
    }
    let complex = CubicalComplex::from_cells(side_of.keys().copied());
    let sides = complex.cells(2).iter().map(|f| side_of[f]).collect();

    let d2 = complex.boundary_matrix(2);
    let mut degree = vec![0usize; d2.rows()];
    for (r, _) in d2.entries() {
        degree[r] += 1;
    }
    if let Some((i, &faces)) = degree.iter().enumerate().find(|(_, &d)| d != 2) {
        let (at, _) = complex.cells(1)[i].endpoints().expect("edge cell");
        return Err(CubicalError::NonManifoldSurface { at, faces });
    }

    Ok(SurfaceComplex {
        complex,
        sides,
        h1: OnceLock::new(),
    })
}

impl SurfaceComplex {
    pub fn complex(&self) -> &CubicalComplex {
        &self.complex
    }

    /// `(solid voxel, empty voxel)` on either side of face `i`.
    pub fn face_sides(&self, i: usize) -> (Voxel, Voxel) {
        self.sides[i]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    pub fn components(&self) -> usize {
        self.complex.connected_components()
    }

    /// Connected with χ = 0. Boundary surfaces of solids in R³ are
    /// orientable, so this is exactly genus one.
    pub fn is_torus(&self) -> bool {
        self.components() == 1 && self.euler_characteristic() == 0
    }

    pub fn contains_vertex(&self, p: Point) -> bool {
        self.complex.contains(&Cell::vertex(p))
    }

    /// The cycle as a 1-chain of the surface.
    pub fn chain(&self, z: &EdgeCycle) -> Result<Gf2Vector, CubicalError> {
        z.chain_in(&self.complex)
    }

    fn h1(&self) -> &H1Basis {
        self.h1.get_or_init(|| {
            let d1 = self.complex.boundary_matrix(1);
            let d2 = self.complex.boundary_matrix(2);
            let faces = d2.cols();
            let mut stacked = d2.clone();
            for k in d1.kernel_basis() {
                stacked
                    .push_column(&k)
                    .expect("kernel vectors live in the edge space");
            }
            let generators: Vec<Gf2Vector> = stacked
                .echelon()
                .pivot_columns()
                .iter()
                .filter(|&&j| j >= faces)
                .map(|&j| stacked.column_vector(j))
                .collect();
            let mut basis = d2.clone();
            for g in &generators {
                basis.push_column(g).expect("same edge space");
            }
            H1Basis {
                echelon: basis.echelon_tracked(),
                generators,
                faces,
            }
        })
    }

    /// Representative cycles of a basis of H₁(surface; Z/2).
    pub fn h1_generators(&self) -> &[Gf2Vector] {
        &self.h1().generators
    }

    /// Coordinates of the homology class of `z` in the basis returned by
    /// [`SurfaceComplex::h1_generators`].
    pub fn class_of_cycle(&self, z: &EdgeCycle) -> Result<Gf2Vector, CubicalError> {
        let chain = self.chain(z)?;
        let h1 = self.h1();
        let x = h1
            .echelon
            .solve(&chain)
            .expect("a closed edge walk is a cycle, and cycles lie in im ∂₂ + span(generators)");
        let coords = x
            .support()
            .iter()
            .filter(|&&j| j >= h1.faces)
            .map(|&j| j - h1.faces);
        Ok(Gf2Vector::from_support(h1.generators.len(), coords).expect("generator index"))
    }

    /// Whether `z` is null-homologous on the surface.
    pub fn bounds(&self, z: &EdgeCycle) -> Result<bool, CubicalError> {
        Ok(self.class_of_cycle(z)?.is_zero())
    }

    /// `rank([∂₂ | z1 | z2]) = rank(∂₂) + 2`.
    pub fn independent_in_h1(&self, z1: &EdgeCycle, z2: &EdgeCycle) -> Result<bool, CubicalError> {
        let (c1, c2) = (self.chain(z1)?, self.chain(z2)?);
        let d2 = self.complex.boundary_matrix(2);
        let mut stacked: Gf2Matrix = d2.clone();
        stacked.push_column(&c1).expect("edge space");
        stacked.push_column(&c2).expect("edge space");
        let base = self.complex.boundary_ranks()[1];
        Ok(stacked.rank() == base + 2)
    }

    /// Shortest walk along surface edges from `a` to `b`, both endpoints
    /// included.
    pub fn shortest_path(&self, a: Point, b: Point) -> Result<Vec<Point>, CubicalError> {
        let missing = CubicalError::Disconnected { from: a, to: b };
        let (Some(start), Some(goal)) = (
            self.complex.index_of(&Cell::vertex(a)),
            self.complex.index_of(&Cell::vertex(b)),
        ) else {
            return Err(missing);
        };
        let d1 = self.complex.boundary_matrix(1);
        let mut adjacent = vec![Vec::new(); d1.rows()];
        for j in 0..d1.cols() {
            if let [u, v] = *d1.column(j) {
                adjacent[u].push(v);
                adjacent[v].push(u);
            }
        }
        let mut prev = vec![usize::MAX; d1.rows()];
        prev[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if u == goal {
                break;
            }
            for &v in &adjacent[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[goal] == usize::MAX {
            return Err(missing);
        }
        let mut path = vec![goal];
        let mut u = goal;
        while u != start {
            u = prev[u];
            path.push(u);
        }
        path.reverse();
        let vertices = self.complex.cells(0);
        Ok(path
            .into_iter()
            .map(|i| vertices[i].as_point().expect("vertex cell"))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::{genus_two, ring3, solid};
    use super::*;

    fn square(corner: Point, a: usize, b: usize) -> EdgeCycle {
        let mut p = [corner; 4];
        p[1][a] += 1;
        p[2][a] += 1;
        p[2][b] += 1;
        p[3][b] += 1;
        EdgeCycle::new(p.to_vec()).unwrap()
    }

    /// The hole boundary of `ring3` at height 0.
    fn ring_longitude() -> EdgeCycle {
        EdgeCycle::new(vec![[1, 1, 0], [2, 1, 0], [2, 2, 0], [1, 2, 0]]).unwrap()
    }

    /// Girdle around voxel (1, 0, 0) of `ring3`.
    fn ring_meridian() -> EdgeCycle {
        square([1, 0, 0], 1, 2)
    }

    #[test]
    fn cube_surface_is_a_sphere() {
        let s = boundary_surface(&solid(&[[0, 0, 0]])).unwrap();
        assert_eq!(s.complex().betti_numbers(), [1, 0, 1]);
        assert_eq!(s.euler_characteristic(), 2);
        assert_eq!(s.complex().cell_count(2), 6);
        assert!(!s.is_torus());
    }

    #[test]
    fn ring_surface_is_a_torus() {
        let s = boundary_surface(&ring3()).unwrap();
        assert_eq!(s.complex().betti_numbers(), [1, 2, 1]);
        assert_eq!(s.euler_characteristic(), 0);
        assert_eq!(s.components(), 1);
        assert!(s.is_torus());
        assert_eq!(s.h1_generators().len(), 2);
    }

    #[test]
    fn genus_two_surface() {
        let s = boundary_surface(&genus_two()).unwrap();
        assert_eq!(s.euler_characteristic(), -2);
        assert_eq!(s.complex().betti_numbers(), [1, 4, 1]);
        assert!(!s.is_torus());
    }

    #[test]
    fn disjoint_voxels_give_two_spheres() {
        let s = boundary_surface(&solid(&[[0, 0, 0], [4, 0, 0]])).unwrap();
        assert_eq!(s.components(), 2);
        assert_eq!(s.euler_characteristic(), 4);
        assert!(!s.is_torus());
    }

    #[test]
    fn two_disjoint_rings_are_not_a_torus() {
        let mut v: Vec<[i64; 3]> = ring3().iter().map(|v| v.to_array()).collect();
        v.extend(ring3().iter().map(|v| [v.x + 10, v.y, v.z]));
        let s = boundary_surface(&solid(&v)).unwrap();
        assert_eq!(s.euler_characteristic(), 0);
        assert!(!s.is_torus());
    }

    #[test]
    fn face_sides_separate_solid_from_complement() {
        let r = ring3();
        let s = boundary_surface(&r).unwrap();
        for i in 0..s.complex().cell_count(2) {
            let (inside, outside) = s.face_sides(i);
            assert!(r.contains(&inside));
            assert!(!r.contains(&outside));
        }
    }

    #[test]
    fn face_boundary_is_dependent() {
        let s = boundary_surface(&ring3()).unwrap();
        let bottom = square([0, 0, 0], 0, 1);
        assert!(s.bounds(&bottom).unwrap());
        assert!(!s.independent_in_h1(&bottom, &ring_meridian()).unwrap());
    }

    #[test]
    fn meridian_and_longitude_independent() {
        let s = boundary_surface(&ring3()).unwrap();
        let (m, l) = (ring_meridian(), ring_longitude());
        assert!(s.independent_in_h1(&m, &l).unwrap());
        assert!(!s.independent_in_h1(&m, &m).unwrap());
        let cm = s.class_of_cycle(&m).unwrap();
        let cl = s.class_of_cycle(&l).unwrap();
        assert!(!cm.is_zero() && !cl.is_zero() && cm != cl);
        let sum = m.band_sum(&l, &s).unwrap();
        assert_eq!(s.class_of_cycle(&sum).unwrap(), &cm + &cl);
    }

    #[test]
    fn off_surface_cycle_rejected() {
        let s = boundary_surface(&ring3()).unwrap();
        let far = square([10, 10, 10], 0, 1);
        assert_eq!(
            s.class_of_cycle(&far).unwrap_err().name(),
            "CycleNotOnSurface"
        );
    }

    #[test]
    fn shortest_path_on_cube() {
        let s = boundary_surface(&solid(&[[0, 0, 0]])).unwrap();
        let p = s.shortest_path([0, 0, 0], [1, 1, 1]).unwrap();
        assert_eq!(p.len(), 4);
        assert!(s.shortest_path([0, 0, 0], [5, 5, 5]).is_err());
    }

    /// Betti numbers by brute force: enumerate all chains of each degree,
    /// count cycles and boundaries.
    fn brute_force_betti(c: &CubicalComplex) -> [usize; 3] {
        let n: Vec<usize> = (0..4).map(|d| c.cell_count(d)).collect();
        assert!(n[1] <= 24 && n[2] <= 12 && n[0] <= 64);
        let masks = |k: usize| -> Vec<u64> {
            let m = c.boundary_matrix(k);
            (0..m.cols())
                .map(|j| m.column(j).iter().fold(0u64, |a, &r| a | 1 << r))
                .collect()
        };
        let log2 = |x: usize| x.trailing_zeros() as usize;
        // cycles in degree k and boundaries from degree k+1
        let count = |cols: &[u64], want_zero: bool| -> (usize, std::collections::HashSet<u64>) {
            let mut zeros = 0;
            let mut images = std::collections::HashSet::new();
            for s in 0..(1u64 << cols.len()) {
                let img = cols
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| s >> j & 1 == 1)
                    .fold(0, |a, (_, &c)| a ^ c);
                if want_zero && img == 0 {
                    zeros += 1;
                }
                images.insert(img);
            }
            (zeros, images)
        };
        let (z1, _) = count(&masks(1), true);
        let (z2, b1) = count(&masks(2), true);
        let b2 = if n[3] > 0 {
            count(&masks(3), false).1.len()
        } else {
            1
        };
        let (_, b0) = count(&masks(1), false);
        [
            n[0] - log2(b0.len()),
            log2(z1) - log2(b1.len()),
            log2(z2) - log2(b2),
        ]
    }

    #[test]
    fn betti_agrees_with_enumeration_on_small_complexes() {
        let cases: Vec<CubicalComplex> = vec![
            boundary_surface(&solid(&[[0, 0, 0]]))
                .unwrap()
                .complex()
                .clone(),
            boundary_surface(&solid(&[[0, 0, 0], [1, 0, 0]]))
                .unwrap()
                .complex()
                .clone(),
            CubicalComplex::from_voxels(solid(&[[0, 0, 0]]).iter()),
            CubicalComplex::from_cells([Cell([1, 1, 0]), Cell([5, 1, 0])]),
            CubicalComplex::from_cells(ring_longitude().edge_cells().collect::<Vec<_>>()),
        ];
        for c in &cases {
            assert_eq!(c.betti_numbers(), brute_force_betti(c));
        }
    }
}
