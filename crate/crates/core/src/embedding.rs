//! Marked torus embeddings and the invariant `Q`.
//!
//! An embedded torus splits space into a compact piece (the voxel solid) and
//! a non-compact piece (approximated by a box around the solid with the solid
//! removed). Each piece kills exactly one nonzero class of `H₁(T; Z/2)`;
//! `Q` records which of the two comes first in the fixed order
//! `e < ee < eee`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::cubical::{
    boundary_surface, CubicalComplex, CubicalError, EdgeCycle, SurfaceComplex, Voxel, VoxelSolid,
};
use crate::mcg::MappingClass;

pub const DEFAULT_BOX_MARGIN: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error("boundary is not a torus: {components} component(s), Euler characteristic {chi}")]
    NotATorus { components: usize, chi: i64 },
    #[error("marking cycles are dependent in H1 of the surface")]
    DependentMarking,
    #[error("box margin {margin} leaves no clearance around the solid; use at least 1")]
    InsufficientBoxMargin { margin: u32 },
    #[error("{region} region: expected exactly one bounding class, found {bounding:?}")]
    KernelDimensionError {
        region: Region,
        bounding: Vec<H1Class>,
    },
    #[error("components {first} and {second} touch or overlap")]
    ComponentsTouch { first: usize, second: usize },
    #[error("a system needs at least one component")]
    EmptySystem,
    #[error("component counts differ: {f} vs {g}")]
    ComponentCountMismatch { f: usize, g: usize },
}

impl EmbeddingError {
    pub fn name(&self) -> &'static str {
        match self {
            EmbeddingError::Cubical(e) => e.name(),
            EmbeddingError::NotATorus { .. } => "NotATorus",
            EmbeddingError::DependentMarking => "DependentMarking",
            EmbeddingError::InsufficientBoxMargin { .. } => "InsufficientBoxMargin",
            EmbeddingError::KernelDimensionError { .. } => "KernelDimensionError",
            EmbeddingError::ComponentsTouch { .. } => "ComponentsTouch",
            EmbeddingError::EmptySystem => "EmptySystem",
            EmbeddingError::ComponentCountMismatch { .. } => "ComponentCountMismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Compact,
    Outer,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Compact => "compact",
            Region::Outer => "outer",
        })
    }
}

/// A nonzero class of `H₁(T; Z/2)` in the basis `([m], [l])`.
///
/// The derived order is the declaration order, `e < ee < eee`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum H1Class {
    /// `[m]`, bits `(1,0)`.
    Meridian,
    /// `[l]`, bits `(0,1)`.
    Longitude,
    /// `[m] + [l]`, bits `(1,1)`.
    Diagonal,
}

impl H1Class {
    pub const ALL: [H1Class; 3] = [H1Class::Meridian, H1Class::Longitude, H1Class::Diagonal];

    pub fn bits(self) -> (bool, bool) {
        match self {
            H1Class::Meridian => (true, false),
            H1Class::Longitude => (false, true),
            H1Class::Diagonal => (true, true),
        }
    }

    pub fn from_bits(a: bool, b: bool) -> Option<H1Class> {
        match (a, b) {
            (true, false) => Some(H1Class::Meridian),
            (false, true) => Some(H1Class::Longitude),
            (true, true) => Some(H1Class::Diagonal),
            (false, false) => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            H1Class::Meridian => "e",
            H1Class::Longitude => "ee",
            H1Class::Diagonal => "eee",
        }
    }

    /// `(a,b)` with 0/1 digits.
    pub fn bit_pair(self) -> String {
        let (a, b) = self.bits();
        format!("({},{})", u8::from(a), u8::from(b))
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A voxel solid bounded by a torus, with two edge loops on the torus
/// standing for the images of the meridian and the longitude.
#[derive(Debug, Clone)]
pub struct MarkedTorusEmbedding {
    solid: VoxelSolid,
    m_cycle: EdgeCycle,
    l_cycle: EdgeCycle,
    box_margin: u32,
    surface: SurfaceComplex,
}

impl PartialEq for MarkedTorusEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.solid == other.solid
            && self.m_cycle == other.m_cycle
            && self.l_cycle == other.l_cycle
            && self.box_margin == other.box_margin
    }
}

impl Eq for MarkedTorusEmbedding {}

impl MarkedTorusEmbedding {
    pub fn new(
        solid: VoxelSolid,
        m_cycle: EdgeCycle,
        l_cycle: EdgeCycle,
    ) -> Result<Self, EmbeddingError> {
        Self::with_margin(solid, m_cycle, l_cycle, DEFAULT_BOX_MARGIN)
    }

    pub fn with_margin(
        solid: VoxelSolid,
        m_cycle: EdgeCycle,
        l_cycle: EdgeCycle,
        box_margin: u32,
    ) -> Result<Self, EmbeddingError> {
        if box_margin == 0 {
            return Err(EmbeddingError::InsufficientBoxMargin { margin: box_margin });
        }
        let surface = boundary_surface(&solid)?;
        if !surface.is_torus() {
            return Err(EmbeddingError::NotATorus {
                components: surface.components(),
                chi: surface.euler_characteristic(),
            });
        }
        if !surface.independent_in_h1(&m_cycle, &l_cycle)? {
            return Err(EmbeddingError::DependentMarking);
        }
        Ok(MarkedTorusEmbedding {
            solid,
            m_cycle,
            l_cycle,
            box_margin,
            surface,
        })
    }

    pub fn solid(&self) -> &VoxelSolid {
        &self.solid
    }

    pub fn m_cycle(&self) -> &EdgeCycle {
        &self.m_cycle
    }

    pub fn l_cycle(&self) -> &EdgeCycle {
        &self.l_cycle
    }

    pub fn box_margin(&self) -> u32 {
        self.box_margin
    }

    pub fn surface(&self) -> &SurfaceComplex {
        &self.surface
    }

    pub fn set_box_margin(&self, box_margin: u32) -> Result<Self, EmbeddingError> {
        if box_margin == 0 {
            return Err(EmbeddingError::InsufficientBoxMargin { margin: box_margin });
        }
        Ok(MarkedTorusEmbedding {
            box_margin,
            ..self.clone()
        })
    }

    /// Same solid, new marking. The new cycles must be independent on the
    /// surface.
    pub fn remarked(&self, m_cycle: EdgeCycle, l_cycle: EdgeCycle) -> Result<Self, EmbeddingError> {
        if !self.surface.independent_in_h1(&m_cycle, &l_cycle)? {
            return Err(EmbeddingError::DependentMarking);
        }
        Ok(MarkedTorusEmbedding {
            m_cycle,
            l_cycle,
            ..self.clone()
        })
    }

    /// An edge loop on the surface in the given class.
    pub fn realize(&self, class: H1Class) -> Result<EdgeCycle, EmbeddingError> {
        Ok(match class {
            H1Class::Meridian => self.m_cycle.clone(),
            H1Class::Longitude => self.l_cycle.clone(),
            H1Class::Diagonal => self.m_cycle.band_sum(&self.l_cycle, &self.surface)?,
        })
    }

    /// The marking precomposed with `M`: the new `m` realizes the first
    /// column of `M` and the new `l` the second, read mod 2 in the old basis.
    pub fn transport_marking(&self, m: &MappingClass) -> Result<Self, EmbeddingError> {
        let [a, b, c, d] = m.entries();
        let class = |x: i64, y: i64| H1Class::from_bits(x.rem_euclid(2) == 1, y.rem_euclid(2) == 1);
        let new_m = class(a, c).expect("unimodular columns are nonzero mod 2");
        let new_l = class(b, d).expect("unimodular columns are nonzero mod 2");
        self.remarked(self.realize(new_m)?, self.realize(new_l)?)
    }

    /// The solid with all its cells.
    pub fn compact_region(&self) -> CubicalComplex {
        CubicalComplex::from_voxels(&self.solid)
    }

    /// Voxels of the bounding box grown by `box_margin`, minus the solid.
    pub fn outer_region(&self) -> CubicalComplex {
        outer_region_of(&self.solid, self.box_margin)
    }

    pub fn region(&self, region: Region) -> CubicalComplex {
        match region {
            Region::Compact => self.compact_region(),
            Region::Outer => self.outer_region(),
        }
    }

    /// The class killed by `region`.
    pub fn kernel_class_in(&self, region: Region) -> Result<H1Class, EmbeddingError> {
        let complex = self.region(region);
        kernel_class_impl(&complex, self, region)
    }
}

/// The complement of `solid` inside its bounding box grown by `margin`.
pub fn outer_region_of(solid: &VoxelSolid, margin: u32) -> CubicalComplex {
    let Some((lo, hi)) = solid.bounding_box() else {
        return CubicalComplex::from_voxels(&[]);
    };
    let r = margin as i64;
    let mut voxels = Vec::new();
    for x in lo[0] - r..=hi[0] + r {
        for y in lo[1] - r..=hi[1] + r {
            for z in lo[2] - r..=hi[2] + r {
                let v = Voxel::new(x, y, z);
                if !solid.contains(&v) {
                    voxels.push(v);
                }
            }
        }
    }
    CubicalComplex::from_voxels(&voxels)
}

/// The unique nonzero class `(a,b)` whose chain `a·m + b·l` is a boundary in
/// `region`.
pub fn kernel_class(
    region: &CubicalComplex,
    e: &MarkedTorusEmbedding,
) -> Result<H1Class, EmbeddingError> {
    let inside = region
        .cells(3)
        .first()
        .map(|c| Voxel::new((c.0[0] - 1) / 2, (c.0[1] - 1) / 2, (c.0[2] - 1) / 2))
        .is_some_and(|v| e.solid.contains(&v));
    let label = if inside {
        Region::Compact
    } else {
        Region::Outer
    };
    kernel_class_impl(region, e, label)
}

fn kernel_class_impl(
    region: &CubicalComplex,
    e: &MarkedTorusEmbedding,
    label: Region,
) -> Result<H1Class, EmbeddingError> {
    let bounding = bounding_classes(region, e)?;
    match bounding[..] {
        [class] => Ok(class),
        _ => Err(EmbeddingError::KernelDimensionError {
            region: label,
            bounding,
        }),
    }
}

/// The nonzero classes `(a,b)` whose chain `a·m + b·l` is a boundary in
/// `region`, in increasing order.
pub fn bounding_classes(
    region: &CubicalComplex,
    e: &MarkedTorusEmbedding,
) -> Result<Vec<H1Class>, EmbeddingError> {
    let m = e.m_cycle.chain_in(region)?;
    let l = e.l_cycle.chain_in(region)?;
    let ml = &m + &l;
    let echelon = region.boundary_matrix(2).echelon();
    Ok([
        (H1Class::Meridian, &m),
        (H1Class::Longitude, &l),
        (H1Class::Diagonal, &ml),
    ]
    .into_iter()
    .filter(|(_, chain)| echelon.contains(chain))
    .map(|(class, _)| class)
    .collect())
}

/// `c`, `n` and `Q = [c > n]` for one torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentQ {
    pub c: H1Class,
    pub n: H1Class,
    pub q: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QResult {
    pub components: Vec<ComponentQ>,
    pub total: bool,
}

pub fn q_invariant(e: &MarkedTorusEmbedding) -> Result<ComponentQ, EmbeddingError> {
    let c = e.kernel_class_in(Region::Compact)?;
    let n = e.kernel_class_in(Region::Outer)?;
    if c == n {
        // both regions killing the same class would mean the surface is not
        // a separating torus
        return Err(EmbeddingError::KernelDimensionError {
            region: Region::Outer,
            bounding: vec![n],
        });
    }
    Ok(ComponentQ { c, n, q: c > n })
}

/// Finitely many disjoint, pairwise non-adjacent marked tori.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemEmbedding {
    components: Vec<MarkedTorusEmbedding>,
}

impl SystemEmbedding {
    pub fn new(components: Vec<MarkedTorusEmbedding>) -> Result<Self, EmbeddingError> {
        if components.is_empty() {
            return Err(EmbeddingError::EmptySystem);
        }
        let mut owner: HashMap<Voxel, usize> = HashMap::new();
        for (i, c) in components.iter().enumerate() {
            for &v in c.solid() {
                owner.insert(v, i);
            }
        }
        for (i, c) in components.iter().enumerate() {
            for &v in c.solid() {
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        for dz in -1..=1 {
                            if let Some(&j) = owner.get(&v.offset(dx, dy, dz)) {
                                if j != i {
                                    return Err(EmbeddingError::ComponentsTouch {
                                        first: i.min(j),
                                        second: i.max(j),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(SystemEmbedding { components })
    }

    pub fn single(e: MarkedTorusEmbedding) -> Self {
        SystemEmbedding {
            components: vec![e],
        }
    }

    pub fn components(&self) -> &[MarkedTorusEmbedding] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn q_system(s: &SystemEmbedding) -> Result<QResult, EmbeddingError> {
    let components = s
        .components
        .iter()
        .map(q_invariant)
        .collect::<Result<Vec<_>, _>>()?;
    let total = components.iter().fold(false, |acc, c| acc ^ c.q);
    Ok(QResult { components, total })
}

/// Parity of quadruple points of a generic regular homotopy from `f` to `g`.
///
/// Only meaningful when `f` and `g` are regularly homotopic; that is the
/// caller's claim and is not checked.
pub fn predict_q(f: &SystemEmbedding, g: &SystemEmbedding) -> Result<bool, EmbeddingError> {
    if f.len() != g.len() {
        return Err(EmbeddingError::ComponentCountMismatch {
            f: f.len(),
            g: g.len(),
        });
    }
    Ok(q_system(f)?.total ^ q_system(g)?.total)
}
