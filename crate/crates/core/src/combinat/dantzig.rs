use super::canon::{canonical_form, Canon, Marks};
use super::incidence::{incidence, polytope_skeleton, Incidence, Skeleton};
use super::CombinatError;
use crate::exactgeom::{affine_normalize, FacetSet, GeomError, HPolytope};

/// A simple `d`-polytope with `2d` facets and two vertices whose tight sets
/// partition the facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DantzigFigure {
    polytope: HPolytope,
    x: usize,
    y: usize,
}

impl DantzigFigure {
    pub fn new(polytope: HPolytope, x: usize, y: usize) -> Result<Self, CombinatError> {
        if !is_dantzig(&polytope, x, y) {
            return Err(CombinatError::NotDantzig);
        }
        Ok(DantzigFigure { polytope, x, y })
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn incidence(&self) -> Incidence {
        incidence(&self.polytope).expect("Dantzig figures are simple")
    }

    pub fn skeleton(&self) -> Skeleton {
        polytope_skeleton(&self.polytope).expect("Dantzig figures are simple")
    }

    /// Canonical form with `{x, y}` marked as an unordered pair.
    pub fn canon(&self) -> Canon {
        canonical_form(&self.incidence(), Marks::Unordered(self.x, self.y))
    }

    /// Canonical form with `(x, y)` marked as an ordered pair.
    pub fn ordered_canon(&self) -> Canon {
        canonical_form(&self.incidence(), Marks::Ordered(self.x, self.y))
    }

    /// The same figure with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> DantzigFigure {
        DantzigFigure { polytope: self.polytope.clone(), x: self.y, y: self.x }
    }

    /// Affine image with `x` at the origin, `y` at `e_d`, inside the slab
    /// between the two hyperplanes `q_d = 0` and `q_d = 1`.
    pub fn affine_normalize(&self) -> Result<DantzigFigure, GeomError> {
        let n = affine_normalize(&self.polytope, self.x, self.y)?;
        Ok(DantzigFigure { polytope: n.polytope, x: n.x, y: n.y })
    }
}

pub fn is_dantzig(p: &HPolytope, x: usize, y: usize) -> bool {
    let d = p.dim();
    let verts = p.vertices();
    if x >= verts.len() || y >= verts.len() || x == y {
        return false;
    }
    if p.n_facets() != 2 * d || !p.is_simple() {
        return false;
    }
    let (tx, ty) = (verts[x].tight, verts[y].tight);
    tx.is_disjoint(ty) && tx.union(ty) == FacetSet::full(p.n_facets())
}

/// All unordered pairs `(x, y)`, `x < y`, with complementary tight sets.
pub fn find_dantzig_pairs(p: &HPolytope) -> Result<Vec<(usize, usize)>, CombinatError> {
    let d = p.dim();
    if p.n_facets() != 2 * d || !p.is_simple() {
        return Err(CombinatError::NotCandidate { n: p.n_facets(), d });
    }
    let verts = p.vertices();
    let mut out = Vec::new();
    for x in 0..verts.len() {
        for y in x + 1..verts.len() {
            if verts[x].tight.is_disjoint(verts[y].tight) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}
