//! H-representation polytopes and exhaustive vertex enumeration.

use super::linalg;
use super::lp;
use super::rational::{dot, Rational};
use crate::util::combinations;
use num_traits::{One, Signed, Zero};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Facet sets are bitmasks; instances of interest have at most a dozen facets.
pub const MAX_FACETS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension must be at least 1, got {0}")]
    BadDimension(usize),
    #[error("halfspace {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("halfspace {0} has a zero normal")]
    ZeroNormal(usize),
    #[error("at most {MAX_FACETS} halfspaces are supported, got {0}")]
    TooManyFacets(usize),
    #[error("polyhedron is unbounded (nontrivial recession cone)")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("polytope is not full-dimensional (affine dimension {affine_dim} < {dim})")]
    LowDim { dim: usize, affine_dim: usize },
    #[error("halfspace {0} is redundant (does not support a facet)")]
    Redundant(usize),
    #[error("facet index {index} out of range for {n} facets")]
    FacetOutOfRange { index: usize, n: usize },
    #[error("motion step must be positive")]
    NonPositiveStep,
    #[error("no strictly separating hyperplane for the vertex cones at x and y")]
    SeparationFailed,
}

/// A point of `Q^d`. Ordered lexicographically by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", super::rational::format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// Set of facet indices, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetSet(u64);

impl FacetSet {
    pub const fn empty() -> Self {
        FacetSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_FACETS);
        if n == 64 {
            FacetSet(u64::MAX)
        } else {
            FacetSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        FacetSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, f: usize) {
        self.0 |= 1 << f;
    }

    pub fn remove(&mut self, f: usize) {
        self.0 &= !(1 << f);
    }

    pub fn contains(self, f: usize) -> bool {
        f < MAX_FACETS && self.0 & (1 << f) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: Self) -> Self {
        FacetSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        FacetSet(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        FacetSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_FACETS).filter(move |&f| self.contains(f))
    }
}

impl FromIterator<usize> for FacetSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = FacetSet::empty();
        for f in iter {
            s.insert(f);
        }
        s
    }
}

/// Closed halfspace `{x : normal · x ≤ offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// `offset − normal · p`; nonnegative iff `p` lies in the halfspace.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, p)
    }
}

/// A raw system of halfspaces with no validity guarantees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfspaceSystem {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Self {
        HalfspaceSystem { dim, halfspaces }
    }

    fn check_shape(&self) -> Result<(), GeomError> {
        if self.dim == 0 {
            return Err(GeomError::BadDimension(self.dim));
        }
        if self.halfspaces.len() > MAX_FACETS {
            return Err(GeomError::TooManyFacets(self.halfspaces.len()));
        }
        for (i, h) in self.halfspaces.iter().enumerate() {
            if h.normal.len() != self.dim {
                return Err(GeomError::DimensionMismatch { index: i, expected: self.dim, got: h.normal.len() });
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(GeomError::ZeroNormal(i));
            }
        }
        Ok(())
    }

    pub fn tight_set(&self, p: &[Rational]) -> FacetSet {
        self.halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.slack(p).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| !h.slack(p).is_negative())
    }
}

/// Whether the recession cone `{z : a_i · z ≤ 0 ∀i}` is trivial.
///
/// By Stiemke's alternative this holds iff the normals span `R^d` and some
/// strictly positive combination of them vanishes. The positive combination
/// is found as `y = 1 + s` with `s ≥ 0` by exact phase-one simplex.
pub fn is_bounded(sys: &HalfspaceSystem) -> bool {
    let normals: Vec<Vec<Rational>> = sys.halfspaces.iter().map(|h| h.normal.clone()).collect();
    if linalg::rank(&normals) < sys.dim {
        return false;
    }
    let at = linalg::transpose(&normals);
    // Aᵀ(1 + s) = 0  ⇔  Aᵀ s = −Aᵀ 1
    let rhs: Vec<Rational> = at.iter().map(|row| -row.iter().fold(Rational::zero(), |a, x| a + x)).collect();
    lp::nonneg_solution(&at, &rhs).is_some()
}

/// Positive multipliers `y > 0` with `Σ y_i a_i = 0`, if the system is
/// bounded.
pub(crate) fn positive_dependence(normals: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let at = linalg::transpose(normals);
    let rhs: Vec<Rational> = at.iter().map(|row| -row.iter().fold(Rational::zero(), |a, x| a + x)).collect();
    let s = lp::nonneg_solution(&at, &rhs)?;
    Some(s.into_iter().map(|x| x + Rational::one()).collect())
}

/// A vertex with the set of facets tight at it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexData {
    pub point: Point,
    pub tight: FacetSet,
}

/// All vertices of a bounded polyhedron, sorted lexicographically by
/// coordinates. Every `dim`-subset of facets is solved exactly and the
/// feasible solutions kept.
pub fn enumerate_vertices(sys: &HalfspaceSystem) -> Result<Vec<VertexData>, GeomError> {
    sys.check_shape()?;
    if !is_bounded(sys) {
        return Err(GeomError::Unbounded);
    }
    let d = sys.dim;
    // Integer copies of the rows: the same halfspaces scaled by positive
    // denominators, so sign tests carry over.
    let rows: Vec<(Vec<BigInt>, BigInt)> = sys
        .halfspaces
        .iter()
        .map(|h| {
            let mut r = h.normal.clone();
            r.push(h.offset.clone());
            let mut ints = linalg::integer_row(&r);
            let b = ints.pop().unwrap();
            (ints, b)
        })
        .collect();
    let mut found: BTreeMap<Point, FacetSet> = BTreeMap::new();
    for subset in combinations(rows.len(), d) {
        let mat: Vec<Vec<BigInt>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let rhs: Vec<BigInt> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        let Some((x, den)) = linalg::solve_integer(&mat, &rhs) else {
            continue;
        };
        let mut tight = FacetSet::empty();
        let mut inside = true;
        for (f, (a, b)) in rows.iter().enumerate() {
            let lhs: BigInt = a.iter().zip(&x).map(|(p, q)| p * q).sum();
            match lhs.cmp(&(b * &den)) {
                Ordering::Greater => {
                    inside = false;
                    break;
                }
                Ordering::Equal => tight.insert(f),
                Ordering::Less => {}
            }
        }
        if !inside {
            continue;
        }
        let p = Point(x.into_iter().map(|v| Rational::new(v, den.clone())).collect());
        found.entry(p).or_insert(tight);
    }
    if found.is_empty() {
        return Err(GeomError::Empty);
    }
    let verts: Vec<VertexData> = found.into_iter().map(|(point, tight)| VertexData { point, tight }).collect();
    let affine_dim = affine_rank(verts.iter().map(|v| &v.point));
    if affine_dim < d {
        return Err(GeomError::LowDim { dim: d, affine_dim });
    }
    Ok(verts)
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_rank<'a>(points: impl IntoIterator<Item = &'a Point>) -> usize {
    let mut it = points.into_iter();
    let Some(base) = it.next() else {
        return 0;
    };
    let diffs: Vec<Vec<BigInt>> = it
        .map(|p| {
            let diff: Vec<Rational> = p.0.iter().zip(&base.0).map(|(a, b)| a - b).collect();
            linalg::integer_row(&diff)
        })
        .collect();
    linalg::rank_integer(&diffs)
}

/// A validated polytope: bounded, full-dimensional and irredundant. The
/// vertex list is computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    system: HalfspaceSystem,
    vertices: Vec<VertexData>,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, GeomError> {
        Self::from_system(HalfspaceSystem::new(dim, halfspaces))
    }

    pub fn from_system(system: HalfspaceSystem) -> Result<Self, GeomError> {
        let vertices = enumerate_vertices(&system)?;
        let d = system.dim;
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in 0..system.halfspaces.len() {
            let on: Vec<usize> = (0..vertices.len()).filter(|&v| vertices[v].tight.contains(f)).collect();
            if affine_rank(on.iter().map(|&v| &vertices[v].point)) + 1 < d || on.is_empty() {
                return Err(GeomError::Redundant(f));
            }
            // Two halfspaces supporting the same facet: the later one is redundant.
            if seen.insert(on, f).is_some() {
                return Err(GeomError::Redundant(f));
            }
        }
        Ok(HPolytope { system, vertices })
    }

    pub fn dim(&self) -> usize {
        self.system.dim
    }

    pub fn n_facets(&self) -> usize {
        self.system.halfspaces.len()
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.system.halfspaces
    }

    pub fn system(&self) -> &HalfspaceSystem {
        &self.system
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.point.cmp(p)).ok()
    }

    /// Index of the vertex with the given tight set.
    pub fn vertex_with_tight(&self, tight: FacetSet) -> Option<usize> {
        self.vertices.iter().position(|v| v.tight == tight)
    }

    pub fn is_simple(&self) -> bool {
        self.vertices.iter().all(|v| v.tight.len() == self.dim())
    }
}

pub fn is_simple(p: &HPolytope) -> bool {
    p.is_simple()
}

/// Parallel inward motion of one facet: `b(t) = b − t · step`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetMotion {
    pub facet: usize,
    pub step: Rational,
}

impl FacetMotion {
    pub fn new(facet: usize, step: Rational) -> Result<Self, GeomError> {
        if !step.is_positive() {
            return Err(GeomError::NonPositiveStep);
        }
        Ok(FacetMotion { facet, step })
    }
}

/// Substitutes the moved offset for `motion.facet`. The result is not
/// validated; pass it through [`HPolytope::from_system`] to check it.
pub fn move_facet(p: &HPolytope, motion: &FacetMotion, t: &Rational) -> Result<HalfspaceSystem, GeomError> {
    let n = p.n_facets();
    if motion.facet >= n {
        return Err(GeomError::FacetOutOfRange { index: motion.facet, n });
    }
    let mut sys = p.system.clone();
    let h = &mut sys.halfspaces[motion.facet];
    h.offset = &h.offset - t * &motion.step;
    Ok(sys)
}
