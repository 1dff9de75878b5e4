//! The fundamental deformation: push one facet hyperplane inward past
//! exactly one vertex, contracting a single edge `vw` and creating a new
//! `(d−2)`-simplex on the moved facet.

pub mod good;
pub mod path;

pub use good::{find_bad_pair, goodness_for_all_pairs, is_good, PairGoodness};
pub use path::{deform_path, EdgePath};

use crate::combinat::{polytope_skeleton, CombinatError, DantzigFigure, Skeleton};
use crate::exactgeom::{
    linalg, move_facet, FacetMotion, FacetSet, GeomError, HPolytope, Halfspace, Rational, VertexData,
};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("fundamental deformations need dimension at least 3, got {0}")]
    DimensionTooLow(usize),
    #[error("facet index {index} out of range for {n} facets")]
    FacetOutOfRange { index: usize, n: usize },
    #[error("step must be a positive rational")]
    NonPositiveStep,
    #[error("source polytope is not simple")]
    NotSimple,
    #[error("no vertex is crossed by moving facet {0} inward")]
    NoCrossing(usize),
    #[error("non-generic deformation: {0}")]
    NonGeneric(NonGeneric),
    #[error("degenerate result: {0}")]
    Degenerate(String),
    #[error("vanishing edge touches protected vertex {0}")]
    ProtectedVertex(usize),
    #[error("result is not a Dantzig figure for the carried marks")]
    NotDantzigAfter,
    #[error("new ridge is not a (d-2)-simplex: {0}")]
    ShapeMismatch(String),
    #[error("path passes through exactly one endpoint of the vanishing edge")]
    Undeformable,
    #[error("path starts or ends on the vanishing edge")]
    EndpointLost,
    #[error("not an edge path of the source skeleton")]
    InvalidPath,
    #[error("vertex pair touches the vanishing edge")]
    PairOnVanishingEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonGeneric {
    /// The first crossing parameter is attained by this many vertices.
    SimultaneousCrossing(usize),
    /// The crossed vertex collapses with this many neighbours on the moving
    /// facet.
    CompanionNotUnique(usize),
}

impl std::fmt::Display for NonGeneric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonGeneric::SimultaneousCrossing(k) => write!(f, "{k} vertices are crossed at the same parameter"),
            NonGeneric::CompanionNotUnique(k) => write!(f, "{k} neighbours collapse onto the crossed vertex"),
        }
    }
}

/// One fundamental deformation of `source` by moving `facet` inward.
///
/// `v` and `w` index `source.vertices()`; `result` is the polytope at
/// parameter `t1`, strictly between the critical value `t0` and the next
/// crossing.
#[derive(Debug, Clone)]
pub struct FdRecord {
    pub source: HPolytope,
    pub facet: usize,
    pub step: Rational,
    pub t0: Rational,
    pub t1: Rational,
    pub v: usize,
    pub w: usize,
    pub result: HPolytope,
    pub source_skeleton: Skeleton,
    pub result_skeleton: Skeleton,
}

impl FdRecord {
    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn v_data(&self) -> &VertexData {
        &self.source.vertices()[self.v]
    }

    pub fn w_data(&self) -> &VertexData {
        &self.source.vertices()[self.w]
    }

    pub fn vanishing_edge(&self) -> (usize, usize) {
        (self.v, self.w)
    }

    /// Index in `result` of a persisting source vertex (same tight set).
    /// `None` for `v` and `w`.
    pub fn persisted(&self, source_vertex: usize) -> Option<usize> {
        if source_vertex == self.v || source_vertex == self.w {
            return None;
        }
        self.result.vertex_with_tight(self.source.vertices()[source_vertex].tight)
    }

    /// The facet in `tight(v) ∖ tight(w)`, which meets the moved facet in
    /// the new ridge.
    pub fn second_facet(&self) -> Option<usize> {
        let diff = self.v_data().tight.difference(self.w_data().tight);
        (diff.len() == 1).then(|| diff.iter().next().unwrap())
    }
}

/// A fundamental deformation of a Dantzig figure together with the result
/// figure carrying the same marks.
#[derive(Debug, Clone)]
pub struct DantzigFd {
    pub record: FdRecord,
    pub figure: DantzigFigure,
}

fn position_at(p: &HPolytope, tight: FacetSet, facet: usize, offset: &Rational) -> Option<Vec<Rational>> {
    let mut mat = Vec::new();
    let mut rhs = Vec::new();
    for f in tight.iter() {
        let h = &p.halfspaces()[f];
        mat.push(h.normal.clone());
        rhs.push(if f == facet { offset.clone() } else { h.offset.clone() });
    }
    linalg::solve(&mat, &rhs)
}

pub fn fundamental_deformation(p: &HPolytope, facet: usize, step: &Rational) -> Result<FdRecord, DeformError> {
    let d = p.dim();
    if d < 3 {
        return Err(DeformError::DimensionTooLow(d));
    }
    if facet >= p.n_facets() {
        return Err(DeformError::FacetOutOfRange { index: facet, n: p.n_facets() });
    }
    if !step.is_positive() {
        return Err(DeformError::NonPositiveStep);
    }
    if !p.is_simple() {
        return Err(DeformError::NotSimple);
    }
    let h = &p.halfspaces()[facet];
    let mut crossings: Vec<(Rational, usize)> = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, u)| !u.tight.contains(facet))
        .map(|(i, u)| (h.slack(&u.point.0) / step, i))
        .collect();
    crossings.sort();
    let Some((t0, v)) = crossings.first().cloned() else {
        return Err(DeformError::NoCrossing(facet));
    };
    let ties = crossings.iter().take_while(|(t, _)| *t == t0).count();
    if ties > 1 {
        return Err(DeformError::NonGeneric(NonGeneric::SimultaneousCrossing(ties)));
    }
    let t1 = match crossings.get(1) {
        Some((t, _)) => (&t0 + t) / Rational::from_integer(2.into()),
        None => &t0 + Rational::one(),
    };

    let motion = FacetMotion { facet, step: step.clone() };
    let moved = move_facet(p, &motion, &t1).map_err(|e| DeformError::Degenerate(e.to_string()))?;
    let result = HPolytope::from_system(moved).map_err(|e| DeformError::Degenerate(e.to_string()))?;
    if !result.is_simple() {
        return Err(DeformError::Degenerate("result is not simple".into()));
    }

    let source_skeleton = polytope_skeleton(p).map_err(|_| DeformError::NotSimple)?;
    let offset_t0 = &h.offset - &t0 * step;
    let v_point = &p.vertices()[v].point.0;
    let companions: Vec<usize> = source_skeleton
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| p.vertices()[u].tight.contains(facet))
        .filter(|&u| position_at(p, p.vertices()[u].tight, facet, &offset_t0).as_ref() == Some(v_point))
        .collect();
    if companions.len() != 1 {
        return Err(DeformError::NonGeneric(NonGeneric::CompanionNotUnique(companions.len())));
    }
    let result_skeleton = polytope_skeleton(&result).map_err(|_| DeformError::Degenerate("result is not simple".into()))?;
    Ok(FdRecord {
        source: p.clone(),
        facet,
        step: step.clone(),
        t0,
        t1,
        v,
        w: companions[0],
        result,
        source_skeleton,
        result_skeleton,
    })
}

/// Fundamental deformation of a Dantzig figure: the vanishing edge must
/// avoid both marked vertices, which then persist in the result.
pub fn fd_of_dantzig(fig: &DantzigFigure, facet: usize, step: &Rational) -> Result<DantzigFd, DeformError> {
    let record = fundamental_deformation(fig.polytope(), facet, step)?;
    for m in [fig.x(), fig.y()] {
        if m == record.v || m == record.w {
            return Err(DeformError::ProtectedVertex(m));
        }
    }
    let x = record.persisted(fig.x()).ok_or(DeformError::NotDantzigAfter)?;
    let y = record.persisted(fig.y()).ok_or(DeformError::NotDantzigAfter)?;
    let figure = DantzigFigure::new(record.result.clone(), x, y).map_err(|e| match e {
        CombinatError::NotDantzig => DeformError::NotDantzigAfter,
        other => DeformError::Degenerate(other.to_string()),
    })?;
    Ok(DantzigFd { record, figure })
}

/// Vertices of the result on both the moved facet and the second facet,
/// checked to form a `(d−2)`-simplex: `d − 1` pairwise adjacent vertices.
pub fn new_ridge_simplex(fd: &FdRecord) -> Result<Vec<usize>, DeformError> {
    let d = fd.dim();
    let j = fd
        .second_facet()
        .ok_or_else(|| DeformError::ShapeMismatch("v and w do not differ in exactly one facet".into()))?;
    if j == fd.facet {
        return Err(DeformError::ShapeMismatch("second facet equals the moving facet".into()));
    }
    let ridge: Vec<usize> = fd
        .result
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, u)| u.tight.contains(fd.facet) && u.tight.contains(j))
        .map(|(i, _)| i)
        .collect();
    if ridge.len() != d - 1 {
        return Err(DeformError::ShapeMismatch(format!("{} ridge vertices, expected {}", ridge.len(), d - 1)));
    }
    for (k, &a) in ridge.iter().enumerate() {
        for &b in &ridge[k + 1..] {
            if !fd.result_skeleton.has_edge(a, b) {
                return Err(DeformError::ShapeMismatch(format!("ridge vertices {a} and {b} are not adjacent")));
            }
        }
    }
    Ok(ridge)
}

/// Tilts the normal of `facet` by `delta`, pivoting about the centroid of
/// the facet's vertices so the hyperplane stays anchored to the facet. The
/// result is revalidated; callers compare combinatorial types if they need
/// the tilt to be type-preserving.
pub fn tilt_facet(p: &HPolytope, facet: usize, delta: &[Rational]) -> Result<HPolytope, GeomError> {
    let mut hs = p.halfspaces().to_vec();
    hs[facet] = tilted_halfspace(p, facet, delta)?;
    HPolytope::new(p.dim(), hs)
}

/// The halfspace [`tilt_facet`] puts in place of `facet`.
pub fn tilted_halfspace(p: &HPolytope, facet: usize, delta: &[Rational]) -> Result<Halfspace, GeomError> {
    let d = p.dim();
    if facet >= p.n_facets() {
        return Err(GeomError::FacetOutOfRange { index: facet, n: p.n_facets() });
    }
    if delta.len() != d {
        return Err(GeomError::DimensionMismatch { index: facet, expected: d, got: delta.len() });
    }
    let on: Vec<&VertexData> = p.vertices().iter().filter(|v| v.tight.contains(facet)).collect();
    let count = Rational::from_integer((on.len() as i64).into());
    let centroid: Vec<Rational> = (0..d)
        .map(|k| on.iter().fold(Rational::zero(), |acc, v| acc + &v.point.0[k]) / &count)
        .collect();
    let normal: Vec<Rational> = p.halfspaces()[facet].normal.iter().zip(delta).map(|(a, b)| a + b).collect();
    let offset = crate::exactgeom::rational::dot(&normal, &centroid);
    Ok(Halfspace::new(normal, offset))
}

/// Vertices off `facet` that a parallel inward motion of `h` reaches first.
pub fn first_crossings(p: &HPolytope, facet: usize, h: &Halfspace) -> Vec<usize> {
    let mut best: Option<Rational> = None;
    let mut out = Vec::new();
    for (i, u) in p.vertices().iter().enumerate() {
        if u.tight.contains(facet) {
            continue;
        }
        let s = h.slack(&u.point.0);
        match &best {
            Some(b) if &s > b => {}
            Some(b) if &s == b => out.push(i),
            _ => {
                best = Some(s);
                out = vec![i];
            }
        }
    }
    out
}

/// Fixed tilt directions tried, in order, when a facet motion is
/// non-generic. Entry `r` has coordinates `(−1)^{k+r} · (k + 1 + r) /
/// (97 · 2^r · (k + 2))` for coordinate `k`: small, pairwise independent,
/// and shrinking geometrically so later retries stay close to the input.
pub fn tilt_palette(d: usize, retries: usize) -> Vec<Vec<Rational>> {
    (0..retries)
        .map(|r| {
            (0..d)
                .map(|k| {
                    let sign: i64 = if (k + r) % 2 == 0 { 1 } else { -1 };
                    let num = sign * (k + 1 + r) as i64;
                    let den = 97 * (1i64 << r.min(40)) * (k as i64 + 2);
                    Rational::new(num.into(), den.into())
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{find_dantzig_pairs, incidence};
    use crate::exactgeom::{int, shapes, Point};

    #[test]
    fn axis_cube_is_non_generic() {
        let cube = shapes::unit_cube(3);
        for f in 0..6 {
            assert_eq!(
                fundamental_deformation(&cube, f, &int(1)).unwrap_err(),
                DeformError::NonGeneric(NonGeneric::SimultaneousCrossing(4))
            );
        }
    }

    #[test]
    fn tilted_cube_top_facet() {
        let p = shapes::tilted_cube();
        let fd = fundamental_deformation(&p, 5, &int(1)).unwrap();
        assert_eq!(fd.v_data().point, Point(vec![int(1), int(1), int(0)]));
        assert_eq!(fd.w_data().point, Point(vec![int(1), int(1), int(1)]));
        assert_eq!(fd.t0, int(1));
        assert_eq!(fd.result.n_facets(), 6);
        assert_eq!(fd.result.vertices().len(), 8);
        assert!(fd.result.is_simple());
        // Second crossing is (1,0,0) at 21/20, so t1 = 41/40.
        assert_eq!(fd.t1, crate::exactgeom::rat(41, 40));
    }

    #[test]
    fn simplex_collapses() {
        let s = shapes::standard_simplex(3);
        for f in 0..4 {
            assert!(matches!(fundamental_deformation(&s, f, &int(1)), Err(DeformError::Degenerate(_))));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = shapes::tilted_cube();
        assert_eq!(fundamental_deformation(&p, 6, &int(1)).unwrap_err(), DeformError::FacetOutOfRange { index: 6, n: 6 });
        assert_eq!(fundamental_deformation(&p, 5, &int(0)).unwrap_err(), DeformError::NonPositiveStep);
        assert_eq!(fundamental_deformation(&shapes::square_pyramid(), 0, &int(1)).unwrap_err(), DeformError::NotSimple);
        let square = HPolytope::new(
            2,
            vec![
                Halfspace::new(vec![int(-1), int(0)], int(0)),
                Halfspace::new(vec![int(1), int(0)], int(1)),
                Halfspace::new(vec![int(0), int(-1)], int(0)),
                Halfspace::new(vec![int(0), int(1)], int(1)),
            ],
        )
        .unwrap();
        assert_eq!(fundamental_deformation(&square, 0, &int(1)).unwrap_err(), DeformError::DimensionTooLow(2));
        let fig = DantzigFigure::new(square, 0, 3).unwrap();
        assert_eq!(fd_of_dantzig(&fig, 0, &int(1)).unwrap_err(), DeformError::DimensionTooLow(2));
    }

    #[test]
    fn step_only_reparametrizes() {
        let p = shapes::tilted_cube();
        let a = fundamental_deformation(&p, 5, &int(1)).unwrap();
        let b = fundamental_deformation(&p, 5, &int(3)).unwrap();
        assert_eq!(a.result, b.result);
        assert_eq!(a.t0, &b.t0 * int(3));
    }

    #[test]
    fn dantzig_fd_on_tilted_cube() {
        let p = shapes::tilted_cube();
        // v = (1,1,0) and w = (1,1,1); the diagonal (0,0,0)–(1,1,1) is protected.
        let pairs = find_dantzig_pairs(&p).unwrap();
        let origin = p.vertex_index(&Point(vec![int(0); 3])).unwrap();
        let top = p.vertex_index(&Point(vec![int(1); 3])).unwrap();
        assert!(pairs.contains(&(origin.min(top), origin.max(top))));
        let fig = DantzigFigure::new(p.clone(), origin, top).unwrap();
        assert_eq!(fd_of_dantzig(&fig, 5, &int(1)).unwrap_err(), DeformError::ProtectedVertex(top));

        // (0,1,0)–(1,0,1) avoids v and w.
        let a = p.vertex_index(&Point(vec![int(0), int(1), int(0)])).unwrap();
        let b = p.vertices().iter().position(|u| u.point.0[0] == int(1) && u.point.0[1] == int(0) && u.point.0[2] > int(0)).unwrap();
        let fig = DantzigFigure::new(p, a, b).unwrap();
        let dfd = fd_of_dantzig(&fig, 5, &int(1)).unwrap();
        assert_eq!(dfd.figure.polytope().n_facets(), 6);
        assert!(crate::combinat::is_dantzig(dfd.figure.polytope(), dfd.figure.x(), dfd.figure.y()));
        // Tight sets of the marks are unchanged.
        assert_eq!(dfd.figure.polytope().vertices()[dfd.figure.x()].tight, fig.polytope().vertices()[a].tight);
    }

    #[test]
    fn ridge_of_tilted_cube_is_an_edge() {
        let fd = fundamental_deformation(&shapes::tilted_cube(), 5, &int(1)).unwrap();
        let ridge = new_ridge_simplex(&fd).unwrap();
        assert_eq!(ridge.len(), 2);
        assert!(fd.result_skeleton.has_edge(ridge[0], ridge[1]));
        // The new vertices are exactly the ridge vertices.
        let before: Vec<FacetSet> = incidence(&fd.source).unwrap().rows;
        let fresh: Vec<usize> = (0..fd.result.vertices().len())
            .filter(|&i| !before.contains(&fd.result.vertices()[i].tight))
            .collect();
        assert_eq!(fresh, ridge);
    }

    #[test]
    fn forged_record_is_a_shape_mismatch() {
        let mut fd = fundamental_deformation(&shapes::tilted_cube(), 5, &int(1)).unwrap();
        // Pretend the companion is the vertex opposite to v on the top facet.
        fd.w = fd.source.vertex_index(&Point(vec![int(0), int(0), crate::exactgeom::rat(23, 20)])).unwrap();
        assert!(matches!(new_ridge_simplex(&fd), Err(DeformError::ShapeMismatch(_))));
    }

    #[test]
    fn tilt_keeps_cube_type_and_breaks_ties() {
        let cube = shapes::unit_cube(3);
        let canon = crate::combinat::canonical_form(&incidence(&cube).unwrap(), crate::combinat::Marks::None);
        let delta = &tilt_palette(3, 1)[0];
        let tilted = tilt_facet(&cube, 5, delta).unwrap();
        assert_eq!(crate::combinat::canonical_form(&incidence(&tilted).unwrap(), crate::combinat::Marks::None), canon);
        assert!(fundamental_deformation(&tilted, 5, &int(1)).is_ok());
    }
}
