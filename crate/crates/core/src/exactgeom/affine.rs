//! Affine normal form for a polytope with two marked vertices: `x` goes to
//! the origin, `y` to `e_d`, and the polytope sits in the slab
//! `0 ≤ q_d ≤ 1` touching the two bounding hyperplanes only at `x` and `y`.

use super::linalg;
use super::polytope::{positive_dependence, GeomError, HPolytope, Halfspace, Point};
use super::rational::{dot, Rational};
use num_traits::{Signed, Zero};

/// Result of [`affine_normalize`]: the image polytope (same facet order)
/// and the indices of the images of `x` and `y` in its vertex list.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub polytope: HPolytope,
    pub x: usize,
    pub y: usize,
}

/// Computes the normal form by separating the vertex cones at `x` and `y`.
///
/// The cone at `x` is `{z : a_i · z ≤ 0, i ∈ tight(x)}` and likewise at `y`.
/// A functional `c` that is positive on the first cone and negative on the
/// second exists iff some strictly positive combination of the tight normals
/// at `x` and `y` vanishes; `c` is then the `y` part of that combination.
pub fn affine_normalize(p: &HPolytope, x: usize, y: usize) -> Result<Normalized, GeomError> {
    let d = p.dim();
    let verts = p.vertices();
    if x >= verts.len() || y >= verts.len() || x == y {
        return Err(GeomError::SeparationFailed);
    }
    let tx = verts[x].tight;
    let ty = verts[y].tight;
    let mut normals: Vec<Vec<Rational>> = tx.iter().map(|f| p.halfspaces()[f].normal.clone()).collect();
    let nx = normals.len();
    normals.extend(ty.iter().map(|f| p.halfspaces()[f].normal.clone()));
    let mult = positive_dependence(&normals).ok_or(GeomError::SeparationFailed)?;
    let mut c = vec![Rational::zero(); d];
    for (m, a) in mult[nx..].iter().zip(&normals[nx..]) {
        for (ci, ai) in c.iter_mut().zip(a) {
            *ci += m * ai;
        }
    }

    let px = &verts[x].point.0;
    let py = &verts[y].point.0;
    let level = |q: &[Rational]| dot(&c, q);
    let lx = level(px);
    let ly = level(py);
    for (i, v) in verts.iter().enumerate() {
        let l = level(&v.point.0);
        if (i != x && !(l > lx)) || (i != y && !(l < ly)) {
            return Err(GeomError::SeparationFailed);
        }
    }

    // Linear part M: rows e_k − (u_k / c·u) c for every k ≠ j, then c / c·u,
    // where u = y − x and c_j ≠ 0. M u = e_d and M is invertible.
    let u: Vec<Rational> = py.iter().zip(px).map(|(a, b)| a - b).collect();
    let cu = dot(&c, &u);
    let j = c.iter().position(|v| !v.is_zero()).ok_or(GeomError::SeparationFailed)?;
    let mut m: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for k in (0..d).filter(|&k| k != j) {
        let coef = &u[k] / &cu;
        let row: Vec<Rational> = (0..d)
            .map(|i| {
                let e = if i == k { Rational::from_integer(1.into()) } else { Rational::zero() };
                e - &coef * &c[i]
            })
            .collect();
        m.push(row);
    }
    m.push(c.iter().map(|ci| ci / &cu).collect());
    let m_inv = linalg::invert(&m).ok_or(GeomError::SeparationFailed)?;
    let m_inv_t = linalg::transpose(&m_inv);

    // a·p ≤ b with p = x + M⁻¹ q  ⇔  (M⁻ᵀ a)·q ≤ b − a·x
    let hs: Vec<Halfspace> = p
        .halfspaces()
        .iter()
        .map(|h| Halfspace::new(linalg::mat_vec(&m_inv_t, &h.normal), &h.offset - dot(&h.normal, px)))
        .collect();
    let image = HPolytope::new(d, hs)?;
    let origin = Point(vec![Rational::zero(); d]);
    let mut top = origin.clone();
    top.0[d - 1] = Rational::from_integer(1.into());
    let nx = image.vertex_index(&origin).ok_or(GeomError::SeparationFailed)?;
    let ny = image.vertex_index(&top).ok_or(GeomError::SeparationFailed)?;
    Ok(Normalized { polytope: image, x: nx, y: ny })
}

/// Checks the three slab conditions of the normal form by exact evaluation
/// on every vertex.
pub fn satisfies_slab_conditions(p: &HPolytope, x: usize, y: usize) -> bool {
    let d = p.dim();
    let verts = p.vertices();
    let is_origin = verts[x].point.0.iter().all(Zero::is_zero);
    let is_top = verts[y].point.0.iter().enumerate().all(|(i, v)| {
        if i + 1 == d {
            *v == Rational::from_integer(1.into())
        } else {
            v.is_zero()
        }
    });
    if !is_origin || !is_top {
        return false;
    }
    let one = Rational::from_integer(1.into());
    verts.iter().enumerate().all(|(i, v)| {
        let last = &v.point.0[d - 1];
        if last.is_negative() || last > &one {
            return false;
        }
        (i == x) == last.is_zero() && (i == y) == (last == &one)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::int;
    use crate::exactgeom::shapes;

    fn idx(p: &HPolytope, c: &[i64]) -> usize {
        p.vertex_index(&Point(c.iter().map(|&v| int(v)).collect())).unwrap()
    }

    #[test]
    fn cube_antipodal_normalizes() {
        let cube = shapes::unit_cube(3);
        let n = affine_normalize(&cube, idx(&cube, &[0, 0, 0]), idx(&cube, &[1, 1, 1])).unwrap();
        assert!(satisfies_slab_conditions(&n.polytope, n.x, n.y));
        assert_eq!(n.polytope.vertices().len(), 8);
        assert_eq!(n.polytope.n_facets(), 6);
    }

    #[test]
    fn normalizing_twice_keeps_conditions() {
        let cube = shapes::tilted_cube();
        let n = affine_normalize(&cube, idx(&shapes::unit_cube(3), &[0, 0, 0]), 7).unwrap();
        let again = affine_normalize(&n.polytope, n.x, n.y).unwrap();
        assert!(satisfies_slab_conditions(&again.polytope, again.x, again.y));
    }

    #[test]
    fn adjacent_pair_cannot_be_separated() {
        let cube = shapes::unit_cube(3);
        let r = affine_normalize(&cube, idx(&cube, &[0, 0, 0]), idx(&cube, &[1, 0, 0]));
        assert_eq!(r.unwrap_err(), GeomError::SeparationFailed);
    }
}
