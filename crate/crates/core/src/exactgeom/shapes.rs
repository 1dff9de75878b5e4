//! Named fixtures: cubes, simplices, prisms and friends.

use super::polytope::{HPolytope, Halfspace};
use super::rational::{int, rat, Rational};

fn unit(d: usize, i: usize, scale: i64) -> Vec<Rational> {
    (0..d).map(|j| if i == j { int(scale) } else { int(0) }).collect()
}

/// `[0,1]^d`. Facet `2i` is `x_i ≥ 0`, facet `2i+1` is `x_i ≤ 1`.
pub fn unit_cube(d: usize) -> HPolytope {
    let mut hs = Vec::with_capacity(2 * d);
    for i in 0..d {
        hs.push(Halfspace::new(unit(d, i, -1), int(0)));
        hs.push(Halfspace::new(unit(d, i, 1), int(1)));
    }
    HPolytope::new(d, hs).expect("unit cube is a valid polytope")
}

/// `{x ≥ 0, Σ x_i ≤ 1}`. Facets `0..d` are the coordinate facets.
pub fn standard_simplex(d: usize) -> HPolytope {
    let mut hs: Vec<Halfspace> = (0..d).map(|i| Halfspace::new(unit(d, i, -1), int(0))).collect();
    hs.push(Halfspace::new(vec![int(1); d], int(1)));
    HPolytope::new(d, hs).expect("standard simplex is a valid polytope")
}

/// Pyramid over the square `[-1,1]^2` with apex `(0,0,1)`; the apex lies
/// on four facets.
pub fn square_pyramid() -> HPolytope {
    let hs = vec![
        Halfspace::new(vec![int(0), int(0), int(-1)], int(0)),
        Halfspace::new(vec![int(1), int(0), int(1)], int(1)),
        Halfspace::new(vec![int(-1), int(0), int(1)], int(1)),
        Halfspace::new(vec![int(0), int(1), int(1)], int(1)),
        Halfspace::new(vec![int(0), int(-1), int(1)], int(1)),
    ];
    HPolytope::new(3, hs).expect("square pyramid is a valid polytope")
}

/// Triangle `{x, y ≥ 0, x + y ≤ 1}` times `[0, 1]`.
pub fn triangular_prism() -> HPolytope {
    let hs = vec![
        Halfspace::new(vec![int(-1), int(0), int(0)], int(0)),
        Halfspace::new(vec![int(0), int(-1), int(0)], int(0)),
        Halfspace::new(vec![int(1), int(1), int(0)], int(1)),
        Halfspace::new(vec![int(0), int(0), int(-1)], int(0)),
        Halfspace::new(vec![int(0), int(0), int(1)], int(1)),
    ];
    HPolytope::new(3, hs).expect("triangular prism is a valid polytope")
}

/// Unit cube whose top facet (index 5) has normal `(1/10, 1/20, 1)` and
/// still passes through `(1,1,1)`. Pushing that facet inward crosses the
/// bottom vertex `(1,1,0)` first and alone.
pub fn tilted_cube() -> HPolytope {
    let mut hs = unit_cube(3).halfspaces().to_vec();
    hs[5] = Halfspace::new(vec![rat(1, 10), rat(1, 20), int(1)], rat(23, 20));
    HPolytope::new(3, hs).expect("tilted cube is a valid polytope")
}

/// Cube `[0,1]^3` with the top facet replaced by a plane through
/// `(0,0,1)`, `(1,0,1/2)`, `(0,1,1)`: a combinatorial cube that is not an
/// affine image of the axis cube.
pub fn skew_cube() -> HPolytope {
    let mut hs = unit_cube(3).halfspaces().to_vec();
    hs[5] = Halfspace::new(vec![rat(1, 2), int(0), int(1)], int(1));
    HPolytope::new(3, hs).expect("skew cube is a valid polytope")
}

/// The simple hexahedron that is not a cube: a triangular prism with the
/// top vertex `(0,0,1)` truncated. Face sizes are 3, 3, 4, 4, 5, 5.
pub fn pentagonal_hexahedron() -> HPolytope {
    let hs = vec![
        Halfspace::new(vec![int(-1), int(0), int(0)], int(0)),
        Halfspace::new(vec![int(0), int(-1), int(0)], int(0)),
        Halfspace::new(vec![int(1), int(1), int(0)], int(1)),
        Halfspace::new(vec![int(0), int(0), int(-1)], int(0)),
        Halfspace::new(vec![int(0), int(0), int(1)], int(1)),
        // cut off the top vertex (0,0,1)
        Halfspace::new(vec![int(-1), int(-1), int(1)], rat(1, 2)),
    ];
    HPolytope::new(3, hs).expect("truncated prism is a valid polytope")
}

/// Prism over the pentagon `(0,0), (2,0), (3,2), (1,3), (−1,2)` with the
/// top tilted to `x/10 − y/10 + z ≤ 4`, so the bottom vertex `(2,0,0)` is
/// the one closest to the top. Facets 0..5 are the sides, 5 the bottom and
/// 6 the top.
pub fn tilted_pentagonal_prism() -> HPolytope {
    let hs = vec![
        Halfspace::new(vec![int(0), int(-2), int(0)], int(0)),
        Halfspace::new(vec![int(2), int(-1), int(0)], int(4)),
        Halfspace::new(vec![int(1), int(2), int(0)], int(7)),
        Halfspace::new(vec![int(-1), int(2), int(0)], int(5)),
        Halfspace::new(vec![int(-2), int(-1), int(0)], int(0)),
        Halfspace::new(vec![int(0), int(0), int(-1)], int(0)),
        Halfspace::new(vec![rat(1, 10), rat(-1, 10), int(1)], int(4)),
    ];
    HPolytope::new(3, hs).expect("tilted prism is a valid polytope")
}
