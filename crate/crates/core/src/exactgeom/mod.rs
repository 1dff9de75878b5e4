//! Exact rational geometry: halfspace systems, vertex enumeration,
//! boundedness, facet motion and the affine slab normal form.

pub mod affine;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod shapes;

pub use affine::{affine_normalize, satisfies_slab_conditions, Normalized};
pub use polytope::{
    enumerate_vertices, is_bounded, is_simple, move_facet, FacetMotion, FacetSet, GeomError, HPolytope,
    Halfspace, HalfspaceSystem, Point, VertexData, MAX_FACETS,
};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
