//! Exact tools for studying fundamental deformations of simple polytopes
//! and Dantzig figures: vertex enumeration, skeleton combinatorics,
//! disjoint geodesics, the deformation operator itself and moduli-graph
//! exploration.

pub mod combinat;
pub mod deform;
pub mod document;
pub mod exactgeom;
pub mod graphalg;
pub mod moduli;
mod util;
