//! Vertex–facet incidence, skeletons, Dantzig figures and canonical forms
//! of combinatorial types.

pub mod canon;
pub mod dantzig;
pub mod incidence;

pub use canon::{canonical_form, Canon, CombinatorialType, Marks};
pub use dantzig::{find_dantzig_pairs, is_dantzig, DantzigFigure};
pub use incidence::{incidence, polytope_skeleton, skeleton, Incidence, Skeleton};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatError {
    #[error("polytope is not simple")]
    NotSimple,
    #[error("not a Dantzig candidate: {n} facets in dimension {d} (need 2d facets and a simple polytope)")]
    NotCandidate { n: usize, d: usize },
    #[error("marked vertices do not form a Dantzig figure")]
    NotDantzig,
}
