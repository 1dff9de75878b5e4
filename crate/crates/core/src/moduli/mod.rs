//! Sampling, type-graph exploration and the verification campaigns.

pub mod attempt;
pub mod campaign;
pub mod certificate;
pub mod explore;
pub mod sample;
pub mod scc;

pub use attempt::{attempt_all, attempt_facet, failure_kind, FdAttempt, FdConfig, FdSuccess};
pub use campaign::{run_campaign, verify_3geodesic, verify_strong_dantzig, CampaignConfig, CampaignKind, CampaignReport};
pub use certificate::Certificate;
pub use explore::{ModuliArc, ModuliGraph, ModuliKind, ModuliNode};
pub use sample::{derive_seed, random_dantzig, random_dantzig_counted, random_simple_polytope, SamplerConfig};
pub use scc::strongly_connected_components;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("sampler exhausted after {attempts} attempts")]
    SamplerExhausted { attempts: usize },
}
