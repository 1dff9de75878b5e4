//! Distances, geodesics and disjoint-geodesic counts on polytope skeletons,
//! plus the Hirsch and non-revisiting checks.

pub mod classify;
pub mod dag;
pub mod flow;
pub mod nonrevisiting;

pub use classify::{classify_edges, classify_edges_in, edge_is_good, EdgeClassification, EdgeLabel};
pub use dag::{geodesic_dag, GeodesicDag};
pub use flow::count_disjoint_geodesics;
pub use nonrevisiting::{check_nonrevisiting, nonrevisiting_path, DEFAULT_STATE_BUDGET};

use crate::combinat::{polytope_skeleton, CombinatError, Skeleton};
use crate::exactgeom::HPolytope;
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {1} is unreachable from vertex {0}")]
    Disconnected(usize, usize),
    #[error("endpoints must be distinct (both are {0})")]
    SameEndpoints(usize),
    #[error("state search exceeded its budget of {0} states")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
}

/// BFS distances from `s`, skipping vertices with `blocked[v]` set.
pub fn bfs_avoiding(g: &Skeleton, s: usize, blocked: &[bool]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n_vertices()];
    if blocked.get(s).copied().unwrap_or(false) {
        return dist;
    }
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() && !blocked.get(v).copied().unwrap_or(false) {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn bfs(g: &Skeleton, s: usize) -> Vec<Option<usize>> {
    bfs_avoiding(g, s, &[])
}

pub fn dist(g: &Skeleton, u: usize, v: usize) -> Result<usize, GraphError> {
    bfs(g, u)[v].ok_or(GraphError::Disconnected(u, v))
}

/// Largest distance over all vertex pairs.
pub fn diameter(g: &Skeleton) -> Result<usize, GraphError> {
    let mut best = 0;
    for s in 0..g.n_vertices() {
        for (t, d) in bfs(g, s).into_iter().enumerate() {
            best = best.max(d.ok_or(GraphError::Disconnected(s, t))?);
        }
    }
    Ok(best)
}

/// Outcome of the Hirsch check: the skeleton diameter against `n − d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HirschCheck {
    pub diameter: usize,
    pub bound: usize,
}

impl HirschCheck {
    pub fn holds(&self) -> bool {
        self.diameter <= self.bound
    }
}

pub fn hirsch_check(p: &HPolytope) -> Result<HirschCheck, GraphError> {
    let g = polytope_skeleton(p)?;
    Ok(HirschCheck { diameter: diameter(&g)?, bound: p.n_facets() - p.dim() })
}

/// `diameter(skeleton(P)) ≤ n − d`.
pub fn check_hirsch(p: &HPolytope) -> Result<bool, GraphError> {
    Ok(hirsch_check(p)?.holds())
}
