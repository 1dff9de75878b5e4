use super::GraphError;
use crate::combinat::{polytope_skeleton, Skeleton};
use crate::exactgeom::{FacetSet, HPolytope};
use std::collections::{HashMap, VecDeque};

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

/// Searches for an `x`–`y` edge path that never returns to a facet after
/// leaving it. States are `(vertex, facets already left)`; the search is
/// breadth-first, so a returned path is shortest among non-revisiting ones.
pub fn nonrevisiting_path(
    g: &Skeleton,
    tight: &[FacetSet],
    x: usize,
    y: usize,
    budget: usize,
) -> Result<Option<Vec<usize>>, GraphError> {
    type State = (usize, FacetSet);
    let start: State = (x, FacetSet::empty());
    let mut parent: HashMap<State, Option<State>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(state @ (u, left)) = queue.pop_front() {
        if u == y {
            let mut path = vec![u];
            let mut cur = parent[&state];
            while let Some(s) = cur {
                path.push(s.0);
                cur = parent[&s];
            }
            path.reverse();
            return Ok(Some(path));
        }
        for &w in g.neighbors(u) {
            let now_left = left.union(tight[u].difference(tight[w]));
            if !tight[w].is_disjoint(now_left) {
                continue;
            }
            let next = (w, now_left);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return Err(GraphError::BudgetExceeded(budget));
            }
            parent.insert(next, Some(state));
            queue.push_back(next);
        }
    }
    Ok(None)
}

pub fn check_nonrevisiting(p: &HPolytope, x: usize, y: usize, budget: usize) -> Result<bool, GraphError> {
    let g = polytope_skeleton(p)?;
    let tight: Vec<FacetSet> = p.vertices().iter().map(|v| v.tight).collect();
    Ok(nonrevisiting_path(&g, &tight, x, y, budget)?.is_some())
}
