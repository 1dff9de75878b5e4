//! Strongly connected components (iterative Tarjan).

use super::explore::ModuliGraph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcFilter {
    All,
    GoodOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccReport {
    pub components: Vec<Vec<usize>>,
    /// A single component spans every node.
    pub strongly_connected: bool,
}

impl SccReport {
    pub fn from_components(components: Vec<Vec<usize>>) -> Self {
        let strongly_connected = components.len() == 1;
        SccReport { components, strongly_connected }
    }
}

pub fn scc(g: &ModuliGraph, filter: ArcFilter) -> SccReport {
    SccReport::from_components(strongly_connected_components(g.n_nodes(), &g.arc_pairs(filter == ArcFilter::GoodOnly)))
}

/// Components of the digraph on `0..n`. Each component is sorted and the
/// list is ordered by smallest member.
pub fn strongly_connected_components(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in arcs {
        adj[u].push(v);
    }
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut comps = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if *pos < adj[u].len() {
                let v = adj[u][*pos];
                *pos += 1;
                if index[v] == UNSEEN {
                    index[v] = next;
                    low[v] = next;
                    next += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == u {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort();
    comps
}
