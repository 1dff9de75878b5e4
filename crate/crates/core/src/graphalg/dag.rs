use super::{bfs, GraphError};
use crate::combinat::Skeleton;

/// All geodesics from `source` to `sink` as a layered DAG: vertices with
/// `d(s,v) + d(v,t) = d(s,t)` and arcs that advance one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicDag {
    pub source: usize,
    pub sink: usize,
    pub length: usize,
    /// `layer[v] = Some(d(source, v))` for vertices on some geodesic.
    pub layer: Vec<Option<usize>>,
    pub succ: Vec<Vec<usize>>,
}

impl GeodesicDag {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.layer.iter().enumerate().filter(|(_, l)| l.is_some()).map(|(v, _)| v)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices().count()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.succ.iter().enumerate().flat_map(|(u, s)| s.iter().map(move |&v| (u, v))).collect()
    }

    /// Number of source→sink paths, by dynamic programming over layers.
    pub fn count_paths(&self) -> u128 {
        let mut order: Vec<usize> = self.vertices().collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.layer[v]));
        let mut ways = vec![0u128; self.layer.len()];
        ways[self.sink] = 1;
        for v in order {
            if v != self.sink {
                ways[v] = self.succ[v].iter().map(|&w| ways[w]).sum();
            }
        }
        ways[self.source]
    }

    /// Every source→sink path, by depth-first search.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![self.source];
        self.extend(&mut stack, &mut out);
        out
    }

    fn extend(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *stack.last().unwrap();
        if u == self.sink {
            out.push(stack.clone());
            return;
        }
        for &v in &self.succ[u] {
            stack.push(v);
            self.extend(stack, out);
            stack.pop();
        }
    }
}

/// Builds the geodesic DAG from two BFS sweeps.
pub fn geodesic_dag(g: &Skeleton, x: usize, y: usize) -> Result<GeodesicDag, GraphError> {
    if x == y {
        return Err(GraphError::SameEndpoints(x));
    }
    let dx = bfs(g, x);
    let dy = bfs(g, y);
    let length = dx[y].ok_or(GraphError::Disconnected(x, y))?;
    let layer: Vec<Option<usize>> = (0..g.n_vertices())
        .map(|v| match (dx[v], dy[v]) {
            (Some(a), Some(b)) if a + b == length => Some(a),
            _ => None,
        })
        .collect();
    let succ = (0..g.n_vertices())
        .map(|u| match layer[u] {
            Some(lu) => g.neighbors(u).iter().copied().filter(|&v| layer[v] == Some(lu + 1)).collect(),
            None => Vec::new(),
        })
        .collect();
    Ok(GeodesicDag { source: x, sink: y, length, layer, succ })
}
