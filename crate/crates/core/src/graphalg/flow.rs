//! Maximum number of internally vertex-disjoint geodesics, as a unit
//! capacity max-flow on the geodesic DAG with split internal vertices.

use super::dag::geodesic_dag;
use super::GraphError;
use crate::combinat::Skeleton;
use std::collections::VecDeque;

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Repeated BFS augmentation; each path carries one unit.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut via: Vec<Option<usize>> = vec![None; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && !seen[v] {
                        seen[v] = true;
                        via[v] = Some(e);
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return flow;
            }
            let mut v = t;
            while let Some(e) = via[v] {
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// `m(G : x, y)`: the largest set of `x`–`y` geodesics that pairwise share
/// only `x` and `y`.
pub fn count_disjoint_geodesics(g: &Skeleton, x: usize, y: usize) -> Result<usize, GraphError> {
    let dag = geodesic_dag(g, x, y)?;
    let n = g.n_vertices();
    // Vertex v becomes in-node 2v and out-node 2v+1.
    let mut net = Network::new(2 * n);
    for v in dag.vertices() {
        let c = if v == x || v == y { u32::MAX / 2 } else { 1 };
        net.add(2 * v, 2 * v + 1, c);
    }
    for (u, v) in dag.arcs() {
        net.add(2 * u + 1, 2 * v, 1);
    }
    Ok(net.max_flow(2 * x + 1, 2 * y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::polytope_skeleton;
    use crate::exactgeom::shapes;

    #[test]
    fn cube_antipodal_has_three() {
        let g = polytope_skeleton(&shapes::unit_cube(3)).unwrap();
        assert_eq!(count_disjoint_geodesics(&g, 0, 7), Ok(3));
    }

    #[test]
    fn tesseract_antipodal_has_four() {
        let g = polytope_skeleton(&shapes::unit_cube(4)).unwrap();
        assert_eq!(count_disjoint_geodesics(&g, 0, 15), Ok(4));
    }

    #[test]
    fn adjacent_has_one() {
        let g = polytope_skeleton(&shapes::unit_cube(3)).unwrap();
        assert_eq!(count_disjoint_geodesics(&g, 0, 1), Ok(1));
        let g = Skeleton::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(count_disjoint_geodesics(&g, 0, 2), Ok(1));
    }

    #[test]
    fn shared_cut_vertex_limits_to_one() {
        // Two diamonds glued at vertex 3: every geodesic passes 3.
        let g = Skeleton::from_edges(7, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]);
        assert_eq!(count_disjoint_geodesics(&g, 0, 6), Ok(1));
        assert_eq!(count_disjoint_geodesics(&g, 0, 3), Ok(2));
    }
}
