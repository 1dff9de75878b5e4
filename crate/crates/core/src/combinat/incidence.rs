use super::CombinatError;
use crate::exactgeom::{FacetSet, HPolytope};
use std::collections::VecDeque;

/// Vertex–facet incidence of a simple polytope. Row `v` is the tight set of
/// vertex `v` in canonical (lexicographic) vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Incidence {
    pub dim: usize,
    pub n_facets: usize,
    pub rows: Vec<FacetSet>,
}

impl Incidence {
    pub fn n_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn is_set(&self, v: usize, f: usize) -> bool {
        self.rows[v].contains(f)
    }

    pub fn column_weight(&self, f: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(f)).count()
    }

    /// Incidence with vertices permuted by `vperm` (old → new) and facets by
    /// `fperm` (old → new).
    pub fn relabeled(&self, vperm: &[usize], fperm: &[usize]) -> Incidence {
        let mut rows = vec![FacetSet::empty(); self.rows.len()];
        for (v, row) in self.rows.iter().enumerate() {
            rows[vperm[v]] = row.iter().map(|f| fperm[f]).collect();
        }
        Incidence { dim: self.dim, n_facets: self.n_facets, rows }
    }
}

pub fn incidence(p: &HPolytope) -> Result<Incidence, CombinatError> {
    if !p.is_simple() {
        return Err(CombinatError::NotSimple);
    }
    Ok(Incidence { dim: p.dim(), n_facets: p.n_facets(), rows: p.vertices().iter().map(|v| v.tight).collect() })
}

/// Undirected graph on vertex ids `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Skeleton {
    adj: Vec<Vec<usize>>,
}

impl Skeleton {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Skeleton { adj }
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.adj.len()
    }
}

/// Edges join vertices sharing exactly `d − 1` facets; valid for simple
/// polytopes only.
pub fn skeleton(inc: &Incidence, d: usize) -> Skeleton {
    let n = inc.n_vertices();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if inc.rows[u].intersection(inc.rows[v]).len() + 1 == d {
                edges.push((u, v));
            }
        }
    }
    Skeleton::from_edges(n, &edges)
}

/// Incidence and skeleton of a simple polytope.
pub fn polytope_skeleton(p: &HPolytope) -> Result<Skeleton, CombinatError> {
    Ok(skeleton(&incidence(p)?, p.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::shapes;

    #[test]
    fn cube_incidence_and_skeleton() {
        let inc = incidence(&shapes::unit_cube(3)).unwrap();
        assert_eq!((inc.n_vertices(), inc.n_facets), (8, 6));
        assert!(inc.rows.iter().all(|r| r.len() == 3));
        let sk = skeleton(&inc, 3);
        assert_eq!(sk.n_edges(), 12);
        assert!((0..8).all(|v| sk.degree(v) == 3));
        assert!(sk.is_connected());
    }

    #[test]
    fn simplex_incidence_is_square() {
        let inc = incidence(&shapes::standard_simplex(3)).unwrap();
        assert_eq!((inc.n_vertices(), inc.n_facets), (4, 4));
        assert!(inc.rows.iter().all(|r| r.len() == 3));
        assert!((0..4).all(|f| inc.column_weight(f) == 3));
        let sk = skeleton(&inc, 3);
        assert_eq!(sk.n_edges(), 6);
    }

    #[test]
    fn prism_skeleton_has_nine_edges() {
        let sk = polytope_skeleton(&shapes::triangular_prism()).unwrap();
        assert_eq!(sk.n_vertices(), 6);
        assert_eq!(sk.n_edges(), 9);
        assert!((0..6).all(|v| sk.degree(v) == 3));
    }

    #[test]
    fn pyramid_is_refused() {
        assert_eq!(incidence(&shapes::square_pyramid()), Err(CombinatError::NotSimple));
    }
}
