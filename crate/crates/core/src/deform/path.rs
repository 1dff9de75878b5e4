//! Transporting an edge path across a fundamental deformation.

use super::{new_ridge_simplex, DeformError, FdRecord};
use crate::combinat::Skeleton;

/// Vertex sequence of an edge-following path; its length is the number of
/// steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePath(pub Vec<usize>);

impl EdgePath {
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_valid_in(&self, g: &Skeleton) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&v| v < g.n_vertices())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Rewrites a path that visits both `v` and `w` so that it visits each once,
/// consecutively, by cutting out everything between the first and last
/// visit to `{v, w}`. This never lengthens the path.
fn normalize(path: &[usize], v: usize, w: usize) -> Result<Vec<usize>, DeformError> {
    let hits: Vec<usize> = (0..path.len()).filter(|&k| path[k] == v || path[k] == w).collect();
    let (a, b) = (hits[0], *hits.last().unwrap());
    if path[a] == path[b] {
        return Err(DeformError::Undeformable);
    }
    let mut out = path[..=a].to_vec();
    out.extend_from_slice(&path[b..]);
    Ok(out)
}

/// Maps an edge path of the source skeleton to an edge path of the result
/// skeleton of no greater length with corresponding endpoints.
///
/// Paths avoiding `v` and `w` are carried over vertex by vertex. A step
/// `u → v → w → z` (or through `w → v`) becomes `u → s1 → s2 → z` with
/// `s1`, `s2` on the new ridge simplex, collapsed to one vertex when they
/// coincide.
pub fn deform_path(path: &EdgePath, fd: &FdRecord) -> Result<EdgePath, DeformError> {
    if !path.is_valid_in(&fd.source_skeleton) {
        return Err(DeformError::InvalidPath);
    }
    let (v, w) = fd.vanishing_edge();
    let p = &path.0;
    if [v, w].contains(&p[0]) || [v, w].contains(p.last().unwrap()) {
        return Err(DeformError::EndpointLost);
    }
    let has_v = p.contains(&v);
    let has_w = p.contains(&w);
    let map = |u: usize| fd.persisted(u).ok_or_else(|| DeformError::ShapeMismatch(format!("vertex {u} did not persist")));
    if !has_v && !has_w {
        return p.iter().map(|&u| map(u)).collect::<Result<Vec<_>, _>>().map(EdgePath);
    }
    if has_v != has_w {
        return Err(DeformError::Undeformable);
    }

    let p = normalize(p, v, w)?;
    let a = p.iter().position(|&u| u == v || u == w).unwrap();
    let (before, after) = (p[a - 1], p[a + 2]);
    let ridge = new_ridge_simplex(fd)?;
    let g = &fd.result_skeleton;
    let (u_new, z_new) = (map(before)?, map(after)?);
    let s1 = ridge.iter().copied().find(|&s| g.has_edge(u_new, s));
    let s2 = ridge.iter().copied().find(|&s| g.has_edge(z_new, s));
    let (Some(s1), Some(s2)) = (s1, s2) else {
        return Err(DeformError::ShapeMismatch("no ridge vertex adjacent to the path".into()));
    };

    let mut out = Vec::with_capacity(p.len());
    for &u in &p[..a] {
        out.push(map(u)?);
    }
    out.push(s1);
    if s2 != s1 {
        out.push(s2);
    }
    for &u in &p[a + 2..] {
        out.push(map(u)?);
    }
    Ok(EdgePath(out))
}
