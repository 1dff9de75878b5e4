//! Goodness of a fundamental deformation: for the marked pair (or every
//! pair), some geodesic either runs along the vanishing edge or touches
//! neither of its endpoints.

use super::{DeformError, FdRecord};
use crate::graphalg::{bfs, bfs_avoiding, edge_is_good};

pub fn is_good(fd: &FdRecord, x: usize, y: usize) -> Result<bool, DeformError> {
    let (v, w) = fd.vanishing_edge();
    if x == y || [v, w].contains(&x) || [v, w].contains(&y) {
        return Err(DeformError::PairOnVanishingEdge);
    }
    let g = &fd.source_skeleton;
    Ok(edge_is_good(g, &bfs(g, x), &bfs(g, y), x, y, v, w))
}

/// Per-pair verdict of [`goodness_for_all_pairs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairGoodness {
    pub pairs_checked: usize,
    pub bad_pair: Option<(usize, usize)>,
}

/// First pair `(x, y)`, `x < y`, outside `{v, w}` for which the deformation
/// is not good.
pub fn find_bad_pair(fd: &FdRecord) -> PairGoodness {
    let g = &fd.source_skeleton;
    let n = g.n_vertices();
    let (v, w) = fd.vanishing_edge();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    blocked[w] = true;
    let full: Vec<Vec<Option<usize>>> = (0..n).map(|s| bfs(g, s)).collect();
    let punctured: Vec<Vec<Option<usize>>> = (0..n).map(|s| bfs_avoiding(g, s, &blocked)).collect();
    let mut checked = 0;
    for x in (0..n).filter(|&u| !blocked[u]) {
        for y in (x + 1..n).filter(|&u| !blocked[u]) {
            checked += 1;
            let target = full[x][y];
            let through = |a: usize, b: usize| match (full[x][a], full[b][y], target) {
                (Some(p), Some(q), Some(t)) => p + 1 + q == t,
                _ => false,
            };
            if through(v, w) || through(w, v) || punctured[x][y] == target {
                continue;
            }
            return PairGoodness { pairs_checked: checked, bad_pair: Some((x, y)) };
        }
    }
    PairGoodness { pairs_checked: checked, bad_pair: None }
}

pub fn goodness_for_all_pairs(fd: &FdRecord) -> bool {
    find_bad_pair(fd).bad_pair.is_none()
}
