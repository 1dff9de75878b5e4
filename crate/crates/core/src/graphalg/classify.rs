use super::{bfs, bfs_avoiding, GraphError};
use crate::combinat::{DantzigFigure, Skeleton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Good,
    Bad,
}

/// Labels for every edge touching neither `x` nor `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    pub labels: Vec<((usize, usize), EdgeLabel)>,
}

impl EdgeClassification {
    pub fn bad_edges(&self) -> Vec<(usize, usize)> {
        self.labels.iter().filter(|(_, l)| *l == EdgeLabel::Bad).map(|(e, _)| *e).collect()
    }

    pub fn n_bad(&self) -> usize {
        self.labels.iter().filter(|(_, l)| *l == EdgeLabel::Bad).count()
    }

    pub fn n_good(&self) -> usize {
        self.labels.len() - self.n_bad()
    }
}

/// Whether some `x`–`y` geodesic either uses the edge `{u, v}` or touches
/// neither `u` nor `v`. `dx`, `dy` are BFS distances from `x` and `y`.
pub fn edge_is_good(g: &Skeleton, dx: &[Option<usize>], dy: &[Option<usize>], x: usize, y: usize, u: usize, v: usize) -> bool {
    let Some(target) = dx[y] else {
        return false;
    };
    let through = |a: usize, b: usize| matches!((dx[a], dy[b]), (Some(p), Some(q)) if p + 1 + q == target);
    if through(u, v) || through(v, u) {
        return true;
    }
    let mut blocked = vec![false; g.n_vertices()];
    blocked[u] = true;
    blocked[v] = true;
    bfs_avoiding(g, x, &blocked)[y] == Some(target)
}

pub fn classify_edges_in(g: &Skeleton, x: usize, y: usize) -> Result<EdgeClassification, GraphError> {
    if x == y {
        return Err(GraphError::SameEndpoints(x));
    }
    let dx = bfs(g, x);
    let dy = bfs(g, y);
    if dx[y].is_none() {
        return Err(GraphError::Disconnected(x, y));
    }
    let labels = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| u != x && u != y && v != x && v != y)
        .map(|(u, v)| {
            let label = if edge_is_good(g, &dx, &dy, x, y, u, v) { EdgeLabel::Good } else { EdgeLabel::Bad };
            ((u, v), label)
        })
        .collect();
    Ok(EdgeClassification { labels })
}

pub fn classify_edges(fig: &DantzigFigure) -> EdgeClassification {
    classify_edges_in(&fig.skeleton(), fig.x(), fig.y()).expect("Dantzig skeletons are connected")
}
