//! Brute-force oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use polydeform::combinat::{polytope_skeleton, Skeleton};
use polydeform::exactgeom::shapes;
use polydeform::moduli::{random_simple_polytope, SamplerConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All shortest x–y paths, by depth-limited search at increasing depth.
pub fn brute_geodesics(g: &Skeleton, x: usize, y: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Skeleton, path: &mut Vec<usize>, y: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if left == 0 {
            if u == y {
                out.push(path.clone());
            }
            return;
        }
        for &v in g.neighbors(u) {
            if !path.contains(&v) {
                path.push(v);
                extend(g, path, y, left - 1, out);
                path.pop();
            }
        }
    }
    for len in 1..g.n_vertices() {
        let mut out = Vec::new();
        extend(g, &mut vec![x], y, len, &mut out);
        if !out.is_empty() {
            return out;
        }
    }
    Vec::new()
}

/// Largest family of paths that pairwise share only their endpoints.
pub fn brute_max_disjoint(paths: &[Vec<usize>]) -> usize {
    fn interior(p: &[usize]) -> &[usize] {
        &p[1..p.len() - 1]
    }
    fn go(paths: &[Vec<usize>], i: usize, used: &mut Vec<usize>, chosen: usize, best: &mut usize) {
        if chosen + (paths.len() - i) <= *best {
            return;
        }
        if i == paths.len() {
            *best = chosen;
            return;
        }
        let inner = interior(&paths[i]);
        // A single-edge path has no interior and is disjoint from all others.
        if inner.iter().all(|v| !used.contains(v)) {
            let mark = used.len();
            used.extend_from_slice(inner);
            go(paths, i + 1, used, chosen + 1, best);
            used.truncate(mark);
        }
        go(paths, i + 1, used, chosen, best);
    }
    let mut best = 0;
    go(paths, 0, &mut Vec::new(), 0, &mut best);
    best
}

/// An edge is good if some geodesic uses it or misses both endpoints.
pub fn brute_edge_good(geodesics: &[Vec<usize>], u: usize, v: usize) -> bool {
    geodesics.iter().any(|p| {
        p.windows(2).any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u)) || (!p.contains(&u) && !p.contains(&v))
    })
}

pub fn connected_random_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Skeleton {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
            edges.push((a, b));
        }
    }
    Skeleton::from_edges(n, &edges)
}

/// Two squares sharing an edge, marks at opposite corners: the shared edge
/// is bad and only two disjoint geodesics exist.
pub fn domino() -> (Skeleton, usize, usize) {
    (Skeleton::from_edges(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (1, 4), (4, 5), (2, 5)]), 0, 5)
}

/// Named marked graphs with at most 12 vertices: polytope skeletons with
/// every vertex pair, hand-built graphs and seeded random graphs.
pub fn graph_corpus() -> Vec<(String, Skeleton, usize, usize)> {
    let mut out = Vec::new();
    let named: Vec<(&str, Skeleton)> = vec![
        ("cube", polytope_skeleton(&shapes::unit_cube(3)).unwrap()),
        ("prism", polytope_skeleton(&shapes::triangular_prism()).unwrap()),
        ("pentagonal-hexahedron", polytope_skeleton(&shapes::pentagonal_hexahedron()).unwrap()),
        ("simplex", polytope_skeleton(&shapes::standard_simplex(3)).unwrap()),
        ("pentagonal-prism", polytope_skeleton(&shapes::tilted_pentagonal_prism()).unwrap()),
    ];
    for (name, g) in named {
        for x in 0..g.n_vertices() {
            for y in x + 1..g.n_vertices() {
                out.push((format!("{name} {x}-{y}"), g.clone(), x, y));
            }
        }
    }
    let (g, x, y) = domino();
    out.push(("domino".into(), g, x, y));
    let hexagon = Skeleton::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>());
    out.push(("hexagon".into(), hexagon, 0, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..40 {
        let n = rng.gen_range(4..=12);
        let extra = rng.gen_range(0..2 * n);
        let g = connected_random_graph(&mut rng, n, extra);
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        out.push((format!("random {i}"), g, x, y));
    }
    for seed in 0..10 {
        let p = random_simple_polytope(3, 7, seed, &SamplerConfig::default()).unwrap();
        let g = polytope_skeleton(&p).unwrap();
        if g.n_vertices() <= 12 {
            let n = g.n_vertices();
            out.push((format!("heptahedron {seed}"), g, 0, n - 1));
        }
    }
    out
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}
