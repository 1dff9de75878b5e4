//! Canonical labeling of marked vertex–facet incidence structures.
//!
//! The incidence is viewed as a bipartite graph on vertex nodes and facet
//! nodes. Colors are refined to an equitable partition, then the search
//! tree individualizes each member of the first non-singleton cell in
//! turn. Every leaf yields a certificate; the smallest one is the canonical
//! form. All choices depend only on colors, so the result is invariant
//! under relabeling.

use super::incidence::Incidence;
use std::fmt;

/// Which vertices, if any, carry a distinguished mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marks {
    None,
    /// `(x, y)` with `x` and `y` distinguishable from each other.
    Ordered(usize, usize),
    /// `{x, y}` as a set: both get the same color.
    Unordered(usize, usize),
}

impl Marks {
    fn tag(self) -> u8 {
        match self {
            Marks::None => 0,
            Marks::Ordered(..) => 1,
            Marks::Unordered(..) => 2,
        }
    }
}

/// Canonical byte string of a combinatorial type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Canon(pub Vec<u8>);

impl Canon {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Canon> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(Canon)
    }

    /// Short stable identifier for tables (FNV-1a of the bytes).
    pub fn short_id(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in &self.0 {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{:08x}", h >> 32)
    }
}

impl fmt::Display for Canon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// An incidence structure together with its marks and canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    pub incidence: Incidence,
    pub marks: Marks,
    pub canon: Canon,
}

impl CombinatorialType {
    pub fn new(incidence: Incidence, marks: Marks) -> Self {
        let canon = canonical_form(&incidence, marks);
        CombinatorialType { incidence, marks, canon }
    }
}

struct Bipartite {
    nv: usize,
    adj: Vec<Vec<usize>>,
}

impl Bipartite {
    fn new(inc: &Incidence) -> Self {
        let nv = inc.n_vertices();
        let mut adj = vec![Vec::new(); nv + inc.n_facets];
        for (v, row) in inc.rows.iter().enumerate() {
            for f in row.iter() {
                adj[v].push(nv + f);
                adj[nv + f].push(v);
            }
        }
        Bipartite { nv, adj }
    }

    /// Refines `colors` (dense ranks `0..k`) to the coarsest equitable
    /// refinement. New colors are ranks of `(old color, sorted neighbor
    /// colors)`, so the old order between cells is kept.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut n_cells = count_cells(colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
                .map(|u| {
                    let mut nb: Vec<usize> = self.adj[u].iter().map(|&w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[u], nb)
                })
                .collect();
            let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let new: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
            let k = distinct.len();
            *colors = new;
            if k == n_cells {
                return;
            }
            n_cells = k;
        }
    }

    fn certificate(&self, colors: &[usize], n_facets: usize, marks: Marks) -> Vec<u8> {
        let nv = self.nv;
        let mut rows = vec![0u64; nv];
        for v in 0..nv {
            let mut bits = 0u64;
            for &f in &self.adj[v] {
                bits |= 1 << (colors[f] - nv);
            }
            rows[colors[v]] = bits;
        }
        let mut out = Vec::with_capacity(5 + 8 * nv);
        out.extend_from_slice(&(nv as u16).to_be_bytes());
        out.extend_from_slice(&(n_facets as u16).to_be_bytes());
        out.push(marks.tag());
        for r in rows {
            out.extend_from_slice(&r.to_be_bytes());
        }
        out
    }
}

fn count_cells(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Canonical byte string of `inc` under `marks`. Equal strings iff the two
/// marked incidence structures are isomorphic.
pub fn canonical_form(inc: &Incidence, marks: Marks) -> Canon {
    let g = Bipartite::new(inc);
    let nv = inc.n_vertices();
    // Initial cells: unmarked vertices < x < y < facets.
    let mut colors: Vec<usize> = (0..nv + inc.n_facets).map(|u| if u < nv { 0 } else { 3 }).collect();
    match marks {
        Marks::None => {}
        Marks::Ordered(x, y) => {
            colors[x] = 1;
            colors[y] = 2;
        }
        Marks::Unordered(x, y) => {
            colors[x] = 1;
            colors[y] = 1;
        }
    }
    compact(&mut colors);
    g.refine(&mut colors);
    let mut best: Option<Vec<u8>> = None;
    search(&g, colors, inc.n_facets, marks, &mut best);
    Canon(best.expect("search visits at least one leaf"))
}

fn compact(colors: &mut [usize]) {
    let mut used: Vec<usize> = colors.to_vec();
    used.sort_unstable();
    used.dedup();
    for c in colors.iter_mut() {
        *c = used.binary_search(c).unwrap();
    }
}

fn search(g: &Bipartite, colors: Vec<usize>, n_facets: usize, marks: Marks, best: &mut Option<Vec<u8>>) {
    let k = count_cells(&colors);
    if k == colors.len() {
        let cert = g.certificate(&colors, n_facets, marks);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    }
    let mut sizes = vec![0usize; k];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..k).find(|&c| sizes[c] > 1).expect("non-discrete partition has a large cell");
    for u in (0..colors.len()).filter(|&u| colors[u] == target) {
        let mut next: Vec<usize> = colors
            .iter()
            .map(|&c| if c > target { c + 1 } else if c == target { target + 1 } else { c })
            .collect();
        next[u] = target;
        g.refine(&mut next);
        search(g, next, n_facets, marks, best);
    }
}
