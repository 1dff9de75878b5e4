//! Breadth-first exploration of the graph whose nodes are combinatorial
//! types and whose arcs are fundamental deformations.

use super::attempt::{apply_tilt, attempt_all, failure_kind, FdAttempt, FdConfig};
use super::sample::derive_seed;
use super::ModuliError;
use crate::combinat::{canonical_form, incidence, Canon, DantzigFigure, Marks};
use crate::document::{coords_to_strings, parse_coords, PolytopeDocument};
use crate::exactgeom::{format_rational, parse_rational, HPolytope, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub const MODULI_FORMAT: &str = "polydeform/moduli";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuliKind {
    /// Simple polytopes, all vertex pairs.
    Polytope,
    /// Dantzig figures, types carry the unordered pair `{x, y}`.
    Dantzig,
}

#[derive(Debug, Clone)]
pub struct ModuliNode {
    pub canon: Canon,
    pub representative: HPolytope,
    pub marks: Option<(usize, usize)>,
    pub expanded: bool,
}

impl ModuliNode {
    pub fn figure(&self) -> Option<DantzigFigure> {
        let (x, y) = self.marks?;
        DantzigFigure::new(self.representative.clone(), x, y).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliArc {
    pub source: usize,
    pub target: usize,
    pub facet: usize,
    pub step: Rational,
    /// Normal tilt applied to the source facet before deforming.
    pub tilt: Option<Vec<Rational>>,
    pub good: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreStats {
    pub expanded: usize,
    pub fd_attempts: usize,
    pub fd_successes: usize,
    pub tilted_successes: usize,
    pub failures: BTreeMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct ModuliGraph {
    pub kind: ModuliKind,
    pub dim: usize,
    pub nodes: Vec<ModuliNode>,
    pub arcs: Vec<ModuliArc>,
    pub frontier: VecDeque<usize>,
    pub stats: ExploreStats,
    index: HashMap<Canon, usize>,
}

fn canon_of(kind: ModuliKind, p: &HPolytope, marks: Option<(usize, usize)>) -> Result<Canon, ModuliError> {
    let inc = incidence(p).map_err(|e| ModuliError::InvalidParameters(e.to_string()))?;
    match (kind, marks) {
        (ModuliKind::Polytope, _) => Ok(canonical_form(&inc, Marks::None)),
        (ModuliKind::Dantzig, Some((x, y))) => Ok(canonical_form(&inc, Marks::Unordered(x, y))),
        (ModuliKind::Dantzig, None) => Err(ModuliError::InvalidParameters("Dantzig nodes need marks".into())),
    }
}

fn canon_seed(seed: u64, c: &Canon) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in &c.0 {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    derive_seed(seed, h)
}

struct Discovered {
    facet: usize,
    tilt: Option<Vec<Rational>>,
    good: bool,
    target: Canon,
    representative: HPolytope,
    marks: Option<(usize, usize)>,
}

struct Expansion {
    discovered: Vec<Discovered>,
    attempts: usize,
    failures: Vec<&'static str>,
}

fn collect(attempts: Vec<FdAttempt>) -> Expansion {
    let mut out = Expansion { discovered: Vec::new(), attempts: attempts.len(), failures: Vec::new() };
    for a in attempts {
        match a.outcome {
            Ok(s) => {
                let (representative, marks) = match s.figure {
                    Some(f) => {
                        let m = (f.x(), f.y());
                        (f.polytope().clone(), Some(m))
                    }
                    None => (s.record.result, None),
                };
                out.discovered.push(Discovered { facet: a.facet, tilt: a.tilt, good: s.good, target: s.target, representative, marks });
            }
            Err(e) => out.failures.push(failure_kind(&e)),
        }
    }
    out
}

impl ModuliGraph {
    pub fn new(kind: ModuliKind, dim: usize) -> Self {
        ModuliGraph {
            kind,
            dim,
            nodes: Vec::new(),
            arcs: Vec::new(),
            frontier: VecDeque::new(),
            stats: ExploreStats::default(),
            index: HashMap::new(),
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_of(&self, c: &Canon) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Adds a node (if its type is new) and queues it. Returns its index.
    pub fn add_seed(&mut self, p: HPolytope, marks: Option<(usize, usize)>) -> Result<usize, ModuliError> {
        if p.dim() != self.dim {
            return Err(ModuliError::InvalidParameters(format!("seed has dimension {}, graph has {}", p.dim(), self.dim)));
        }
        if self.kind == ModuliKind::Dantzig {
            let (x, y) = marks.ok_or_else(|| ModuliError::InvalidParameters("Dantzig seeds need marks".into()))?;
            DantzigFigure::new(p.clone(), x, y).map_err(|e| ModuliError::InvalidParameters(e.to_string()))?;
        } else if !p.is_simple() {
            return Err(ModuliError::InvalidParameters("seed polytope is not simple".into()));
        }
        let canon = canon_of(self.kind, &p, marks)?;
        Ok(self.insert(canon, p, marks).0)
    }

    fn insert(&mut self, canon: Canon, representative: HPolytope, marks: Option<(usize, usize)>) -> (usize, bool) {
        if let Some(&i) = self.index.get(&canon) {
            return (i, false);
        }
        let marks = if self.kind == ModuliKind::Polytope { None } else { marks };
        let i = self.nodes.len();
        self.index.insert(canon.clone(), i);
        self.nodes.push(ModuliNode { canon, representative, marks, expanded: false });
        self.frontier.push_back(i);
        (i, true)
    }

    fn expand(&self, i: usize, cfg: &FdConfig, seed: u64) -> Expansion {
        let node = &self.nodes[i];
        collect(attempt_all(&node.representative, node.marks, cfg, canon_seed(seed, &node.canon)))
    }

    fn merge(&mut self, src: usize, ex: Expansion, step: &Rational) {
        self.nodes[src].expanded = true;
        self.stats.expanded += 1;
        self.stats.fd_attempts += ex.attempts;
        for f in ex.failures {
            *self.stats.failures.entry(f.to_string()).or_default() += 1;
        }
        for d in ex.discovered {
            self.stats.fd_successes += 1;
            if d.tilt.is_some() {
                self.stats.tilted_successes += 1;
            }
            let (target, _) = self.insert(d.target, d.representative, d.marks);
            self.arcs.push(ModuliArc { source: src, target, facet: d.facet, step: step.clone(), tilt: d.tilt, good: d.good });
        }
    }

    /// Records deformations already attempted on node `src`'s representative
    /// as its expansion.
    pub fn absorb(&mut self, src: usize, attempts: Vec<FdAttempt>, step: &Rational) {
        self.frontier.retain(|&i| i != src);
        self.merge(src, collect(attempts), step);
    }

    /// Expands up to `budget` frontier nodes, a layer at a time. Nodes in a
    /// layer are deformed in parallel and merged in frontier order, so the
    /// result depends only on the inputs.
    pub fn explore(&mut self, budget: usize, seed: u64, cfg: &FdConfig) {
        let mut left = budget;
        while left > 0 && !self.frontier.is_empty() {
            let take = left.min(self.frontier.len());
            let batch: Vec<usize> = self.frontier.drain(..take).collect();
            left -= take;
            let expansions: Vec<Expansion> = batch.par_iter().map(|&i| self.expand(i, cfg, seed)).collect();
            for (&src, ex) in batch.iter().zip(expansions) {
                self.merge(src, ex, &cfg.step);
            }
        }
    }

    pub fn arc_pairs(&self, good_only: bool) -> Vec<(usize, usize)> {
        self.arcs.iter().filter(|a| !good_only || a.good).map(|a| (a.source, a.target)).collect()
    }

    pub fn n_good_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.good).count()
    }

    /// Number of ordered-pair types among the Dantzig nodes (each unordered
    /// type contributes one or two).
    pub fn ordered_type_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if let Some(f) = n.figure() {
                seen.insert(f.ordered_canon());
                seen.insert(f.swapped().ordered_canon());
            }
        }
        seen.len()
    }

    /// Replays arc `i` from its source representative and checks the target
    /// type and the goodness verdict.
    pub fn verify_arc(&self, i: usize) -> bool {
        let Some(arc) = self.arcs.get(i) else {
            return false;
        };
        let src = &self.nodes[arc.source];
        let (p, marks) = match &arc.tilt {
            None => (src.representative.clone(), src.marks),
            Some(delta) => match apply_tilt(&src.representative, src.marks, arc.facet, delta) {
                Some(t) => t,
                None => return false,
            },
        };
        let cfg = FdConfig { step: arc.step.clone(), tilt_retries: 0, random_tilts: 0 };
        let a = super::attempt::attempt_facet(&p, marks, arc.facet, &cfg, 0);
        match a.outcome {
            Ok(s) => s.target == self.nodes[arc.target].canon && s.good == arc.good,
            Err(_) => false,
        }
    }

    pub fn to_document(&self) -> ModuliDocument {
        ModuliDocument {
            format: MODULI_FORMAT.into(),
            version: 1,
            kind: self.kind,
            dim: self.dim,
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    canon: n.canon.to_hex(),
                    representative: PolytopeDocument::from_polytope(&n.representative, n.marks),
                    expanded: n.expanded,
                })
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcDoc {
                    source: a.source,
                    target: a.target,
                    facet: a.facet,
                    step: format_rational(&a.step),
                    tilt: a.tilt.as_deref().map(coords_to_strings),
                    good: a.good,
                })
                .collect(),
            frontier: self.frontier.iter().copied().collect(),
            stats: self.stats.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graphs serialize")
    }

    /// Rebuilds a graph, recomputing every node's type from its
    /// representative.
    pub fn from_document(doc: &ModuliDocument) -> Result<Self, ModuliError> {
        let bad = |m: String| ModuliError::InvalidParameters(m);
        if doc.format != MODULI_FORMAT || doc.version != 1 {
            return Err(bad(format!("unsupported graph format {:?} v{}", doc.format, doc.version)));
        }
        let mut g = ModuliGraph::new(doc.kind, doc.dim);
        for (i, n) in doc.nodes.iter().enumerate() {
            let parsed = n.representative.resolve().map_err(|e| bad(format!("node {i}: {e}")))?;
            let canon = canon_of(doc.kind, &parsed.polytope, parsed.marks)?;
            if canon.to_hex() != n.canon {
                return Err(bad(format!("node {i}: stored type does not match its representative")));
            }
            let (j, fresh) = g.insert(canon, parsed.polytope, parsed.marks);
            if !fresh || j != i {
                return Err(bad(format!("node {i}: duplicate type")));
            }
            g.nodes[i].expanded = n.expanded;
        }
        g.frontier = doc.frontier.iter().copied().collect();
        if g.frontier.iter().any(|&i| i >= g.nodes.len()) {
            return Err(bad("frontier refers to a missing node".into()));
        }
        for a in &doc.arcs {
            if a.source >= g.nodes.len() || a.target >= g.nodes.len() {
                return Err(bad("arc refers to a missing node".into()));
            }
            let step = parse_rational(&a.step).map_err(|e| bad(e.to_string()))?;
            let tilt = match &a.tilt {
                None => None,
                Some(t) => Some(parse_coords(t).map_err(|e| bad(e.to_string()))?),
            };
            g.arcs.push(ModuliArc { source: a.source, target: a.target, facet: a.facet, step, tilt, good: a.good });
        }
        g.stats = doc.stats.clone();
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, ModuliError> {
        let doc: ModuliDocument =
            serde_json::from_str(text).map_err(|e| ModuliError::InvalidParameters(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// Seeds a graph and expands up to `budget` nodes.
pub fn explore_moduli(
    dim: usize,
    kind: ModuliKind,
    seeds: Vec<(HPolytope, Option<(usize, usize)>)>,
    budget: usize,
    seed: u64,
    cfg: &FdConfig,
) -> Result<ModuliGraph, ModuliError> {
    let mut g = ModuliGraph::new(kind, dim);
    for (p, marks) in seeds {
        g.add_seed(p, marks)?;
    }
    g.explore(budget, seed, cfg);
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub canon: String,
    pub representative: PolytopeDocument,
    pub expanded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub source: usize,
    pub target: usize,
    pub facet: usize,
    pub step: String,
    pub tilt: Option<Vec<String>>,
    pub good: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuliDocument {
    pub format: String,
    pub version: u32,
    pub kind: ModuliKind,
    pub dim: usize,
    pub nodes: Vec<NodeDoc>,
    pub arcs: Vec<ArcDoc>,
    pub frontier: Vec<usize>,
    pub stats: ExploreStats,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::shapes;
    use crate::moduli::sample::{random_dantzig, SamplerConfig};
    use crate::moduli::scc::strongly_connected_components;

    fn small_dantzig_graph(budget: usize) -> ModuliGraph {
        let fig = random_dantzig(3, 7, &SamplerConfig::default()).unwrap();
        let mut g = ModuliGraph::new(ModuliKind::Dantzig, 3);
        g.add_seed(fig.polytope().clone(), Some((fig.x(), fig.y()))).unwrap();
        g.explore(budget, 1, &FdConfig::default());
        g
    }

    #[test]
    fn seed_validation() {
        let mut g = ModuliGraph::new(ModuliKind::Dantzig, 3);
        assert!(g.add_seed(shapes::unit_cube(3), None).is_err());
        assert!(g.add_seed(shapes::square_pyramid(), Some((0, 1))).is_err());
        assert_eq!(g.add_seed(shapes::unit_cube(3), Some((0, 7))), Ok(0));
        assert_eq!(g.add_seed(shapes::unit_cube(3), Some((1, 6))), Ok(0));
        let mut h = ModuliGraph::new(ModuliKind::Polytope, 4);
        assert!(h.add_seed(shapes::unit_cube(3), None).is_err());
    }

    #[test]
    fn exploration_is_deterministic() {
        let a = small_dantzig_graph(6);
        let b = small_dantzig_graph(6);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.stats.expanded, 6.min(a.n_nodes()));
    }

    #[test]
    fn arcs_replay() {
        let g = small_dantzig_graph(4);
        assert!(!g.arcs.is_empty());
        for i in 0..g.arcs.len() {
            assert!(g.verify_arc(i), "arc {i}");
        }
    }

    #[test]
    fn json_round_trip_and_resume() {
        let mut g = small_dantzig_graph(3);
        let mut h = ModuliGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(h.to_json(), g.to_json());
        g.explore(3, 1, &FdConfig::default());
        h.explore(3, 1, &FdConfig::default());
        assert_eq!(h.to_json(), g.to_json());
    }

    #[test]
    fn tampered_cache_rejected() {
        let g = small_dantzig_graph(2);
        let mut doc = g.to_document();
        doc.nodes[0].canon = "00".into();
        assert!(ModuliGraph::from_document(&doc).is_err());
    }

    #[test]
    fn polytope_kind_runs() {
        let mut g = ModuliGraph::new(ModuliKind::Polytope, 3);
        g.add_seed(shapes::tilted_cube(), None).unwrap();
        g.explore(3, 0, &FdConfig::default());
        assert!(g.n_nodes() >= 2);
        let comps = strongly_connected_components(g.n_nodes(), &g.arc_pairs(false));
        assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), g.n_nodes());
    }
}
