//! The conjecture-checking campaigns over sampled Dantzig figures.

use super::attempt::{attempt_all, failure_kind, FdAttempt, FdConfig};
use super::certificate::{vanishing_edge_coords, Certificate, GeodesicSubject, GraphDocument};
use super::explore::{ModuliGraph, ModuliKind};
use super::sample::{derive_seed, random_dantzig_counted, SamplerConfig};
use super::scc::{strongly_connected_components, SccReport};
use super::ModuliError;
use crate::combinat::{Canon, DantzigFigure, Skeleton};
use crate::document::{coords_to_strings, PolytopeDocument};
use crate::deform::{fundamental_deformation, is_good};
use crate::exactgeom::{format_rational, HPolytope};
use crate::graphalg::{
    classify_edges_in, count_disjoint_geodesics, diameter, dist, nonrevisiting_path, GraphError, DEFAULT_STATE_BUDGET,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

pub const REPORT_FORMAT: &str = "polydeform/campaign-report";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CampaignKind {
    #[serde(rename = "3geodesic")]
    ThreeGeodesic,
    #[serde(rename = "strong-dantzig")]
    StrongDantzig,
}

impl CampaignKind {
    pub fn name(self) -> &'static str {
        match self {
            CampaignKind::ThreeGeodesic => "3geodesic",
            CampaignKind::StrongDantzig => "strong-dantzig",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub kind: CampaignKind,
    pub dim: usize,
    /// Number of figures to sample.
    pub budget: usize,
    pub seed: u64,
    pub sampler: SamplerConfig,
    pub fd: FdConfig,
    pub nonrevisiting_budget: usize,
    /// Figures with fewer disjoint geodesics are counterexamples. 3 outside
    /// of tests.
    pub min_geodesics: usize,
    /// Extra marked graphs checked for disjoint geodesics, for tests.
    pub injected_graphs: Vec<GraphDocument>,
    /// Extra (polytope, marks, facet) deformations judged for goodness, for
    /// tests. The marks need not be a Dantzig pair.
    pub injected_fds: Vec<(HPolytope, (usize, usize), usize)>,
}

impl CampaignConfig {
    pub fn new(kind: CampaignKind, dim: usize, budget: usize, seed: u64) -> Self {
        CampaignConfig {
            kind,
            dim,
            budget,
            seed,
            sampler: SamplerConfig::default(),
            fd: FdConfig::default(),
            nonrevisiting_budget: DEFAULT_STATE_BUDGET,
            min_geodesics: 3,
            injected_graphs: Vec::new(),
            injected_fds: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleStats {
    pub attempted: usize,
    pub valid: usize,
    pub exhausted: usize,
    /// Polytopes drawn by the sampler, including rejected ones.
    pub draws: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub fd_attempts: usize,
    pub fd_successes: usize,
    pub fd_tilted: usize,
    pub fd_good: usize,
    pub fd_not_good: usize,
    pub fd_failures: BTreeMap<String, usize>,
    pub hirsch_violations: usize,
    pub nonrevisiting_undecided: usize,
    pub nonrevisiting_violations: usize,
    /// Figures with `m ≥ 3`, each checked for bad edges.
    pub theorem_checks: usize,
    /// Figures without bad edges, each checked for not-good deformations.
    pub goodness_checks: usize,
    pub consistency_violations: usize,
    pub injected_graphs: usize,
    pub injected_fds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossTab {
    pub m: usize,
    pub bad_edges: usize,
    pub figures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeSummary {
    pub id: String,
    pub canon: String,
    pub first_sample: usize,
    pub samples: usize,
    pub vertices: usize,
    pub edges: usize,
    pub diameter: usize,
    pub hirsch_bound: usize,
    pub dist_xy: usize,
    pub m: usize,
    pub bad_edges: usize,
    pub fd_tried: usize,
    pub fd_succeeded: usize,
    pub fd_good: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliSummary {
    /// Deformation targets, sampled or not.
    pub nodes: usize,
    pub arcs: usize,
    pub good_arcs: usize,
    /// Arcs from a sampled type to a type never sampled.
    pub arcs_leaving_sample: usize,
    /// Components of the sampled types (indices into `types`) under all arcs.
    pub scc_all: SccReport,
    pub scc_good: SccReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub format: String,
    pub version: u32,
    pub campaign: CampaignKind,
    pub dim: usize,
    pub seed: u64,
    pub budget: usize,
    pub samples: SampleStats,
    pub distinct_types: usize,
    pub distinct_ordered_types: usize,
    /// New types among each successive block of 100 figures.
    pub saturation: Vec<usize>,
    pub totals: Totals,
    pub geodesics: Vec<CrossTab>,
    pub types: Vec<TypeSummary>,
    pub moduli: ModuliSummary,
    pub counterexamples: Vec<Certificate>,
}

struct FigureAnalysis {
    canon: Canon,
    ordered: [Canon; 2],
    vertices: usize,
    edges: usize,
    diameter: usize,
    bound: usize,
    dist: usize,
    m: usize,
    bad_edges: usize,
    nonrevisiting: Option<bool>,
    attempts: Vec<FdAttempt>,
    fd_good: Vec<Option<bool>>,
    certificates: Vec<Certificate>,
}

fn graph_error(e: GraphError) -> String {
    e.to_string()
}

fn analyze_figure(fig: &DantzigFigure, cfg: &CampaignConfig, fd_seed: u64) -> Result<FigureAnalysis, String> {
    let p = fig.polytope();
    let (x, y) = (fig.x(), fig.y());
    let g = fig.skeleton();
    let doc = || PolytopeDocument::from_figure(fig);
    let diameter = diameter(&g).map_err(graph_error)?;
    let bound = p.n_facets() - p.dim();
    let dist = dist(&g, x, y).map_err(graph_error)?;
    let m = count_disjoint_geodesics(&g, x, y).map_err(graph_error)?;
    let bad_edges = classify_edges_in(&g, x, y).map_err(graph_error)?.n_bad();
    let tight: Vec<_> = p.vertices().iter().map(|v| v.tight).collect();
    let nonrevisiting = match nonrevisiting_path(&g, &tight, x, y, cfg.nonrevisiting_budget) {
        Ok(found) => Some(found.is_some()),
        Err(GraphError::BudgetExceeded(_)) => None,
        Err(e) => return Err(e.to_string()),
    };
    let attempts = attempt_all(p, Some((x, y)), &cfg.fd, fd_seed);

    let mut certificates = Vec::new();
    if diameter > bound {
        certificates.push(Certificate::HirschViolation {
            polytope: PolytopeDocument::from_polytope(p, None),
            diameter,
            bound,
        });
    }
    if nonrevisiting == Some(false) {
        certificates.push(Certificate::NonRevisitingViolation { figure: doc() });
    }
    if cfg.kind == CampaignKind::ThreeGeodesic && m < cfg.min_geodesics {
        certificates.push(Certificate::FewGeodesics { subject: GeodesicSubject::Figure(doc()), threshold: cfg.min_geodesics, m });
    }
    if m >= 3 && bad_edges > 0 {
        certificates.push(Certificate::TheoremInconsistency { figure: doc(), m, bad_edges });
    }
    let mut fd_good = Vec::with_capacity(attempts.len());
    for a in &attempts {
        let Ok(s) = &a.outcome else {
            fd_good.push(None);
            continue;
        };
        let good = s.good;
        fd_good.push(Some(good));
        let step = format_rational(&s.record.step);
        let tilt = a.tilt.as_deref().map(coords_to_strings);
        if cfg.kind == CampaignKind::StrongDantzig && !good {
            certificates.push(Certificate::NotGoodFd {
                figure: doc(),
                facet: a.facet,
                step: step.clone(),
                tilt: tilt.clone(),
                vanishing_edge: vanishing_edge_coords(&s.record),
            });
        }
        if bad_edges == 0 && !s.good {
            certificates.push(Certificate::GoodnessInconsistency { figure: doc(), facet: a.facet, step, tilt });
        }
    }
    Ok(FigureAnalysis {
        canon: fig.canon(),
        ordered: [fig.ordered_canon(), fig.swapped().ordered_canon()],
        vertices: p.vertices().len(),
        edges: g.n_edges(),
        diameter,
        bound,
        dist,
        m,
        bad_edges,
        nonrevisiting,
        attempts,
        fd_good,
        certificates,
    })
}

fn fd_seed(cfg: &CampaignConfig, index: usize) -> u64 {
    derive_seed(cfg.seed ^ 0xfd00_fd00_fd00_fd00, index as u64)
}

/// Runs the analysis over the given figures and assembles the report.
/// `sampled[i]` is the figure for sample `i` with its draw count, or `None`
/// if the sampler gave up.
fn build_report(sampled: Vec<Option<(DantzigFigure, usize)>>, cfg: &CampaignConfig) -> Result<CampaignReport, ModuliError> {
    let analyses: Vec<Option<Result<FigureAnalysis, String>>> = sampled
        .par_iter()
        .enumerate()
        .map(|(i, s)| s.as_ref().map(|(fig, _)| analyze_figure(fig, cfg, fd_seed(cfg, i))))
        .collect();

    let mut samples = SampleStats { attempted: sampled.len(), ..Default::default() };
    let mut totals = Totals::default();
    let mut counterexamples = Vec::new();
    let mut cross: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut types: Vec<TypeSummary> = Vec::new();
    let mut type_of: HashMap<Canon, usize> = HashMap::new();
    let mut ordered = BTreeSet::new();
    let mut saturation = Vec::new();
    let mut graph = ModuliGraph::new(ModuliKind::Dantzig, cfg.dim);
    let mut first_attempts: Vec<(usize, Vec<FdAttempt>)> = Vec::new();

    for (i, (s, a)) in sampled.into_iter().zip(analyses).enumerate() {
        if i % 100 == 0 {
            saturation.push(0);
        }
        let (Some((fig, draws)), Some(a)) = (s, a) else {
            samples.exhausted += 1;
            continue;
        };
        let a = a.map_err(ModuliError::InvalidParameters)?;
        samples.valid += 1;
        samples.draws += draws;
        totals.fd_attempts += a.attempts.len();
        for (att, rg) in a.attempts.iter().zip(&a.fd_good) {
            match (&att.outcome, rg) {
                (Ok(_), Some(g)) => {
                    totals.fd_successes += 1;
                    totals.fd_tilted += usize::from(att.tilt.is_some());
                    if *g {
                        totals.fd_good += 1;
                    } else {
                        totals.fd_not_good += 1;
                    }
                }
                (Err(e), _) => *totals.fd_failures.entry(failure_kind(e).to_string()).or_default() += 1,
                _ => {}
            }
        }
        totals.hirsch_violations += usize::from(a.diameter > a.bound);
        match a.nonrevisiting {
            None => totals.nonrevisiting_undecided += 1,
            Some(false) => totals.nonrevisiting_violations += 1,
            Some(true) => {}
        }
        totals.theorem_checks += usize::from(a.m >= 3);
        totals.goodness_checks += usize::from(a.bad_edges == 0);
        *cross.entry((a.m, a.bad_edges)).or_default() += 1;
        ordered.extend(a.ordered.iter().cloned());

        let succeeded = a.fd_good.iter().filter(|g| g.is_some()).count();
        let good = a.fd_good.iter().filter(|g| **g == Some(true)).count();
        let t = match type_of.get(&a.canon) {
            Some(&t) => t,
            None => {
                *saturation.last_mut().unwrap() += 1;
                let t = types.len();
                type_of.insert(a.canon.clone(), t);
                types.push(TypeSummary {
                    id: a.canon.short_id(),
                    canon: a.canon.to_hex(),
                    first_sample: i,
                    samples: 0,
                    vertices: a.vertices,
                    edges: a.edges,
                    diameter: a.diameter,
                    hirsch_bound: a.bound,
                    dist_xy: a.dist,
                    m: a.m,
                    bad_edges: a.bad_edges,
                    fd_tried: 0,
                    fd_succeeded: 0,
                    fd_good: 0,
                });
                let node = graph.add_seed(fig.polytope().clone(), Some((fig.x(), fig.y())))?;
                debug_assert_eq!(node, t);
                first_attempts.push((t, a.attempts));
                t
            }
        };
        let ts = &mut types[t];
        ts.samples += 1;
        ts.fd_tried += a.fd_good.len();
        ts.fd_succeeded += succeeded;
        ts.fd_good += good;
        for c in &a.certificates {
            if matches!(c, Certificate::TheoremInconsistency { .. } | Certificate::GoodnessInconsistency { .. }) {
                totals.consistency_violations += 1;
            }
        }
        counterexamples.extend(a.certificates);
    }

    if cfg.kind == CampaignKind::ThreeGeodesic {
        for g in &cfg.injected_graphs {
            totals.injected_graphs += 1;
            if g.x >= g.vertices || g.y >= g.vertices || g.edges.iter().any(|&(a, b)| a >= g.vertices || b >= g.vertices) {
                return Err(ModuliError::InvalidParameters("injected graph refers to a missing vertex".into()));
            }
            let sk = Skeleton::from_edges(g.vertices, &g.edges);
            let m = count_disjoint_geodesics(&sk, g.x, g.y).map_err(|e| ModuliError::InvalidParameters(e.to_string()))?;
            if m < cfg.min_geodesics {
                counterexamples.push(Certificate::FewGeodesics {
                    subject: GeodesicSubject::Graph(g.clone()),
                    threshold: cfg.min_geodesics,
                    m,
                });
            }
        }
    }

    if cfg.kind == CampaignKind::StrongDantzig {
        for (p, (x, y), facet) in &cfg.injected_fds {
            totals.injected_fds += 1;
            let fd = fundamental_deformation(p, *facet, &cfg.fd.step)
                .map_err(|e| ModuliError::InvalidParameters(format!("injected deformation: {e}")))?;
            if !is_good(&fd, *x, *y).map_err(|e| ModuliError::InvalidParameters(e.to_string()))? {
                counterexamples.push(Certificate::NotGoodFd {
                    figure: PolytopeDocument::from_polytope(p, Some((*x, *y))),
                    facet: *facet,
                    step: format_rational(&fd.step),
                    tilt: None,
                    vanishing_edge: vanishing_edge_coords(&fd),
                });
            }
        }
    }

    let sampled_types = types.len();
    for (t, attempts) in first_attempts {
        graph.absorb(t, attempts, &cfg.fd.step);
    }
    let inside = |good_only: bool| -> Vec<(usize, usize)> {
        graph.arc_pairs(good_only).into_iter().filter(|&(s, t)| s < sampled_types && t < sampled_types).collect()
    };
    let moduli = ModuliSummary {
        nodes: graph.n_nodes(),
        arcs: graph.arcs.len(),
        good_arcs: graph.n_good_arcs(),
        arcs_leaving_sample: graph.arcs.iter().filter(|a| a.target >= sampled_types).count(),
        scc_all: SccReport::from_components(strongly_connected_components(sampled_types, &inside(false))),
        scc_good: SccReport::from_components(strongly_connected_components(sampled_types, &inside(true))),
    };

    Ok(CampaignReport {
        format: REPORT_FORMAT.into(),
        version: 1,
        campaign: cfg.kind,
        dim: cfg.dim,
        seed: cfg.seed,
        budget: cfg.budget,
        samples,
        distinct_types: types.len(),
        distinct_ordered_types: ordered.len(),
        saturation,
        totals,
        geodesics: cross.into_iter().map(|((m, bad_edges), figures)| CrossTab { m, bad_edges, figures }).collect(),
        types,
        moduli,
        counterexamples,
    })
}

/// Samples `cfg.budget` Dantzig figures and checks each of them.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport, ModuliError> {
    if cfg.dim < 3 {
        return Err(ModuliError::InvalidParameters(format!("dimension must be at least 3, got {}", cfg.dim)));
    }
    let sampled: Vec<Option<(DantzigFigure, usize)>> = (0..cfg.budget)
        .into_par_iter()
        .map(|i| match random_dantzig_counted(cfg.dim, derive_seed(cfg.seed, i as u64), &cfg.sampler) {
            Ok(s) => Ok(Some(s)),
            Err(ModuliError::SamplerExhausted { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;
    build_report(sampled, cfg)
}

fn run_on(figures: &[DantzigFigure], kind: CampaignKind, cfg: &CampaignConfig) -> Result<CampaignReport, ModuliError> {
    let dim = figures.first().map_or(cfg.dim, DantzigFigure::dim);
    if figures.iter().any(|f| f.dim() != dim) {
        return Err(ModuliError::InvalidParameters("figures have mixed dimensions".into()));
    }
    let cfg = CampaignConfig { kind, dim, budget: figures.len(), ..cfg.clone() };
    build_report(figures.iter().map(|f| Some((f.clone(), 0))).collect(), &cfg)
}

/// Disjoint-geodesic check of the given figures.
pub fn verify_3geodesic(figures: &[DantzigFigure], cfg: &CampaignConfig) -> Result<CampaignReport, ModuliError> {
    run_on(figures, CampaignKind::ThreeGeodesic, cfg)
}

/// Goodness check of every deformation of the given figures.
pub fn verify_strong_dantzig(figures: &[DantzigFigure], cfg: &CampaignConfig) -> Result<CampaignReport, ModuliError> {
    run_on(figures, CampaignKind::StrongDantzig, cfg)
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Plain-text rendering of the same data as [`Self::to_json`].
    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let t = &self.totals;
        let _ = writeln!(s, "campaign {}  d={}  seed={}  budget={}", self.campaign.name(), self.dim, self.seed, self.budget);
        let _ = writeln!(
            s,
            "samples: {} attempted, {} valid, {} exhausted, {} draws",
            self.samples.attempted, self.samples.valid, self.samples.exhausted, self.samples.draws
        );
        let _ = writeln!(
            s,
            "types: {} unordered, {} ordered; new per 100 samples: {:?}",
            self.distinct_types, self.distinct_ordered_types, self.saturation
        );
        let _ = writeln!(
            s,
            "deformations: {} tried, {} succeeded ({} tilted), {} good, {} not good",
            t.fd_attempts, t.fd_successes, t.fd_tilted, t.fd_good, t.fd_not_good
        );
        for (k, v) in &t.fd_failures {
            let _ = writeln!(s, "  failed {k}: {v}");
        }
        let _ = writeln!(
            s,
            "hirsch violations: {}; non-revisiting violations: {} ({} undecided)",
            t.hirsch_violations, t.nonrevisiting_violations, t.nonrevisiting_undecided
        );
        let _ = writeln!(
            s,
            "consistency: {} theorem checks, {} goodness checks, {} violations",
            t.theorem_checks, t.goodness_checks, t.consistency_violations
        );
        let _ = writeln!(s, "m / bad edges / figures:");
        for c in &self.geodesics {
            let _ = writeln!(s, "  {:>3} {:>4} {:>6}", c.m, c.bad_edges, c.figures);
        }
        let _ = writeln!(
            s,
            "{:<10} {:>7} {:>5} {:>5} {:>4} {:>4} {:>4} {:>3} {:>4} {:>6} {:>6} {:>5}",
            "type", "samples", "verts", "edges", "diam", "n-d", "dist", "m", "bad", "fds", "ok", "good"
        );
        for ty in &self.types {
            let _ = writeln!(
                s,
                "{:<10} {:>7} {:>5} {:>5} {:>4} {:>4} {:>4} {:>3} {:>4} {:>6} {:>6} {:>5}",
                ty.id,
                ty.samples,
                ty.vertices,
                ty.edges,
                ty.diameter,
                ty.hirsch_bound,
                ty.dist_xy,
                ty.m,
                ty.bad_edges,
                ty.fd_tried,
                ty.fd_succeeded,
                ty.fd_good
            );
        }
        let m = &self.moduli;
        let _ = writeln!(
            s,
            "moduli: {} nodes, {} arcs ({} good, {} leaving the sample); sampled types strongly connected: {} (good arcs: {})",
            m.nodes, m.arcs, m.good_arcs, m.arcs_leaving_sample, m.scc_all.strongly_connected, m.scc_good.strongly_connected
        );
        let _ = writeln!(
            s,
            "components: {} under all arcs, {} under good arcs",
            m.scc_all.components.len(),
            m.scc_good.components.len()
        );
        if self.counterexamples.is_empty() {
            let _ = writeln!(s, "counterexamples: none");
        } else {
            let _ = writeln!(s, "counterexamples: {}", self.counterexamples.len());
            for c in &self.counterexamples {
                let _ = writeln!(s, "  {}", c.kind_name());
            }
        }
        s
    }
}
