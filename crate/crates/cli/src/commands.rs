use crate::{
    CampaignArgs, CampaignCmd, CertificateCmd, CheckCmd, Cli, Command, DantzigCmd, FdArgs, FdCmd, GeodesicsCmd, KindArg,
    ModuliCmd, Pair, Tuning,
};
use polydeform::combinat::{find_dantzig_pairs, polytope_skeleton, DantzigFigure};
use polydeform::deform::{
    fd_of_dantzig, find_bad_pair, fundamental_deformation, is_good, new_ridge_simplex, DeformError, FdRecord,
};
use polydeform::document::{parse_point_list, parse_polytope, ParsedPolytope, PolytopeDocument};
use polydeform::exactgeom::{format_rational, parse_rational, HPolytope, Point, Rational};
use polydeform::graphalg::{count_disjoint_geodesics, dist, geodesic_dag, hirsch_check, nonrevisiting_path, GraphError};
use polydeform::moduli::certificate::vanishing_edge_coords;
use polydeform::moduli::explore::ModuliGraph;
use polydeform::moduli::scc::{scc, ArcFilter};
use polydeform::moduli::{
    random_dantzig, random_simple_polytope, run_campaign, CampaignConfig, CampaignKind, CampaignReport, Certificate,
    FdConfig, ModuliError, ModuliKind, SamplerConfig,
};
use std::fs;
use std::path::{Path, PathBuf};

pub enum Outcome {
    Pass,
    Counterexample(PathBuf),
}

pub enum Failure {
    Input(String),
    Exhausted(String),
}

type Result<T> = std::result::Result<T, Failure>;

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ParsedPolytope> {
    parse_polytope(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn moduli_failure(e: ModuliError) -> Failure {
    match e {
        ModuliError::SamplerExhausted { .. } => Failure::Exhausted(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn fd_config(t: &Tuning) -> FdConfig {
    FdConfig { tilt_retries: t.tilt_retries, random_tilts: t.random_tilts, ..FdConfig::default() }
}

fn sampler(t: &Tuning) -> SamplerConfig {
    SamplerConfig { max_attempts: t.sampler_attempts, ..SamplerConfig::default() }
}

fn show_point(p: &Point) -> String {
    p.to_string()
}

fn facet_list(p: &HPolytope, v: usize) -> String {
    let fs: Vec<String> = p.vertices()[v].tight.iter().map(|f| (f + 1).to_string()).collect();
    format!("{{{}}}", fs.join(","))
}

fn vertex_of(p: &HPolytope, text: &str, name: &str) -> Result<usize> {
    let point = parse_point_list(text).map_err(input)?;
    if point.0.len() != p.dim() {
        return Err(Failure::Input(format!("--{name} has {} coordinates, expected {}", point.0.len(), p.dim())));
    }
    p.vertex_index(&point).ok_or_else(|| Failure::Input(format!("--{name} {point} is not a vertex")))
}

/// The pair from `--x/--y`, falling back to the document's marks.
fn pair_of(parsed: &ParsedPolytope, pair: &Pair) -> Result<(usize, usize)> {
    let p = &parsed.polytope;
    let x = match (&pair.x, parsed.marks) {
        (Some(t), _) => vertex_of(p, t, "x")?,
        (None, Some((x, _))) => x,
        (None, None) => return Err(input("no --x given and the file has no marks")),
    };
    let y = match (&pair.y, parsed.marks) {
        (Some(t), _) => vertex_of(p, t, "y")?,
        (None, Some((_, y))) => y,
        (None, None) => return Err(input("no --y given and the file has no marks")),
    };
    if x == y {
        return Err(input("x and y must be distinct vertices"));
    }
    Ok((x, y))
}

fn facet_index(p: &HPolytope, facet: usize) -> Result<usize> {
    if facet == 0 || facet > p.n_facets() {
        return Err(Failure::Input(format!("--facet must be between 1 and {}", p.n_facets())));
    }
    Ok(facet - 1)
}

fn step_of(text: &str) -> Result<Rational> {
    let step = parse_rational(text).map_err(|e| Failure::Input(format!("--step: {e}")))?;
    if step <= Rational::from_integer(0.into()) {
        return Err(input("--step must be positive"));
    }
    Ok(step)
}

fn emit_certificates(path: PathBuf, certs: &[Certificate]) -> Result<Outcome> {
    let text = if let [one] = certs {
        one.to_json()
    } else {
        serde_json::to_string_pretty(certs).expect("certificates serialize")
    };
    write(&path, &text)?;
    Ok(Outcome::Counterexample(path))
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let t = &cli.tuning;
    match cli.command {
        Command::Vertices { file } => vertices(&file),
        Command::Check(CheckCmd::Hirsch { file, certificate }) => check_hirsch(&file, certificate),
        Command::Check(CheckCmd::Nonrevisiting { file, pair, certificate }) => check_nonrevisiting(&file, &pair, certificate, t),
        Command::Dantzig(DantzigCmd::Find { file }) => dantzig_find(&file),
        Command::Geodesics(GeodesicsCmd::Count { file, pair }) => geodesics_count(&file, &pair),
        Command::Fd(FdCmd::Apply { fd, out }) => fd_apply(&fd, &out),
        Command::Fd(FdCmd::Good { fd, pair, all_pairs, certificate }) => fd_good(&fd, &pair, all_pairs, certificate),
        Command::Campaign(CampaignCmd::ThreeGeodesic(a)) => campaign(CampaignKind::ThreeGeodesic, &a, t),
        Command::Campaign(CampaignCmd::StrongDantzig(a)) => campaign(CampaignKind::StrongDantzig, &a, t),
        Command::Moduli(ModuliCmd::Explore { d, kind, budget, seed, facets, out, cache }) => {
            moduli_explore(d, kind, budget, seed, facets, &out, cache, t)
        }
        Command::Moduli(ModuliCmd::Scc { graph, good_only }) => moduli_scc(&graph, good_only),
        Command::Moduli(ModuliCmd::Verify { graph }) => moduli_verify(&graph),
        Command::Certificate(CertificateCmd::Verify { file }) => certificate_verify(&file),
    }
}

fn vertices(file: &Path) -> Result<Outcome> {
    let parsed = load(file)?;
    let p = &parsed.polytope;
    println!("dimension {}, {} facets, {} vertices, simple: {}", p.dim(), p.n_facets(), p.vertices().len(), p.is_simple());
    for (i, v) in p.vertices().iter().enumerate() {
        println!("{i:>4}  {}  {}", show_point(&v.point), facet_list(p, i));
    }
    Ok(Outcome::Pass)
}

fn check_hirsch(file: &Path, certificate: Option<PathBuf>) -> Result<Outcome> {
    let parsed = load(file)?;
    let h = hirsch_check(&parsed.polytope).map_err(input)?;
    println!("diameter {}, bound n - d = {}, holds: {}", h.diameter, h.bound, h.holds());
    if h.holds() {
        return Ok(Outcome::Pass);
    }
    let cert = Certificate::HirschViolation {
        polytope: PolytopeDocument::from_polytope(&parsed.polytope, None),
        diameter: h.diameter,
        bound: h.bound,
    };
    emit_certificates(certificate.unwrap_or_else(|| with_suffix(file, ".hirsch-certificate.json")), &[cert])
}

fn check_nonrevisiting(file: &Path, pair: &Pair, certificate: Option<PathBuf>, t: &Tuning) -> Result<Outcome> {
    let parsed = load(file)?;
    let p = &parsed.polytope;
    let (x, y) = pair_of(&parsed, pair)?;
    let g = polytope_skeleton(p).map_err(input)?;
    let tight: Vec<_> = p.vertices().iter().map(|v| v.tight).collect();
    match nonrevisiting_path(&g, &tight, x, y, t.state_budget) {
        Ok(Some(path)) => {
            println!("non-revisiting path of length {}:", path.len() - 1);
            for v in path {
                println!("  {}", show_point(&p.vertices()[v].point));
            }
            Ok(Outcome::Pass)
        }
        Ok(None) => {
            println!("no non-revisiting path");
            let cert = Certificate::NonRevisitingViolation { figure: PolytopeDocument::from_polytope(p, Some((x, y))) };
            emit_certificates(certificate.unwrap_or_else(|| with_suffix(file, ".nonrevisiting-certificate.json")), &[cert])
        }
        Err(GraphError::BudgetExceeded(n)) => Err(Failure::Exhausted(format!("search stopped after {n} states"))),
        Err(e) => Err(input(e)),
    }
}

fn dantzig_find(file: &Path) -> Result<Outcome> {
    let parsed = load(file)?;
    let p = &parsed.polytope;
    let pairs = find_dantzig_pairs(p).map_err(input)?;
    println!("{} Dantzig pair(s)", pairs.len());
    for (x, y) in pairs {
        println!("  x = {}  y = {}", show_point(&p.vertices()[x].point), show_point(&p.vertices()[y].point));
    }
    Ok(Outcome::Pass)
}

fn geodesics_count(file: &Path, pair: &Pair) -> Result<Outcome> {
    let parsed = load(file)?;
    let (x, y) = pair_of(&parsed, pair)?;
    let g = polytope_skeleton(&parsed.polytope).map_err(input)?;
    let d = dist(&g, x, y).map_err(input)?;
    let paths = geodesic_dag(&g, x, y).map_err(input)?.count_paths();
    let m = count_disjoint_geodesics(&g, x, y).map_err(input)?;
    println!("dist {d}");
    println!("geodesics {paths}");
    println!("m {m}");
    Ok(Outcome::Pass)
}

fn deform_error(e: DeformError) -> Failure {
    Failure::Input(format!("deformation failed: {e}"))
}

fn print_record(fd: &FdRecord) {
    let src = &fd.source;
    println!("facet {} moved with step {}", fd.facet + 1, format_rational(&fd.step));
    println!("first crossing t0 = {}, stopped at t1 = {}", format_rational(&fd.t0), format_rational(&fd.t1));
    println!("vanishing edge v = {}  w = {}", show_point(&fd.v_data().point), show_point(&fd.w_data().point));
    if let Some(j) = fd.second_facet() {
        println!("second facet {}", j + 1);
    }
    println!(
        "vertices {} -> {} (change {}), edges {} -> {}",
        src.vertices().len(),
        fd.result.vertices().len(),
        fd.result.vertices().len() as i64 - src.vertices().len() as i64,
        fd.source_skeleton.n_edges(),
        fd.result_skeleton.n_edges()
    );
    match new_ridge_simplex(fd) {
        Ok(ridge) => {
            println!("new ridge simplex:");
            for v in ridge {
                println!("  {}", show_point(&fd.result.vertices()[v].point));
            }
        }
        Err(e) => println!("new ridge simplex check failed: {e}"),
    }
}

fn fd_apply(a: &FdArgs, out: &Path) -> Result<Outcome> {
    let parsed = load(&a.file)?;
    let facet = facet_index(&parsed.polytope, a.facet)?;
    let step = step_of(&a.step)?;
    let doc = match parsed.figure() {
        Some(fig) => {
            let dfd = fd_of_dantzig(&fig, facet, &step).map_err(deform_error)?;
            print_record(&dfd.record);
            PolytopeDocument::from_figure(&dfd.figure)
        }
        None => {
            let fd = fundamental_deformation(&parsed.polytope, facet, &step).map_err(deform_error)?;
            print_record(&fd);
            PolytopeDocument::from_polytope(&fd.result, None)
        }
    };
    write(out, &doc.to_json())?;
    println!("result written to {}", out.display());
    Ok(Outcome::Pass)
}

fn fd_good(a: &FdArgs, pair: &Pair, all_pairs: bool, certificate: Option<PathBuf>) -> Result<Outcome> {
    let parsed = load(&a.file)?;
    let p = &parsed.polytope;
    let facet = facet_index(p, a.facet)?;
    let step = step_of(&a.step)?;
    let fd = fundamental_deformation(p, facet, &step).map_err(deform_error)?;
    println!("vanishing edge v = {}  w = {}", show_point(&fd.v_data().point), show_point(&fd.w_data().point));
    let bad = if all_pairs {
        let r = find_bad_pair(&fd);
        println!("pairs checked {}", r.pairs_checked);
        r.bad_pair
    } else {
        let (x, y) = pair_of(&parsed, pair)?;
        let good = is_good(&fd, x, y).map_err(deform_error)?;
        (!good).then_some((x, y))
    };
    let Some((x, y)) = bad else {
        println!("good");
        return Ok(Outcome::Pass);
    };
    println!("not good for x = {}  y = {}", show_point(&p.vertices()[x].point), show_point(&p.vertices()[y].point));
    let cert = Certificate::NotGoodFd {
        figure: PolytopeDocument::from_polytope(p, Some((x, y))),
        facet,
        step: format_rational(&step),
        tilt: None,
        vanishing_edge: vanishing_edge_coords(&fd),
    };
    emit_certificates(certificate.unwrap_or_else(|| with_suffix(&a.file, ".fd-certificate.json")), &[cert])
}

fn campaign(kind: CampaignKind, a: &CampaignArgs, t: &Tuning) -> Result<Outcome> {
    let mut cfg = CampaignConfig::new(kind, a.d, a.budget, a.seed);
    cfg.sampler = sampler(t);
    cfg.fd = fd_config(t);
    cfg.nonrevisiting_budget = t.state_budget;
    let report = run_campaign(&cfg).map_err(moduli_failure)?;
    write(&a.out, &report.to_json())?;
    print!("{}", report.render_table());
    if !report.counterexamples.is_empty() {
        let path = a.certificates.clone().unwrap_or_else(|| with_suffix(&a.out, ".certificates.json"));
        return emit_certificates(path, &report.counterexamples);
    }
    if report.samples.exhausted > 0 {
        return Err(Failure::Exhausted(format!("{} of {} samples hit the sampler limit", report.samples.exhausted, a.budget)));
    }
    Ok(Outcome::Pass)
}

fn load_graph(path: &Path) -> Result<ModuliGraph> {
    ModuliGraph::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn moduli_explore(
    d: usize,
    kind: KindArg,
    budget: usize,
    seed: u64,
    facets: Option<usize>,
    out: &Path,
    cache: Option<PathBuf>,
    t: &Tuning,
) -> Result<Outcome> {
    let kind = match kind {
        KindArg::Dantzig => ModuliKind::Dantzig,
        KindArg::Polytope => ModuliKind::Polytope,
    };
    let cached = match &cache {
        Some(c) if c.exists() => Some(load_graph(c)?),
        _ => None,
    };
    let mut graph = match cached {
        Some(g) => {
            if g.kind != kind || g.dim != d {
                return Err(input("cache holds a graph of another kind or dimension"));
            }
            println!("resuming from {} nodes", g.n_nodes());
            g
        }
        None => {
            let mut g = ModuliGraph::new(kind, d);
            match kind {
                ModuliKind::Dantzig => {
                    let fig: DantzigFigure = random_dantzig(d, seed, &sampler(t)).map_err(moduli_failure)?;
                    g.add_seed(fig.polytope().clone(), Some((fig.x(), fig.y()))).map_err(moduli_failure)?;
                }
                ModuliKind::Polytope => {
                    let n = facets.unwrap_or(2 * d);
                    let p = random_simple_polytope(d, n, seed, &sampler(t)).map_err(moduli_failure)?;
                    g.add_seed(p, None).map_err(moduli_failure)?;
                }
            }
            g
        }
    };
    graph.explore(budget, seed, &fd_config(t));
    let json = graph.to_json();
    write(out, &json)?;
    if let Some(c) = &cache {
        write(c, &json)?;
    }
    let s = &graph.stats;
    println!(
        "{} nodes ({} expanded, {} in frontier), {} arcs ({} good)",
        graph.n_nodes(),
        graph.nodes.iter().filter(|n| n.expanded).count(),
        graph.frontier.len(),
        graph.arcs.len(),
        graph.n_good_arcs()
    );
    if kind == ModuliKind::Dantzig {
        println!("ordered-pair types {}", graph.ordered_type_count());
    }
    println!("deformations {} tried, {} succeeded ({} tilted)", s.fd_attempts, s.fd_successes, s.tilted_successes);
    for (k, v) in &s.failures {
        println!("  failed {k}: {v}");
    }
    println!(
        "strongly connected: {} (good arcs: {})",
        scc(&graph, ArcFilter::All).strongly_connected,
        scc(&graph, ArcFilter::GoodOnly).strongly_connected
    );
    Ok(Outcome::Pass)
}

fn moduli_scc(path: &Path, good_only: bool) -> Result<Outcome> {
    let graph = load_graph(path)?;
    let r = scc(&graph, if good_only { ArcFilter::GoodOnly } else { ArcFilter::All });
    println!("{} component(s), strongly connected: {}", r.components.len(), r.strongly_connected);
    for c in &r.components {
        let ids: Vec<String> = c.iter().map(|&i| format!("{i}:{}", graph.nodes[i].canon.short_id())).collect();
        println!("  {}", ids.join(" "));
    }
    Ok(Outcome::Pass)
}

fn moduli_verify(path: &Path) -> Result<Outcome> {
    let graph = load_graph(path)?;
    let failed: Vec<usize> = (0..graph.arcs.len()).filter(|&i| !graph.verify_arc(i)).collect();
    println!("{} arcs replayed, {} failed", graph.arcs.len(), failed.len());
    if failed.is_empty() {
        Ok(Outcome::Pass)
    } else {
        Err(Failure::Input(format!("arcs {failed:?} do not replay")))
    }
}

fn certificate_verify(file: &Path) -> Result<Outcome> {
    let text = read(file)?;
    let certs: Vec<Certificate> = if let Ok(c) = Certificate::from_json(&text) {
        vec![c]
    } else if let Ok(list) = serde_json::from_str::<Vec<Certificate>>(&text) {
        list
    } else if let Ok(report) = CampaignReport::from_json(&text) {
        report.counterexamples
    } else {
        return Err(input("not a certificate, certificate list or campaign report"));
    };
    let mut failed = 0;
    for (i, c) in certs.iter().enumerate() {
        match c.verify() {
            Ok(true) => println!("{i}: {} reproduces", c.kind_name()),
            Ok(false) => {
                failed += 1;
                println!("{i}: {} does not reproduce", c.kind_name());
            }
            Err(e) => {
                failed += 1;
                println!("{i}: {} malformed: {e}", c.kind_name());
            }
        }
    }
    println!("{} certificate(s), {} reproduced", certs.len(), certs.len() - failed);
    if failed > 0 {
        return Err(Failure::Input(format!("{failed} certificate(s) did not reproduce")));
    }
    Ok(Outcome::Pass)
}
