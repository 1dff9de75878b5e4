//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::{brute_geodesics, brute_max_disjoint, graph_corpus};
use polydeform::combinat::{polytope_skeleton, DantzigFigure};
use polydeform::deform::{deform_path, EdgePath, FdRecord};
use polydeform::exactgeom::{shapes, HPolytope};
use polydeform::graphalg::{check_hirsch, classify_edges, count_disjoint_geodesics, diameter, dist, geodesic_dag, hirsch_check};
use polydeform::moduli::{
    attempt_all, derive_seed, random_dantzig, random_simple_polytope, CampaignReport, FdConfig, FdSuccess,
    SamplerConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

type Verdict = Result<String, String>;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polydeform"));
    for var in ["POLYDEFORM_TILT_RETRIES", "POLYDEFORM_RANDOM_TILTS", "POLYDEFORM_SAMPLER_ATTEMPTS", "POLYDEFORM_STATE_BUDGET"] {
        c.env_remove(var);
    }
    c
}

struct Run {
    code: i32,
    elapsed: Duration,
    bytes: Vec<u8>,
    report: CampaignReport,
    out: PathBuf,
}

fn campaign(dir: &Path, kind: &str, d: usize, budget: usize, seed: u64, tag: &str) -> Result<Run, String> {
    let out = dir.join(format!("{kind}-d{d}-{tag}.json"));
    let start = Instant::now();
    let o = bin()
        .args(["campaign", kind, "--d", &d.to_string(), "--budget", &budget.to_string(), "--seed", &seed.to_string()])
        .arg("--out")
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let code = o.status.code().unwrap_or(-1);
    let bytes = std::fs::read(&out).map_err(|e| format!("{kind} d={d}: no report ({e}), exit {code}"))?;
    let report = CampaignReport::from_json(&String::from_utf8_lossy(&bytes)).map_err(|e| e.to_string())?;
    Ok(Run { code, elapsed, bytes, report, out })
}

/// Successful deformations of sampled Dantzig figures, tilted ones included.
fn successes(d: usize, figures: usize, seed: u64) -> Vec<(DantzigFigure, FdSuccess)> {
    let cfg = SamplerConfig::default();
    let mut out = Vec::new();
    for i in 0..figures as u64 {
        let fig = random_dantzig(d, derive_seed(seed, i), &cfg).unwrap();
        let marks = Some((fig.x(), fig.y()));
        for a in attempt_all(fig.polytope(), marks, &FdConfig::default(), derive_seed(seed ^ 1, i)) {
            if let Ok(s) = a.outcome {
                out.push((fig.clone(), s));
            }
        }
    }
    out
}

fn fd_pool() -> Vec<(DantzigFigure, FdSuccess)> {
    let mut pool = successes(3, 120, 31);
    pool.extend(successes(4, 120, 41));
    pool
}

fn c2_cube() -> Verdict {
    let cube = shapes::unit_cube(3);
    let g = polytope_skeleton(&cube).map_err(|e| e.to_string())?;
    let far = cube.vertices().len() - 1;
    let fig = DantzigFigure::new(cube.clone(), 0, far).map_err(|e| e.to_string())?;
    let h = hirsch_check(&cube).map_err(|e| e.to_string())?;
    let m = count_disjoint_geodesics(&g, 0, far).map_err(|e| e.to_string())?;
    let brute = brute_max_disjoint(&brute_geodesics(&g, 0, far));
    let bad = classify_edges(&fig).n_bad();
    let got = (
        diameter(&g).map_err(|e| e.to_string())?,
        dist(&g, 0, far).map_err(|e| e.to_string())?,
        m,
        brute,
        bad,
        h.diameter,
        h.bound,
        h.holds(),
    );
    if got == (3, 3, 3, 3, 0, 3, 3, true) {
        Ok("diameter 3, dist 3, m 3 (oracle 3), 0 bad edges, 3 = 6 - 3".into())
    } else {
        Err(format!("got {got:?}"))
    }
}

fn geodesic_sample(rec: &FdRecord, rng: &mut ChaCha8Rng) -> Vec<EdgePath> {
    let g = &rec.source_skeleton;
    let n = g.n_vertices();
    let mut paths = Vec::new();
    for _ in 0..3 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if let Ok(dag) = geodesic_dag(g, a, b) {
            paths.extend(dag.paths().into_iter().take(4).map(EdgePath));
        }
    }
    for _ in 0..3 {
        let mut walk = vec![rng.gen_range(0..n)];
        for _ in 0..rng.gen_range(1..10) {
            let nb = g.neighbors(*walk.last().unwrap());
            walk.push(nb[rng.gen_range(0..nb.len())]);
        }
        paths.push(EdgePath(walk));
    }
    paths
}

fn c3_paths(pool: &[(DantzigFigure, FdSuccess)]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut ok, mut refused, mut violations) = (0usize, 0usize, Vec::new());
    for (_, s) in pool {
        let rec = &s.record;
        let (v, w) = rec.vanishing_edge();
        for p in geodesic_sample(rec, &mut rng) {
            match deform_path(&p, rec) {
                Ok(q) => {
                    ok += 1;
                    let ends = q.first() == rec.persisted(p.first().unwrap()) && q.last() == rec.persisted(p.last().unwrap());
                    if q.len() > p.len() || !q.is_valid_in(&rec.result_skeleton) || !ends {
                        violations.push(format!("{:?} -> {:?}", p.0, q.0));
                    }
                }
                Err(e) => {
                    refused += 1;
                    if !p.0.contains(&v) && !p.0.contains(&w) {
                        violations.push(format!("{:?} refused: {e}", p.0));
                    }
                }
            }
        }
    }
    let detail = format!("{ok} triples deformed, {refused} refused at the vanishing edge, {} violations", violations.len());
    if ok >= 500 && violations.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {:?}", violations.first()))
    }
}

/// Bookkeeping from first principles: result vertices whose tight sets are
/// new to the source form the ridge.
fn bookkeeping_error(rec: &FdRecord) -> Option<String> {
    let d = rec.dim();
    let src: &HPolytope = &rec.source;
    let res = &rec.result;
    if res.n_facets() != src.n_facets() {
        return Some("facet count changed".into());
    }
    if !res.is_simple() || res.vertices().iter().any(|u| u.tight.len() != d) {
        return Some("result not simple".into());
    }
    if res.vertices().len() + 3 != src.vertices().len() + d {
        return Some(format!("{} -> {} vertices", src.vertices().len(), res.vertices().len()));
    }
    let old: BTreeSet<u64> = src.vertices().iter().map(|u| u.tight.bits()).collect();
    let new: Vec<usize> = (0..res.vertices().len()).filter(|&i| !old.contains(&res.vertices()[i].tight.bits())).collect();
    let g = polytope_skeleton(res).ok()?;
    if new.len() != d - 1 {
        return Some(format!("{} new vertices", new.len()));
    }
    for (k, &a) in new.iter().enumerate() {
        if !res.vertices()[a].tight.contains(rec.facet) {
            return Some("new vertex off the moved facet".into());
        }
        if new[k + 1..].iter().any(|&b| !g.has_edge(a, b)) {
            return Some("new vertices not pairwise adjacent".into());
        }
    }
    None
}

fn c4_bookkeeping(pool: &[(DantzigFigure, FdSuccess)]) -> Verdict {
    let errors: Vec<String> = pool.iter().filter_map(|(_, s)| bookkeeping_error(&s.record)).collect();
    let by_dim = |d| pool.iter().filter(|(f, _)| f.dim() == d).count();
    let detail = format!("{} FDs ({} at d=3, {} at d=4), {} violations", pool.len(), by_dim(3), by_dim(4), errors.len());
    if pool.len() >= 500 && errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {:?}", errors.first()))
    }
}

fn c5_consistency(runs: &[&Run]) -> Verdict {
    let mut figures = 0;
    let mut violations = 0;
    for r in runs {
        violations += r.report.totals.consistency_violations;
        for t in &r.report.types {
            figures += t.samples;
            if (t.m >= 3 && t.bad_edges > 0) || (t.bad_edges == 0 && t.fd_good < t.fd_succeeded) {
                violations += 1;
            }
        }
    }
    let detail = format!("{} campaigns, {figures} figures, {violations} violations", runs.len());
    if violations == 0 && figures > 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c6_hirsch_kept(pool: &[(DantzigFigure, FdSuccess)]) -> Verdict {
    let (mut checked, mut bad) = (0, 0);
    for (_, s) in pool.iter().filter(|(_, s)| s.good) {
        if check_hirsch(&s.subject).map_err(|e| e.to_string())? {
            checked += 1;
            if !check_hirsch(&s.record.result).map_err(|e| e.to_string())? {
                bad += 1;
            }
        }
    }
    let detail = format!("{checked} good FDs from Hirsch sources, {bad} results violate");
    if checked >= 200 && bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c7_four_dim(run: &Run) -> Verdict {
    let r = &run.report;
    let typed = r.types.len() == r.distinct_types && r.types.iter().all(|t| t.vertices > 0 && t.m > 0);
    if !typed {
        return Err("per-type summaries missing".into());
    }
    let outcome = if r.counterexamples.is_empty() {
        if run.code != 0 {
            return Err(format!("exit {} without counterexamples", run.code));
        }
        "no counterexample".to_string()
    } else {
        let certs = PathBuf::from(format!("{}.certificates.json", run.out.display()));
        let o = bin().arg("certificate").arg("verify").arg(&certs).output().map_err(|e| e.to_string())?;
        if run.code != 1 || o.status.code() != Some(0) {
            return Err("certificates did not re-verify".into());
        }
        format!("{} certificate(s) re-verified", r.counterexamples.len())
    };
    let ms: BTreeSet<usize> = r.types.iter().map(|t| t.m).collect();
    let detail = format!(
        "{} samples, {} (8,4) types, m values {:?}, {outcome}, {:.1}s",
        r.samples.valid,
        r.distinct_types,
        ms,
        run.elapsed.as_secs_f64()
    );
    if run.elapsed < Duration::from_secs(15 * 60) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c8_oracle() -> Verdict {
    let corpus: Vec<_> = graph_corpus().into_iter().filter(|(_, g, _, _)| g.n_vertices() <= 12).collect();
    for needed in ["cube ", "prism ", "domino"] {
        if !corpus.iter().any(|(n, ..)| n.starts_with(needed)) {
            return Err(format!("corpus lacks {needed}"));
        }
    }
    let mismatches: Vec<&String> = corpus
        .iter()
        .filter(|(_, g, x, y)| count_disjoint_geodesics(g, *x, *y).ok() != Some(brute_max_disjoint(&brute_geodesics(g, *x, *y))))
        .map(|(n, ..)| n)
        .collect();
    let detail = format!("{} graphs, {} mismatches", corpus.len(), mismatches.len());
    if corpus.len() >= 50 && mismatches.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {mismatches:?}"))
    }
}

fn c9_hirsch(runs: &[&Run]) -> Verdict {
    let mut polytopes = 0;
    let mut violations = 0;
    for r in runs {
        polytopes += r.report.samples.valid;
        violations += r.report.totals.hirsch_violations;
        violations += r.report.types.iter().filter(|t| t.diameter > t.hirsch_bound).count();
    }
    let cfg = SamplerConfig::default();
    for d in 3..=5usize {
        for n in d + 1..=2 * d + 1 {
            for s in 0..6 {
                let p = random_simple_polytope(d, n, derive_seed(99, (d * 100 + n * 10 + s) as u64), &cfg).map_err(|e| e.to_string())?;
                polytopes += 1;
                if !check_hirsch(&p).map_err(|e| e.to_string())? {
                    violations += 1;
                }
            }
        }
    }
    let detail = format!("{polytopes} polytopes with d <= 5, {violations} violations");
    if violations == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c10_determinism(dir: &Path, first: &[&Run]) -> Verdict {
    for r in first {
        let kind = r.report.campaign.name();
        let again = campaign(dir, kind, r.report.dim, r.report.budget, r.report.seed, "repeat")?;
        if again.bytes != r.bytes {
            return Err(format!("{kind} d={} differs on repeat", r.report.dim));
        }
    }
    Ok(format!("{} campaigns repeated byte for byte", first.len()))
}

fn main() {
    let dir = tempfile::TempDir::new().unwrap();
    let dir = dir.path();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, v: std::thread::Result<Verdict>| {
        let v = v.unwrap_or_else(|_| Err("panicked".into()));
        match &v {
            Ok(d) => println!("criterion {n:>2} PASS  {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {d}");
            }
        }
    };

    let geo3 = campaign(dir, "3geodesic", 3, 200, 0, "a");
    let sd3 = campaign(dir, "strong-dantzig", 3, 200, 0, "a");
    let c1 = match (&geo3, &sd3) {
        (Ok(a), Ok(b)) => {
            let clean = a.code == 0 && b.code == 0 && a.report.counterexamples.is_empty() && b.report.counterexamples.is_empty();
            let total = a.elapsed + b.elapsed;
            let detail = format!(
                "{} and {} types, saturation {:?} / {:?}, {:.1}s",
                a.report.distinct_types,
                b.report.distinct_types,
                a.report.saturation,
                b.report.saturation,
                total.as_secs_f64()
            );
            if clean && !a.report.saturation.is_empty() && total < Duration::from_secs(120) {
                Ok(detail)
            } else {
                Err(format!("exit {} / {}; {detail}", a.code, b.code))
            }
        }
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    report(1, "d=3 sweep", Ok(c1));
    report(2, "cube ground truth", catch_unwind(c2_cube));

    let pool = catch_unwind(fd_pool).unwrap_or_default();
    report(3, "path deformation", catch_unwind(AssertUnwindSafe(|| c3_paths(&pool))));
    report(4, "FD bookkeeping", catch_unwind(AssertUnwindSafe(|| c4_bookkeeping(&pool))));

    let geo4 = campaign(dir, "3geodesic", 4, 1000, 1, "a");
    let geo5 = campaign(dir, "3geodesic", 5, 30, 2, "a");
    let runs: Vec<&Run> = [&geo3, &sd3, &geo4, &geo5].into_iter().filter_map(|r| r.as_ref().ok()).collect();
    let all_ran = runs.len() == 4;

    report(5, "theorem consistency", catch_unwind(AssertUnwindSafe(|| {
        c5_consistency(&runs).and_then(|d| if all_ran { Ok(d) } else { Err("a campaign failed to run".into()) })
    })));
    report(6, "good FDs keep Hirsch", catch_unwind(AssertUnwindSafe(|| c6_hirsch_kept(&pool))));
    report(7, "d=4 campaign", Ok(geo4.as_ref().map_err(|e| e.clone()).and_then(c7_four_dim)));
    report(8, "oracle equivalence", catch_unwind(c8_oracle));
    report(9, "Hirsch up to d=5", catch_unwind(AssertUnwindSafe(|| {
        c9_hirsch(&runs).and_then(|d| if all_ran { Ok(d) } else { Err("a campaign failed to run".into()) })
    })));
    let repeat: Vec<&Run> = [&geo3, &sd3, &geo5].into_iter().filter_map(|r| r.as_ref().ok()).collect();
    report(10, "determinism", catch_unwind(AssertUnwindSafe(|| c10_determinism(dir, &repeat))));

    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria pass");
}
