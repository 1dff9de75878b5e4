//! Self-contained counterexample certificates. Each one carries full rational
//! data and re-runs its own check.

use super::attempt::apply_tilt;
use crate::combinat::{polytope_skeleton, DantzigFigure, Skeleton};
use crate::deform::{fundamental_deformation, is_good, FdRecord};
use crate::document::{coords_to_strings, parse_coords, PolytopeDocument};
use crate::exactgeom::parse_rational;
use crate::graphalg::{check_nonrevisiting, classify_edges, count_disjoint_geodesics, hirsch_check, DEFAULT_STATE_BUDGET};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed certificate: {0}")]
pub struct CertificateError(pub String);

/// A bare graph with two marked vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeodesicSubject {
    Figure(PolytopeDocument),
    Graph(GraphDocument),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Certificate {
    /// Fewer than `threshold` vertex-disjoint geodesics between the marks.
    FewGeodesics { subject: GeodesicSubject, threshold: usize, m: usize },
    /// A deformation that is not good for the marked pair.
    NotGoodFd {
        figure: PolytopeDocument,
        facet: usize,
        step: String,
        tilt: Option<Vec<String>>,
        vanishing_edge: [Vec<String>; 2],
    },
    HirschViolation { polytope: PolytopeDocument, diameter: usize, bound: usize },
    /// No non-revisiting path between the marks.
    NonRevisitingViolation { figure: PolytopeDocument },
    /// At least three disjoint geodesics but some bad edge.
    TheoremInconsistency { figure: PolytopeDocument, m: usize, bad_edges: usize },
    /// No bad edge but a deformation that is not good.
    GoodnessInconsistency { figure: PolytopeDocument, facet: usize, step: String, tilt: Option<Vec<String>> },
}

fn err(e: impl ToString) -> CertificateError {
    CertificateError(e.to_string())
}

fn figure_of(doc: &PolytopeDocument) -> Result<DantzigFigure, CertificateError> {
    let parsed = doc.resolve().map_err(err)?;
    parsed.figure().ok_or_else(|| err("figure is missing marks or is not a Dantzig figure"))
}

/// Rebuilds the deformation stored in a certificate. The marked pair need
/// not be a Dantzig pair.
fn replay(
    figure: &PolytopeDocument,
    facet: usize,
    step: &str,
    tilt: &Option<Vec<String>>,
) -> Result<(FdRecord, usize, usize), CertificateError> {
    let parsed = figure.resolve().map_err(err)?;
    let marks = parsed.marks.ok_or_else(|| err("certificate figure has no marks"))?;
    let step = parse_rational(step).map_err(err)?;
    let (p, marks) = match tilt {
        None => (parsed.polytope, marks),
        Some(t) => {
            let delta = parse_coords(t).map_err(err)?;
            let (p, m) = apply_tilt(&parsed.polytope, Some(marks), facet, &delta)
                .ok_or_else(|| err("tilt changes the combinatorial type"))?;
            (p, m.expect("marks carried"))
        }
    };
    let fd = fundamental_deformation(&p, facet, &step).map_err(err)?;
    Ok((fd, marks.0, marks.1))
}

fn geodesic_count(subject: &GeodesicSubject) -> Result<usize, CertificateError> {
    match subject {
        GeodesicSubject::Figure(doc) => {
            let fig = figure_of(doc)?;
            count_disjoint_geodesics(&fig.skeleton(), fig.x(), fig.y()).map_err(err)
        }
        GeodesicSubject::Graph(g) => {
            if g.x >= g.vertices || g.y >= g.vertices || g.edges.iter().any(|&(a, b)| a >= g.vertices || b >= g.vertices || a == b) {
                return Err(err("graph refers to a missing vertex"));
            }
            let sk = Skeleton::from_edges(g.vertices, &g.edges);
            count_disjoint_geodesics(&sk, g.x, g.y).map_err(err)
        }
    }
}

pub fn vanishing_edge_coords(fd: &FdRecord) -> [Vec<String>; 2] {
    [coords_to_strings(&fd.v_data().point.0), coords_to_strings(&fd.w_data().point.0)]
}

impl Certificate {
    /// Re-runs the check from the serialized data alone. `Ok(true)` means the
    /// failure reproduces.
    pub fn verify(&self) -> Result<bool, CertificateError> {
        match self {
            Certificate::FewGeodesics { subject, threshold, m } => {
                let found = geodesic_count(subject)?;
                Ok(found == *m && found < *threshold)
            }
            Certificate::NotGoodFd { figure, facet, step, tilt, vanishing_edge } => {
                let (fd, x, y) = replay(figure, *facet, step, tilt)?;
                Ok(vanishing_edge_coords(&fd) == *vanishing_edge && !is_good(&fd, x, y).map_err(err)?)
            }
            Certificate::HirschViolation { polytope, diameter, bound } => {
                let p = polytope.resolve().map_err(err)?.polytope;
                let h = hirsch_check(&p).map_err(err)?;
                Ok(h.diameter == *diameter && h.bound == *bound && !h.holds())
            }
            Certificate::NonRevisitingViolation { figure } => {
                let parsed = figure.resolve().map_err(err)?;
                let (x, y) = parsed.marks.ok_or_else(|| err("certificate figure has no marks"))?;
                let ok = check_nonrevisiting(&parsed.polytope, x, y, DEFAULT_STATE_BUDGET).map_err(err)?;
                Ok(!ok)
            }
            Certificate::TheoremInconsistency { figure, m, bad_edges } => {
                let fig = figure_of(figure)?;
                let g = polytope_skeleton(fig.polytope()).map_err(err)?;
                let found_m = count_disjoint_geodesics(&g, fig.x(), fig.y()).map_err(err)?;
                let found_bad = classify_edges(&fig).n_bad();
                Ok(found_m == *m && found_bad == *bad_edges && found_m >= 3 && found_bad > 0)
            }
            Certificate::GoodnessInconsistency { figure, facet, step, tilt } => {
                let fig = figure_of(figure)?;
                if classify_edges(&fig).n_bad() > 0 {
                    return Ok(false);
                }
                let (fd, x, y) = replay(figure, *facet, step, tilt)?;
                Ok(!is_good(&fd, x, y).map_err(err)?)
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::FewGeodesics { .. } => "few-geodesics",
            Certificate::NotGoodFd { .. } => "not-good-fd",
            Certificate::HirschViolation { .. } => "hirsch-violation",
            Certificate::NonRevisitingViolation { .. } => "non-revisiting-violation",
            Certificate::TheoremInconsistency { .. } => "theorem-inconsistency",
            Certificate::GoodnessInconsistency { .. } => "goodness-inconsistency",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(text).map_err(err)
    }
}
