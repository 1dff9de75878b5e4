//! JSON documents for polytopes. Rationals travel as strings (`"p/q"` or an
//! integer), never as floats.
//!
//! ```json
//! {
//!   "format": "polydeform/polytope",
//!   "version": 1,
//!   "dim": 3,
//!   "halfspaces": [ { "normal": ["-1", "0", "0"], "offset": "0" }, ... ],
//!   "marks": { "x": ["0", "0", "0"], "y": ["1", "1", "1"] }
//! }
//! ```
//!
//! `marks` is optional; marks name vertices by exact coordinates.

use crate::combinat::DantzigFigure;
use crate::exactgeom::{format_rational, parse_rational, GeomError, HPolytope, Halfspace, Point, Rational};
use serde::{Deserialize, Serialize};

pub const POLYTOPE_FORMAT: &str = "polydeform/polytope";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid polytope: {0}")]
    Invalid(#[from] GeomError),
    #[error("mark {0} is not a vertex of the polytope")]
    MarkNotVertex(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceDoc {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarksDoc {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub format: String,
    pub version: u32,
    pub dim: usize,
    pub halfspaces: Vec<HalfspaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks: Option<MarksDoc>,
}

/// A parsed document: the validated polytope and, if present, the vertex
/// indices of the marks.
#[derive(Debug, Clone)]
pub struct ParsedPolytope {
    pub polytope: HPolytope,
    pub marks: Option<(usize, usize)>,
}

impl ParsedPolytope {
    pub fn figure(&self) -> Option<DantzigFigure> {
        let (x, y) = self.marks?;
        DantzigFigure::new(self.polytope.clone(), x, y).ok()
    }
}

pub fn coords_to_strings(c: &[Rational]) -> Vec<String> {
    c.iter().map(format_rational).collect()
}

pub fn parse_coords(items: &[String]) -> Result<Vec<Rational>, DocumentError> {
    items.iter().map(|s| parse_rational(s).map_err(|e| DocumentError::Parse(e.to_string()))).collect()
}

/// Parses a comma separated coordinate list such as `"0,1/2,1"`.
pub fn parse_point_list(text: &str) -> Result<Point, DocumentError> {
    let items: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    parse_coords(&items).map(Point)
}

impl PolytopeDocument {
    pub fn from_polytope(p: &HPolytope, marks: Option<(usize, usize)>) -> Self {
        let halfspaces = p
            .halfspaces()
            .iter()
            .map(|h| HalfspaceDoc { normal: coords_to_strings(&h.normal), offset: format_rational(&h.offset) })
            .collect();
        let marks = marks.map(|(x, y)| MarksDoc {
            x: coords_to_strings(&p.vertices()[x].point.0),
            y: coords_to_strings(&p.vertices()[y].point.0),
        });
        PolytopeDocument { format: POLYTOPE_FORMAT.into(), version: FORMAT_VERSION, dim: p.dim(), halfspaces, marks }
    }

    pub fn from_figure(fig: &DantzigFigure) -> Self {
        Self::from_polytope(fig.polytope(), Some((fig.x(), fig.y())))
    }

    pub fn resolve(&self) -> Result<ParsedPolytope, DocumentError> {
        if self.format != POLYTOPE_FORMAT {
            return Err(DocumentError::Parse(format!("unknown format {:?}", self.format)));
        }
        if self.version != FORMAT_VERSION {
            return Err(DocumentError::Parse(format!("unsupported version {}", self.version)));
        }
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Ok(Halfspace::new(parse_coords(&h.normal)?, parse_rational(&h.offset).map_err(|e| DocumentError::Parse(e.to_string()))?)))
            .collect::<Result<Vec<_>, DocumentError>>()?;
        let polytope = HPolytope::new(self.dim, hs)?;
        let marks = match &self.marks {
            None => None,
            Some(m) => {
                let x = polytope.vertex_index(&Point(parse_coords(&m.x)?)).ok_or(DocumentError::MarkNotVertex("x"))?;
                let y = polytope.vertex_index(&Point(parse_coords(&m.y)?)).ok_or(DocumentError::MarkNotVertex("y"))?;
                Some((x, y))
            }
        };
        Ok(ParsedPolytope { polytope, marks })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn parse_polytope(text: &str) -> Result<ParsedPolytope, DocumentError> {
    let doc: PolytopeDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
    doc.resolve()
}

pub fn serialize_polytope(p: &HPolytope, marks: Option<(usize, usize)>) -> String {
    PolytopeDocument::from_polytope(p, marks).to_json()
}
