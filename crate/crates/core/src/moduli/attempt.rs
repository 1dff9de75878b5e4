//! Attempting a fundamental deformation on one facet, re-tilting the facet
//! normal when the motion is non-generic.

use super::sample::derive_seed;
use crate::combinat::{canonical_form, incidence, Canon, DantzigFigure, Marks};
use crate::deform::{
    fd_of_dantzig, first_crossings, fundamental_deformation, goodness_for_all_pairs, is_good, tilt_facet, tilt_palette,
    tilted_halfspace, DeformError, FdRecord, NonGeneric,
};
use crate::exactgeom::{FacetSet, HPolytope, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdConfig {
    /// Parallel motion speed. Only rescales the parameter; the result type
    /// does not depend on it.
    pub step: Rational,
    /// Entries of [`tilt_palette`] tried after a non-generic attempt.
    pub tilt_retries: usize,
    /// Further seeded random tilts tried after the palette.
    pub random_tilts: usize,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { step: Rational::from_integer(1.into()), tilt_retries: 4, random_tilts: 2 }
    }
}

/// A successful deformation with its goodness verdict and target type.
#[derive(Debug, Clone)]
pub struct FdSuccess {
    pub record: FdRecord,
    /// Result figure carrying the marks, for Dantzig subjects.
    pub figure: Option<DantzigFigure>,
    /// The subject the deformation was applied to (the tilted copy if a tilt
    /// was needed).
    pub subject: HPolytope,
    pub subject_marks: Option<(usize, usize)>,
    pub good: bool,
    pub target: Canon,
}

#[derive(Debug, Clone)]
pub struct FdAttempt {
    pub facet: usize,
    pub tilt: Option<Vec<Rational>>,
    pub outcome: Result<FdSuccess, DeformError>,
}

/// Stable short name of a deformation failure, for tallies.
pub fn failure_kind(e: &DeformError) -> &'static str {
    match e {
        DeformError::DimensionTooLow(_) => "dimension-too-low",
        DeformError::FacetOutOfRange { .. } => "facet-out-of-range",
        DeformError::NonPositiveStep => "non-positive-step",
        DeformError::NotSimple => "not-simple",
        DeformError::NoCrossing(_) => "no-crossing",
        DeformError::NonGeneric(_) => "non-generic",
        DeformError::Degenerate(_) => "degenerate",
        DeformError::ProtectedVertex(_) => "protected-vertex",
        DeformError::NotDantzigAfter => "not-dantzig-after",
        DeformError::ShapeMismatch(_) => "shape-mismatch",
        DeformError::Undeformable => "undeformable",
        DeformError::EndpointLost => "endpoint-lost",
        DeformError::InvalidPath => "invalid-path",
        DeformError::PairOnVanishingEdge => "pair-on-vanishing-edge",
    }
}

fn tight_profile(p: &HPolytope) -> Vec<FacetSet> {
    let mut t: Vec<FacetSet> = p.vertices().iter().map(|v| v.tight).collect();
    t.sort();
    t
}

/// Tilt `facet` of `p` by `delta` and keep it only if every vertex keeps its
/// tight set. Marks are carried by tight set.
pub fn apply_tilt(
    p: &HPolytope,
    marks: Option<(usize, usize)>,
    facet: usize,
    delta: &[Rational],
) -> Option<(HPolytope, Option<(usize, usize)>)> {
    let tilted = tilt_facet(p, facet, delta).ok()?;
    if !tilted.is_simple() || tight_profile(&tilted) != tight_profile(p) {
        return None;
    }
    let marks = match marks {
        None => None,
        Some((x, y)) => Some((
            tilted.vertex_with_tight(p.vertices()[x].tight)?,
            tilted.vertex_with_tight(p.vertices()[y].tight)?,
        )),
    };
    Some((tilted, marks))
}

fn random_tilt(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d)
        .map(|_| Rational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(97 * 64)))
        .collect()
}

fn deform_once(p: &HPolytope, marks: Option<(usize, usize)>, facet: usize, cfg: &FdConfig) -> Result<FdSuccess, DeformError> {
    match marks {
        Some((x, y)) => {
            let fig = DantzigFigure::new(p.clone(), x, y).map_err(|e| DeformError::Degenerate(e.to_string()))?;
            let dfd = fd_of_dantzig(&fig, facet, &cfg.step)?;
            let good = is_good(&dfd.record, x, y)?;
            let target = dfd.figure.canon();
            Ok(FdSuccess { record: dfd.record, figure: Some(dfd.figure), subject: p.clone(), subject_marks: marks, good, target })
        }
        None => {
            let record = fundamental_deformation(p, facet, &cfg.step)?;
            let good = goodness_for_all_pairs(&record);
            let target = canonical_form(&incidence(&record.result).expect("result is simple"), Marks::None);
            Ok(FdSuccess { record, figure: None, subject: p.clone(), subject_marks: None, good, target })
        }
    }
}

/// Deforms `facet` of `p`, retrying with tilts while the motion is
/// non-generic. `seed` drives the random tilts.
pub fn attempt_facet(p: &HPolytope, marks: Option<(usize, usize)>, facet: usize, cfg: &FdConfig, seed: u64) -> FdAttempt {
    let first = deform_once(p, marks, facet, cfg);
    let Err(DeformError::NonGeneric(why)) = &first else {
        return FdAttempt { facet, tilt: None, outcome: first };
    };
    // A non-unique companion depends only on which vertex is crossed first,
    // and vertices off the facet stay put under a tilt. Tilts that keep the
    // same first vertex would fail the same way.
    let crossed = match why {
        NonGeneric::CompanionNotUnique(_) => Some(first_crossings(p, facet, &p.halfspaces()[facet])),
        NonGeneric::SimultaneousCrossing(_) => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, facet as u64));
    let d = p.dim();
    let mut tilts = tilt_palette(d, cfg.tilt_retries);
    tilts.extend((0..cfg.random_tilts).map(|_| random_tilt(&mut rng, d)));
    let mut last = first;
    for delta in tilts {
        if let Some(before) = &crossed {
            match tilted_halfspace(p, facet, &delta) {
                Ok(h) if first_crossings(p, facet, &h) != *before => {}
                _ => continue,
            }
        }
        let Some((tilted, tmarks)) = apply_tilt(p, marks, facet, &delta) else {
            continue;
        };
        let out = deform_once(&tilted, tmarks, facet, cfg);
        if matches!(out, Err(DeformError::NonGeneric(_))) {
            last = out;
            continue;
        }
        return FdAttempt { facet, tilt: Some(delta), outcome: out };
    }
    FdAttempt { facet, tilt: None, outcome: last }
}

/// Attempts every facet in order.
pub fn attempt_all(p: &HPolytope, marks: Option<(usize, usize)>, cfg: &FdConfig, seed: u64) -> Vec<FdAttempt> {
    (0..p.n_facets()).map(|f| attempt_facet(p, marks, f, cfg, seed)).collect()
}
