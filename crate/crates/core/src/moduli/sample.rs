//! Seeded random sampling of simple polytopes and Dantzig figures.

use super::ModuliError;
use crate::combinat::{find_dantzig_pairs, DantzigFigure};
use crate::exactgeom::{HPolytope, Halfspace, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Polytopes drawn before giving up.
    pub max_attempts: usize,
    /// Normals are integer vectors `z` with `(K/2)² ≤ |z|² ≤ K²`, scaled by
    /// `1/K`.
    pub coord_range: i64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { max_attempts: 10_000, coord_range: 16 }
    }
}

fn sample_normal(rng: &mut ChaCha8Rng, d: usize, k: i64) -> Vec<Rational> {
    loop {
        let z: Vec<i64> = (0..d).map(|_| rng.gen_range(-k..=k)).collect();
        let norm2: i64 = z.iter().map(|c| c * c).sum();
        if 4 * norm2 >= k * k && norm2 <= k * k {
            return z.into_iter().map(|c| Rational::new(BigInt::from(c), BigInt::from(k))).collect();
        }
    }
}

/// One draw: `n` halfspaces `a · x ≤ 1` with normals near the unit sphere.
/// `None` if the draw is unbounded, redundant or not simple.
fn draw_simple(rng: &mut ChaCha8Rng, d: usize, n: usize, cfg: &SamplerConfig) -> Option<HPolytope> {
    let one = Rational::from_integer(1.into());
    let hs: Vec<Halfspace> = (0..n).map(|_| Halfspace::new(sample_normal(rng, d, cfg.coord_range), one.clone())).collect();
    let p = HPolytope::new(d, hs).ok()?;
    p.is_simple().then_some(p)
}

fn check_params(d: usize, n: usize) -> Result<(), ModuliError> {
    if d < 3 {
        return Err(ModuliError::InvalidParameters(format!("dimension must be at least 3, got {d}")));
    }
    if n < d + 1 {
        return Err(ModuliError::InvalidParameters(format!("{n} facets cannot bound a {d}-polytope")));
    }
    Ok(())
}

pub fn random_simple_polytope(d: usize, n: usize, seed: u64, cfg: &SamplerConfig) -> Result<HPolytope, ModuliError> {
    check_params(d, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cfg.max_attempts {
        if let Some(p) = draw_simple(&mut rng, d, n, cfg) {
            return Ok(p);
        }
    }
    Err(ModuliError::SamplerExhausted { attempts: cfg.max_attempts })
}

/// Draws simple `(2d, d)` polytopes until one has a complementary vertex
/// pair; returns the first pair in vertex order. The attempt count of the
/// successful draw is returned alongside.
pub fn random_dantzig_counted(d: usize, seed: u64, cfg: &SamplerConfig) -> Result<(DantzigFigure, usize), ModuliError> {
    check_params(d, 2 * d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=cfg.max_attempts {
        let Some(p) = draw_simple(&mut rng, d, 2 * d, cfg) else {
            continue;
        };
        let pairs = find_dantzig_pairs(&p).expect("simple (2d, d) polytope");
        if let Some(&(x, y)) = pairs.first() {
            let fig = DantzigFigure::new(p, x, y).expect("complementary pair");
            return Ok((fig, attempt));
        }
    }
    Err(ModuliError::SamplerExhausted { attempts: cfg.max_attempts })
}

pub fn random_dantzig(d: usize, seed: u64, cfg: &SamplerConfig) -> Result<DantzigFigure, ModuliError> {
    random_dantzig_counted(d, seed, cfg).map(|(f, _)| f)
}

/// Derives the seed of sample `index` in a campaign seeded with `seed`
/// (SplitMix64 finalizer over both words).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::is_dantzig;

    #[test]
    fn simple_hexahedron_from_seed() {
        let p = random_simple_polytope(3, 6, 1, &SamplerConfig::default()).unwrap();
        assert!(p.is_simple());
        assert_eq!(p.n_facets(), 6);
        assert_eq!(p, random_simple_polytope(3, 6, 1, &SamplerConfig::default()).unwrap());
    }

    #[test]
    fn too_few_facets_rejected() {
        assert!(matches!(random_simple_polytope(3, 3, 0, &SamplerConfig::default()), Err(ModuliError::InvalidParameters(_))));
        assert!(matches!(random_simple_polytope(2, 4, 0, &SamplerConfig::default()), Err(ModuliError::InvalidParameters(_))));
    }

    #[test]
    fn dantzig_samples_recheck() {
        for d in [3, 4] {
            let fig = random_dantzig(d, 5, &SamplerConfig::default()).unwrap();
            assert_eq!(fig.polytope().n_facets(), 2 * d);
            assert!(is_dantzig(fig.polytope(), fig.x(), fig.y()));
        }
    }

    #[test]
    fn zero_budget_exhausts() {
        let cfg = SamplerConfig { max_attempts: 0, ..SamplerConfig::default() };
        assert_eq!(random_dantzig(3, 0, &cfg).unwrap_err(), ModuliError::SamplerExhausted { attempts: 0 });
    }

    #[test]
    #[ignore]
    fn hit_rates() {
        for d in [3, 4, 5] {
            let t = std::time::Instant::now();
            let mut total = 0;
            for s in 0..20 {
                total += random_dantzig_counted(d, s, &SamplerConfig::default()).unwrap().1;
            }
            eprintln!("d={d}: mean attempts {:.1}, {:?}", total as f64 / 20.0, t.elapsed() / 20);
        }
    }
}
