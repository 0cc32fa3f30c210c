//! Sampling the compact family `X_{q,δ,ρ}` of patches whose angles are all at least `δ` and
//! whose radii are all at least `ρ`, tracking the smallest `č_n`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::params::{params_from_patch, patch_from_params, PatchParams};
use super::{c_doubleprime, constants};
use crate::error::{Error, Result};
use crate::geometry::{Point, TrianglePatch};
use crate::scalar::{Rational, Scalar};

const MAX_ATTEMPTS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub q: usize,
    pub delta: f64,
    pub rho: f64,
    pub samples: usize,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub index: usize,
    /// Deterministic boundary candidate rather than a random draw.
    pub boundary: bool,
    pub params: PatchParams,
    pub c_prime: f64,
    pub c_doubleprime: f64,
    pub c_check: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
    pub min_c_check: f64,
    pub argmin: PatchParams,
}

/// Every ratio of consecutive radii lies in `[sin δ, 1/sin δ]`, so around the ring the radii stay
/// within this factor of the smallest one.
pub fn radius_bound(delta: f64, q: usize) -> f64 {
    delta.sin().recip().powi((q / 2) as i32)
}

fn check_family(cfg: &SweepConfig) -> Result<()> {
    let (q, delta) = (cfg.q as f64, cfg.delta);
    let empty = |msg: String| Err(Error::EmptyFamily(msg));
    if cfg.q < 3 {
        return empty(format!("q = {} < 3", cfg.q));
    }
    if delta.is_nan() || delta <= 0.0 || delta > PI / 3.0 + 1e-15 || cfg.rho.is_nan() || cfg.rho <= 0.0 {
        return empty(format!("need 0 < δ ≤ π/3 and ρ > 0, got δ = {delta}, ρ = {}", cfg.rho));
    }
    // every angle at z lies in [δ, π - 2δ]
    if q * delta > 2.0 * PI + 1e-12 || q * (PI - 2.0 * delta) < 2.0 * PI - 1e-12 {
        return empty(format!("no {q}-fan has all angles ≥ {delta}"));
    }
    if cfg.n == 0 {
        return Err(Error::InvalidDegree(0, "the projection target P_{n-1} must be nonzero"));
    }
    Ok(())
}

/// Radii range for `ring[i]` given `ring[i-1]` at distance `prev` and angle `alpha` at `z`, such
/// that both remaining angles are at least `delta`.
fn radius_window(prev: f64, alpha: f64, delta: f64) -> (f64, f64) {
    let s = delta.sin() / (alpha + delta).sin();
    (prev * s, prev / s)
}

/// Sector angles uniform on `{α_i ≥ δ, Σ α_i = 2π}`, then radii drawn log-uniformly inside the
/// windows that keep the other angles at least `δ`, closing the ring by rejection.
fn draw(rng: &mut ChaCha8Rng, cfg: &SweepConfig) -> Option<PatchParams> {
    let q = cfg.q;
    let delta = cfg.delta;
    for _ in 0..MAX_ATTEMPTS {
        let weights: Vec<f64> = (0..q).map(|_| -rng.gen::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
        let total: f64 = weights.iter().sum();
        let spare = 2.0 * PI - q as f64 * delta;
        let alpha: Vec<f64> = weights.iter().map(|w| delta + spare * w / total).collect();
        if alpha.iter().any(|a| *a > PI - 2.0 * delta) {
            continue;
        }
        let mut radii = vec![1.0];
        for a in &alpha[1..q - 1] {
            let (lo, hi) = radius_window(*radii.last().expect("nonempty"), *a, delta);
            radii.push(log_uniform(rng, lo, hi));
        }
        // last radius must fit both its own triangle and the closing one
        let (lo1, hi1) = radius_window(radii[q - 2], alpha[q - 1], delta);
        let (lo2, hi2) = radius_window(radii[0], alpha[0], delta);
        let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
        if lo > hi {
            continue;
        }
        radii.push(log_uniform(rng, lo, hi));
        if let Some(pp) = finish(&alpha, &radii, cfg) {
            return Some(pp);
        }
    }
    None
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return lo;
    }
    (lo.ln() + rng.gen::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// Scales the radii so the smallest is `ρ`, builds the patch and re-reads all angles from it.
fn finish(alpha: &[f64], radii: &[f64], cfg: &SweepConfig) -> Option<PatchParams> {
    let rmin = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let mut theta = 0.0;
    let q = alpha.len();
    let ring: Vec<Point<f64>> = (0..q)
        .map(|i| {
            theta += alpha[i];
            let r = radii[i] * cfg.rho / rmin;
            if i + 1 == q { Point::new(r, 0.0) } else { Point::new(r * theta.cos(), r * theta.sin()) }
        })
        .collect();
    let pp = params_from_patch(&TrianglePatch::new(Point::origin(), ring)).ok()?;
    (pp.min_angle() >= cfg.delta - 1e-12).then_some(pp)
}

/// The regular fan plus fans with one sector pushed to `δ` or to `π - 2δ`.
fn boundary_candidates(cfg: &SweepConfig) -> Vec<PatchParams> {
    let q = cfg.q;
    let delta = cfg.delta;
    let radii = vec![1.0; q];
    let mut out = Vec::new();
    let mut push = |alpha: Vec<f64>| {
        if let Some(pp) = finish(&alpha, &radii, cfg) {
            if !out.contains(&pp) {
                out.push(pp);
            }
        }
    };
    push(vec![2.0 * PI / q as f64; q]);
    for extreme in [delta, PI - 2.0 * delta] {
        let rest = (2.0 * PI - extreme) / (q - 1) as f64;
        for j in 0..q {
            let mut alpha = vec![rest; q];
            alpha[j] = extreme;
            push(alpha);
        }
    }
    out
}

fn lift<T: Scalar>(patch: &TrianglePatch<f64>) -> TrianglePatch<T> {
    let conv = |v: f64| T::from_rational(&Rational::from_float(v).expect("finite coordinate"));
    TrianglePatch::new(
        Point::new(conv(patch.z.x), conv(patch.z.y)),
        patch.ring.iter().map(|p| Point::new(conv(p.x), conv(p.y))).collect(),
    )
}

/// Evaluates `boundary candidates + cfg.samples` random patches of `X_{q,δ,ρ}` in parallel.
/// Sample `i` draws from its own ChaCha8 stream, so results do not depend on the thread count.
/// Float coordinates are lifted exactly into the backend `T`.
pub fn sweep_x<T: Scalar>(cfg: &SweepConfig) -> Result<SweepResult> {
    check_family(cfg)?;
    let boundary = boundary_candidates(cfg);
    let nb = boundary.len();
    let cpp = c_doubleprime(cfg.n);
    let rows: Vec<Option<SweepRow>> = (0..nb + cfg.samples)
        .into_par_iter()
        .map(|index| {
            let params = if index < nb {
                boundary[index].clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(index as u64);
                draw(&mut rng, cfg)?
            };
            let patch = lift::<T>(&patch_from_params(&params).ok()?);
            let report = constants(&patch, cfg.n).ok()?;
            Some(SweepRow {
                index,
                boundary: index < nb,
                params,
                c_prime: report.c_prime,
                c_doubleprime: cpp,
                c_check: report.c_check,
            })
        })
        .collect();
    let rows: Vec<SweepRow> = rows.into_iter().flatten().collect();
    let best = rows
        .iter()
        .min_by(|a, b| a.c_check.total_cmp(&b.c_check))
        .ok_or_else(|| Error::EmptyFamily("no admissible patch was sampled".into()))?;
    Ok(SweepResult {
        config: cfg.clone(),
        min_c_check: best.c_check,
        argmin: best.params.clone(),
        rows,
    })
}
