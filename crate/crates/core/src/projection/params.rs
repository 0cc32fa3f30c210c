//! Angle/radius parametrization of a patch around `z = 0`.
//!
//! Triangle `i` has angle `alpha[i]` at `z`, `beta[i]` at `ring[i-1]` and `gamma[i]` at
//! `ring[i]`; `radii[i] = |ring[i] - z|`. The sine rule ties them together:
//! `sin beta[i] / radii[i] = sin gamma[i] / radii[i-1]`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{validate_patch, Point, TrianglePatch};
use crate::scalar::Scalar;

const PARAM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchParams {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub radii: Vec<f64>,
}

impl PatchParams {
    pub fn q(&self) -> usize {
        self.alpha.len()
    }

    /// Smallest of all the angles.
    pub fn min_angle(&self) -> f64 {
        self.alpha.iter().chain(&self.beta).chain(&self.gamma).copied().fold(f64::INFINITY, f64::min)
    }

    pub fn check(&self) -> Result<()> {
        let q = self.q();
        let bad = |msg: String| Err(Error::InconsistentParams(msg));
        if q < 3 {
            return bad(format!("need at least 3 triangles, got {q}"));
        }
        if [self.beta.len(), self.gamma.len(), self.radii.len()].iter().any(|&l| l != q) {
            return bad("angle and radius lists differ in length".into());
        }
        if self.min_angle() <= 0.0 || self.radii.iter().any(|r| *r <= 0.0 || !r.is_finite()) {
            return bad("angles and radii must be positive".into());
        }
        let total: f64 = self.alpha.iter().sum();
        if (total - 2.0 * PI).abs() > PARAM_TOL {
            return bad(format!("angles at z sum to {total}, not 2π"));
        }
        let rmax = self.radii.iter().copied().fold(0.0, f64::max);
        for i in 0..q {
            let sum = self.alpha[i] + self.beta[i] + self.gamma[i];
            if (sum - PI).abs() > PARAM_TOL {
                return bad(format!("triangle {i}: angles sum to {sum}"));
            }
            let prev = self.radii[(i + q - 1) % q];
            let gap = self.beta[i].sin() * prev - self.gamma[i].sin() * self.radii[i];
            if gap.abs() > PARAM_TOL * rmax {
                return bad(format!("triangle {i}: sine rule off by {gap}"));
            }
        }
        Ok(())
    }
}

/// Builds the patch with `z = 0` and the last ring vertex at `(radii[q-1], 0)`.
pub fn patch_from_params(pp: &PatchParams) -> Result<TrianglePatch<f64>> {
    pp.check()?;
    let q = pp.q();
    let mut theta = 0.0;
    let mut ring = Vec::with_capacity(q);
    for i in 0..q {
        theta += pp.alpha[i];
        let r = pp.radii[i];
        ring.push(if i + 1 == q { Point::new(r, 0.0) } else { Point::new(r * theta.cos(), r * theta.sin()) });
    }
    Ok(TrianglePatch::new(Point::origin(), ring))
}

fn angle_between(u: &Point<f64>, v: &Point<f64>) -> f64 {
    (u.x * v.y - u.y * v.x).atan2(u.x * v.x + u.y * v.y).abs()
}

/// Reads off the angles and radii of a valid patch.
pub fn params_from_patch<T: Scalar>(patch: &TrianglePatch<T>) -> Result<PatchParams> {
    let violations = validate_patch(patch);
    if !violations.is_empty() {
        return Err(Error::InvalidPatch(violations));
    }
    let p = patch.to_f64();
    let q = p.q();
    let mut out = PatchParams { alpha: vec![], beta: vec![], gamma: vec![], radii: vec![] };
    for i in 0..q {
        let [z, a, b] = p.vertices_of(i);
        let alpha = angle_between(&a.sub(&z), &b.sub(&z));
        let beta = angle_between(&z.sub(&a), &b.sub(&a));
        out.alpha.push(alpha);
        out.beta.push(beta);
        out.gamma.push(PI - alpha - beta);
        out.radii.push(b.sub(&z).norm_sq().sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_patch;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn regular(q: usize) -> PatchParams {
        let a = 2.0 * PI / q as f64;
        let b = (PI - a) / 2.0;
        PatchParams { alpha: vec![a; q], beta: vec![b; q], gamma: vec![b; q], radii: vec![1.0; q] }
    }

    #[test]
    fn equilateral_three_fan() {
        let p = patch_from_params(&regular(3)).unwrap();
        assert_eq!(p.ring[2], Point::new(1.0, 0.0));
        assert!((p.ring[0].x + 0.5).abs() < 1e-15 && (p.ring[0].y - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((p.ring[1].x + 0.5).abs() < 1e-15 && (p.ring[1].y + 0.75f64.sqrt()).abs() < 1e-15);
        assert!(validate_patch(&p).is_empty());
    }

    #[test]
    fn inconsistent_inputs_rejected() {
        let mut pp = regular(4);
        pp.alpha[0] += 0.1;
        pp.beta[0] -= 0.1;
        assert!(matches!(patch_from_params(&pp), Err(Error::InconsistentParams(_))));
        let mut pp = regular(4);
        pp.radii[1] = 2.0;
        assert!(matches!(patch_from_params(&pp), Err(Error::InconsistentParams(_))));
        let mut pp = regular(4);
        pp.radii.pop();
        assert!(patch_from_params(&pp).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn round_trip(seed in any::<u64>(), q in 3usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let world = random_patch(&mut rng, q).unwrap();
            let pp = params_from_patch(&world).unwrap();
            prop_assert!(pp.check().is_ok());
            let built = patch_from_params(&pp).unwrap();
            let again = params_from_patch(&built).unwrap();
            let rebuilt = patch_from_params(&again).unwrap();
            for (a, b) in built.ring.iter().zip(&rebuilt.ring) {
                prop_assert!((a.x - b.x).abs() < 1e-12 && (a.y - b.y).abs() < 1e-12);
            }
            for (a, b) in pp.alpha.iter().zip(&again.alpha) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
