//! The patch projection `Π_n` onto piecewise polynomials of degree `n - 1` and the constants
//! measuring how far it is from losing injectivity on global degree-`n` polynomials.
//!
//! With `(u, v)_FST = Σ_i (u, v)_{K_i}` (bubble-weighted on every triangle):
//!
//! * `c′_n = inf (v, Π v)_FST / (v, v)_FST`,
//! * `č_n  = inf (v, Π v)_FST / ‖v‖²_{L²(Ω)}`,
//! * `c″_n = inf ∫_{T1} v² ω / ∫_{T1} v²`, patch independent.
//!
//! All Gram matrices are assembled in the scalar backend (exactly for rationals); only the
//! final symmetric eigensolve runs in `f64`.

pub mod params;
pub mod sweep;

use crate::error::{Error, Result};
use crate::geometry::{validate_patch, AffineMap, TrianglePatch, Triangle};
use crate::linalg::{smallest_generalized_eigenvalue, Matrix};
use crate::orthobasis::{proriol, TriangleWeights};
use crate::polynomial::{monomial_count, monomial_gram, t1_monomial_gram, BivarPoly, Density};
use crate::scalar::{Rational, Scalar};

pub use params::{params_from_patch, patch_from_params, PatchParams};
pub use sweep::{sweep_x, SweepConfig, SweepResult, SweepRow};

fn checked_triangles<T: Scalar>(patch: &TrianglePatch<T>, n: usize) -> Result<Vec<Triangle<T>>> {
    if n == 0 {
        return Err(Error::InvalidDegree(0, "the projection target P_{n-1} must be nonzero"));
    }
    let violations = validate_patch(patch);
    if !violations.is_empty() {
        return Err(Error::InvalidPatch(violations));
    }
    patch.triangles()
}

fn top_left<T: Scalar>(m: &Matrix<T>, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |i, j| m[(i, j)].clone())
}

/// `Π_n v` as one polynomial of degree `n - 1` per triangle, in world coordinates.
pub fn project<T: Scalar>(v: &BivarPoly<T>, patch: &TrianglePatch<T>, n: usize) -> Result<Vec<BivarPoly<T>>> {
    let triangles = checked_triangles(patch, n)?;
    let coeffs = v.coeff_vector(n)?;
    let low = monomial_count(n - 1);
    triangles
        .iter()
        .map(|k| {
            let g = monomial_gram(n, k, Density::Bubble);
            let rhs = Matrix::from_columns(low, &[top_left(&g, low, g.cols()).mul_vec(&coeffs)]);
            let sol = top_left(&g, low, low).solve(&rhs)?;
            Ok(BivarPoly::from_coeffs(sol.column(0)))
        })
        .collect()
}

/// The patch translated to put `z` at the origin and scaled to unit max-abs coordinate. All
/// three constants are invariant under this map; the smaller coordinates keep Grams balanced.
pub fn normalized_patch<T: Scalar>(patch: &TrianglePatch<T>) -> TrianglePatch<T> {
    let shifted = patch.map(&AffineMap::translation(-patch.z.x.clone(), -patch.z.y.clone()));
    let scale = shifted
        .ring
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs()])
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    if scale.is_zero() {
        return shifted;
    }
    let inv = T::one() / scale;
    shifted.map(&AffineMap::scaling(inv).expect("nonzero scale"))
}

/// Gram matrices on the monomial basis of `P_n` over the whole patch.
#[derive(Debug, Clone)]
pub struct PatchGrams<T> {
    /// `(·,·)_FST`.
    pub fst: Matrix<T>,
    /// Unweighted `L²(Ω)`.
    pub l2: Matrix<T>,
    /// `(·, Π ·)_FST = Σ_i C_iᵀ M_i⁻¹ C_i`, with `M_i` the degree-`(n-1)` Gram on `K_i` and
    /// `C_i` the mixed Gram block.
    pub proj: Matrix<T>,
}

pub fn patch_grams<T: Scalar>(patch: &TrianglePatch<T>, n: usize) -> Result<PatchGrams<T>> {
    let triangles = checked_triangles(patch, n)?;
    let dim = monomial_count(n);
    let low = monomial_count(n - 1);
    let mut fst = Matrix::zeros(dim, dim);
    let mut l2 = Matrix::zeros(dim, dim);
    let mut proj = Matrix::zeros(dim, dim);
    for k in &triangles {
        let g = monomial_gram(n, k, Density::Bubble);
        let mixed = top_left(&g, low, dim);
        let solved = top_left(&g, low, low).solve(&mixed)?;
        proj = proj.add(&mixed.transpose().matmul(&solved));
        fst = fst.add(&g);
        l2 = l2.add(&monomial_gram(n, k, Density::Lebesgue));
    }
    Ok(PatchGrams { fst, l2, proj })
}

pub fn c_prime<T: Scalar>(patch: &TrianglePatch<T>, n: usize) -> Result<f64> {
    let g = patch_grams(&normalized_patch(patch), n)?;
    smallest_generalized_eigenvalue(&g.proj, &g.fst)
}

pub fn c_check<T: Scalar>(patch: &TrianglePatch<T>, n: usize) -> Result<f64> {
    let g = patch_grams(&normalized_patch(patch), n)?;
    smallest_generalized_eigenvalue(&g.proj, &g.l2)
}

/// `c″_n` from the exact bubble-weighted and unweighted Grams on `T1`.
pub fn c_doubleprime(n: usize) -> f64 {
    let weighted = t1_monomial_gram::<Rational>(n, Density::Bubble);
    let plain = t1_monomial_gram::<Rational>(n, Density::Lebesgue);
    smallest_generalized_eigenvalue(&weighted, &plain).expect("monomial Gram on T1 is definite")
}

/// `c″_0` as an exact ratio: the pencil is `1×1`.
pub fn c_doubleprime_zero() -> Rational {
    let weighted = t1_monomial_gram::<Rational>(0, Density::Bubble);
    let plain = t1_monomial_gram::<Rational>(0, Density::Lebesgue);
    weighted[(0, 0)].clone() / plain[(0, 0)].clone()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsReport<T> {
    pub n: usize,
    pub c_prime: f64,
    pub c_doubleprime: f64,
    pub c_check: f64,
    pub patch: TrianglePatch<T>,
}

impl<T> ConstantsReport<T> {
    /// `č ≥ c″ c′`, allowing `slack` relative to the right side.
    pub fn inequality_holds(&self, slack: f64) -> bool {
        let rhs = self.c_doubleprime * self.c_prime;
        self.c_check >= rhs - slack * rhs.abs()
    }
}

/// All three constants, sharing one Gram assembly.
pub fn constants<T: Scalar>(patch: &TrianglePatch<T>, n: usize) -> Result<ConstantsReport<T>> {
    let g = patch_grams(&normalized_patch(patch), n)?;
    Ok(ConstantsReport {
        n,
        c_prime: smallest_generalized_eigenvalue(&g.proj, &g.fst)?,
        c_doubleprime: c_doubleprime(n),
        c_check: smallest_generalized_eigenvalue(&g.proj, &g.l2)?,
        patch: patch.clone(),
    })
}

/// `‖Π v‖²_FST` from the Gram assembly.
pub fn projected_norm_sq<T: Scalar>(v: &BivarPoly<T>, patch: &TrianglePatch<T>, n: usize) -> Result<T> {
    let g = patch_grams(patch, n)?;
    let c = v.coeff_vector(n)?;
    let gc = g.proj.mul_vec(&c);
    Ok(c.iter().zip(&gc).fold(T::zero(), |acc, (a, b)| acc + a.mul_ref(b)))
}

/// `‖Π v‖²_FST = Σ_i |det Λ_i| Σ_m (∫_{T1} (v ∘ Λ_i) p_m ω)²` with `{p_m}` the orthonormalized
/// Proriol family spanning `P_{n-1}(T1)`. The normalization is folded into the division by
/// `∫ p_m² ω`, which keeps the sum exact.
pub fn projected_norm_sq_expansion<T: Scalar>(
    v: &BivarPoly<T>,
    patch: &TrianglePatch<T>,
    n: usize,
) -> Result<T> {
    let triangles = checked_triangles(patch, n)?;
    let w = TriangleWeights::bubble();
    let family: Vec<(BivarPoly<T>, T)> = (0..n)
        .flat_map(|j| (0..=j).map(move |k| (j, k)))
        .map(|(j, k)| {
            let p = proriol(j, k, &w)?;
            let norm = (&p * &p).integrate_t1_bubble();
            Ok((p, norm))
        })
        .collect::<Result<_>>()?;
    let mut total = T::zero();
    for k in &triangles {
        let map = k.reference_map();
        let pulled = v.affine_substitute(&map);
        let mut local = T::zero();
        for (p, norm) in &family {
            let moment = (&pulled * p).integrate_t1_bubble();
            local += &(moment.mul_ref(&moment) / norm.clone());
        }
        total += &(local * map.det().abs());
    }
    Ok(total)
}
