//! Orthogonal polynomials on triangles for the weight `x^α y^β (1-x-y)^γ`, and the complement
//! spaces `P⊥_{n-1}(K)`: degree-`n` polynomials orthogonal on `K` to every polynomial of degree
//! below `n` under the bubble-weighted inner product.

use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Triangle};
use crate::jacobi::JacobiParams;
use crate::linalg::Matrix;
use crate::polynomial::{monomial_count, BivarPoly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleWeights<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> TriangleWeights<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Result<Self> {
        let minus_one = -T::one();
        for p in [&alpha, &beta, &gamma] {
            if *p <= minus_one {
                return Err(Error::ParameterOutOfRange(p.to_decimal_string()));
            }
        }
        Ok(TriangleWeights { alpha, beta, gamma })
    }

    /// `α = β = γ = 1`
    pub fn bubble() -> Self {
        TriangleWeights { alpha: T::one(), beta: T::one(), gamma: T::one() }
    }
}

/// `P_{n,k}^{(α,β,γ)}(x, y) = (1-x)^k P_{n-k}^{(α, β+γ+2k+1)}(1-2x) P_k^{(β,γ)}(1 - 2y/(1-x))`.
///
/// The last factor is expanded in `z = y/(1-x)` so that `(1-x)^k z^j = y^j (1-x)^(k-j)` stays
/// polynomial.
pub fn proriol<T: Scalar>(n: usize, k: usize, w: &TriangleWeights<T>) -> Result<BivarPoly<T>> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let one = T::one();
    let second = w.beta.add_ref(&w.gamma).add_ref(&T::from_i64(2 * k as i64 + 1));
    let radial = crate::jacobi::jacobi_poly(&JacobiParams::new(w.alpha.clone(), second, n - k)?);
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let one_minus_2x = BivarPoly::linear(one.clone(), T::from_i64(-2), T::zero());
    let first = radial.compose_bivar(&one_minus_2x);

    let angular = JacobiParams::new(w.beta.clone(), w.gamma.clone(), k)?.hypergeometric_terms();
    let one_minus_x = &BivarPoly::constant(one) - &x;
    let mut tail = BivarPoly::zero();
    for (j, a) in angular.iter().enumerate() {
        let term = &y.pow(j) * &one_minus_x.pow(k - j);
        tail = &tail + &term.scale(a);
    }
    Ok(&first * &tail)
}

/// The `base`-th of the six images of [`proriol`] under the symmetries of `T1`:
///
/// | base | parameters | argument |
/// |---|---|---|
/// | 1 | (α,β,γ) | (x, y) |
/// | 2 | (β,α,γ) | (y, x) |
/// | 3 | (β,γ,α) | (y, 1-x-y) |
/// | 4 | (α,γ,β) | (x, 1-x-y) |
/// | 5 | (γ,α,β) | (1-x-y, x) |
/// | 6 | (γ,β,α) | (1-x-y, y) |
pub fn six_variant<T: Scalar>(
    base: usize,
    n: usize,
    k: usize,
    w: &TriangleWeights<T>,
) -> Result<BivarPoly<T>> {
    let (a, b, g) = (&w.alpha, &w.beta, &w.gamma);
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let s = BivarPoly::linear(T::one(), -T::one(), -T::one());
    let (params, u, v) = match base {
        1 => ((a, b, g), &x, &y),
        2 => ((b, a, g), &y, &x),
        3 => ((b, g, a), &y, &s),
        4 => ((a, g, b), &x, &s),
        5 => ((g, a, b), &s, &x),
        6 => ((g, b, a), &s, &y),
        other => return Err(Error::BadBaseIndex(other)),
    };
    let permuted = TriangleWeights::new(params.0.clone(), params.1.clone(), params.2.clone())?;
    Ok(proriol(n, k, &permuted)?.substitute_forms(u, v))
}

/// `p_{n,k}(x, y) = P_{n,k}^{(1,1,1)}(y, x) / P_{n,k}^{(1,1,1)}(0, 0)`, so `p_{n,k}(0,0) = 1`.
pub fn pnk<T: Scalar>(n: usize, k: usize) -> Result<BivarPoly<T>> {
    let raw = proriol(n, k, &TriangleWeights::<T>::bubble())?.swap_xy();
    let at_origin = raw.coeff(0, 0);
    if at_origin.is_zero() {
        return Err(Error::ZeroNormalizer { n, k });
    }
    Ok(raw.scale(&(T::one() / at_origin)))
}

/// Basis of `P⊥_{n-1}(K)` stored as world-coordinate polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementBasis<T: Scalar> {
    pub n: usize,
    pub triangle: Triangle<T>,
    pub polys: Vec<BivarPoly<T>>,
}

impl<T: Scalar> ComplementBasis<T> {
    /// Coefficient vectors (monomials of degree `<= n`) as columns.
    pub fn coefficient_matrix(&self) -> Matrix<T> {
        let columns: Vec<Vec<T>> = self
            .polys
            .iter()
            .map(|p| p.coeff_vector(self.n).expect("complement members have degree n"))
            .collect();
        Matrix::from_columns(monomial_count(self.n), &columns)
    }
}

/// `{p_{n,k} ∘ to_reference : k = 0..n}` for an affine map carrying the triangle onto `T1`
/// (either orientation). Float mode rescales each member to unit max-abs coefficient.
pub fn complement_polys_from_map<T: Scalar>(
    n: usize,
    to_reference: &AffineMap<T>,
) -> Result<Vec<BivarPoly<T>>> {
    (0..=n)
        .map(|k| {
            let p = pnk::<T>(n, k)?.affine_substitute(to_reference);
            Ok(if T::is_exact() { p } else { p.normalized() })
        })
        .collect()
}

/// `P⊥_{n-1}(K)` via the inverse of the map sending `T1`'s vertices to `K`'s in order.
pub fn complement_basis<T: Scalar>(n: usize, k: &Triangle<T>) -> ComplementBasis<T> {
    let polys = complement_polys_from_map(n, &k.reference_map().inverse())
        .expect("p_{n,k} is defined for all 0 <= k <= n");
    ComplementBasis { n, triangle: k.clone(), polys }
}
