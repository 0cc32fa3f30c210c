//! Dense univariate and bivariate polynomials over a [`Scalar`], with exact integration over the
//! unit triangle and the bubble-weighted inner product on arbitrary triangles.
//!
//! Bivariate coefficients are stored in graded order: all monomials of total degree 0, then 1,
//! and so on; within total degree `g` the monomials run `y^g, x y^(g-1), ..., x^g`. The first
//! [`monomial_count`]`(n)` entries therefore always span `P_n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Point, Triangle};
use crate::linalg::Matrix;
use crate::scalar::{rational_factorial_ratio, Rational, Scalar};

/// Dimension of `P_n` in two variables.
pub fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Position of `x^r y^m` in graded storage.
pub fn monomial_index(r: usize, m: usize) -> usize {
    let g = r + m;
    g * (g + 1) / 2 + r
}

/// Inverse of [`monomial_index`]: `(r, m)` exponents.
pub fn monomial_exponents(index: usize) -> (usize, usize) {
    let mut g = 0;
    while monomial_count(g) <= index {
        g += 1;
    }
    let r = index - g * (g + 1) / 2;
    (r, g - r)
}

#[derive(Clone, PartialEq)]
pub struct UnivarPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UnivarPoly<T> {
    /// Ascending coefficients; trailing zeros are stripped.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivarPoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivarPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |mut acc, c| {
            acc *= x;
            acc += c;
            acc
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &a.mul_ref(b);
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i).add_ref(&other.coeff(i))).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| acc.mul(self))
    }

    /// `p(a + b x)` as a univariate polynomial.
    pub fn compose_linear(&self, a: &T, b: &T) -> Self {
        let inner = Self::linear(a.clone(), b.clone());
        let mut out = Self::zero();
        let mut power = Self::constant(T::one());
        for c in &self.coeffs {
            out = out.add(&power.scale(c));
            power = power.mul(&inner);
        }
        out
    }

    /// `p(ℓ(x, y))` for the bivariate affine form `ℓ`.
    pub fn compose_bivar(&self, form: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = BivarPoly::zero();
        let mut power = BivarPoly::constant(T::one());
        for c in &self.coeffs {
            out = &out + &power.scale(c);
            power = &power * form;
        }
        out
    }
}

impl UnivarPoly<Rational> {
    pub fn to_scalar<U: Scalar>(&self) -> UnivarPoly<U> {
        UnivarPoly::new(self.coeffs.iter().map(U::from_rational).collect())
    }
}

impl<T: Scalar> fmt::Debug for UnivarPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Bivariate polynomial of bounded total degree.
#[derive(Clone, PartialEq)]
pub struct BivarPoly<T> {
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> BivarPoly<T> {
    fn trimmed(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Self::zero();
        }
        let (r, m) = monomial_exponents(coeffs.len() - 1);
        let degree = r + m;
        coeffs.resize(monomial_count(degree), T::zero());
        BivarPoly { degree, coeffs }
    }

    pub fn zero() -> Self {
        BivarPoly { degree: 0, coeffs: vec![T::zero()] }
    }

    pub fn constant(c: T) -> Self {
        Self::trimmed(vec![c])
    }

    pub fn monomial(r: usize, m: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); monomial_index(r, m) + 1];
        coeffs[monomial_index(r, m)] = c;
        Self::trimmed(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, T::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, T::one())
    }

    /// `a + b x + c y`
    pub fn linear(a: T, b: T, c: T) -> Self {
        // graded order: 1, y, x
        Self::trimmed(vec![a, c, b])
    }

    /// Builds a polynomial from a graded coefficient vector (see [`monomial_index`]).
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        Self::trimmed(coeffs)
    }

    /// `Σ_{r,m} c(r, m) x^r y^m` over `r + m <= n`.
    pub fn from_fn(n: usize, mut c: impl FnMut(usize, usize) -> T) -> Self {
        Self::trimmed((0..monomial_count(n)).map(|i| {
            let (r, m) = monomial_exponents(i);
            c(r, m)
        }).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, r: usize, m: usize) -> T {
        self.coeffs.get(monomial_index(r, m)).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient vector of length `monomial_count(n)`; fails if the degree exceeds `n`.
    pub fn coeff_vector(&self, n: usize) -> Result<Vec<T>> {
        if self.degree > n && !self.is_zero() {
            return Err(Error::InvalidDegree(self.degree, "polynomial exceeds requested degree"));
        }
        let mut v = self.coeffs.clone();
        v.resize(monomial_count(n), T::zero());
        Ok(v)
    }

    /// `(r, m, coefficient)` for every nonzero term.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let (r, m) = monomial_exponents(i);
            (r, m, c)
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::trimmed(self.coeffs.iter().map(|c| c.mul_ref(s)).collect())
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let top = self.degree;
        let xp: Vec<T> = powers(x, top);
        let yp: Vec<T> = powers(y, top);
        let mut acc = T::zero();
        for (r, m, c) in self.terms() {
            acc += &c.mul_ref(&xp[r]).mul_ref(&yp[m]);
        }
        acc
    }

    pub fn eval_at(&self, p: &Point<T>) -> T {
        self.eval(&p.x, &p.y)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }

    /// `p ∘ map`, i.e. `(x, y) -> p(map(x, y))`. Total degree is preserved.
    pub fn affine_substitute(&self, map: &AffineMap<T>) -> Self {
        let l = map.linear();
        let s = map.shift();
        let u = Self::linear(s[0].clone(), l[0][0].clone(), l[0][1].clone());
        let v = Self::linear(s[1].clone(), l[1][0].clone(), l[1][1].clone());
        self.substitute_forms(&u, &v)
    }

    /// `p(u(x, y), v(x, y))` for arbitrary polynomial `u`, `v`.
    pub fn substitute_forms(&self, u: &Self, v: &Self) -> Self {
        let n = self.degree;
        let mut up = vec![Self::constant(T::one())];
        let mut vp = vec![Self::constant(T::one())];
        for i in 0..n {
            up.push(&up[i] * u);
            vp.push(&vp[i] * v);
        }
        let mut out = Self::zero();
        for (r, m, c) in self.terms() {
            out = &out + &(&up[r] * &vp[m]).scale(c);
        }
        out
    }

    /// `p(y, x)`
    pub fn swap_xy(&self) -> Self {
        Self::from_fn(self.degree, |r, m| self.coeff(m, r))
    }

    /// Exact division by `y`; fails unless every term contains `y`.
    pub fn divide_by_y(&self) -> Result<Self> {
        if let Some((r, _, _)) = self.terms().find(|(_, m, _)| *m == 0) {
            return Err(Error::NotDivisible(format!("term x^{r} has no factor y")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::from_fn(self.degree - 1, |r, m| self.coeff(r, m + 1)))
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| {
            let a = c.abs();
            if a > acc {
                a
            } else {
                acc
            }
        })
    }

    /// Rescales to unit max-abs coefficient (the zero polynomial is returned unchanged).
    pub fn normalized(&self) -> Self {
        let m = self.max_abs_coeff();
        if m.is_zero() {
            return self.clone();
        }
        self.scale(&(T::one() / m))
    }

    pub fn to_f64(&self) -> BivarPoly<f64> {
        BivarPoly::trimmed(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    /// Exact `∫_{T1} p dx dy` from the monomial moments `r! m! / (r+m+2)!`.
    pub fn integrate_t1(&self) -> T {
        let mut acc = T::zero();
        for (r, m, c) in self.terms() {
            acc += &c.mul_ref(&T::from_rational(&rational_factorial_ratio(r, m, 0)));
        }
        acc
    }

    /// Exact `∫_{T1} p · x y (1-x-y) dx dy`.
    pub fn integrate_t1_bubble(&self) -> T {
        let mut acc = T::zero();
        for (r, m, c) in self.terms() {
            acc += &c.mul_ref(&T::from_rational(&rational_factorial_ratio(r + 1, m + 1, 1)));
        }
        acc
    }
}

impl BivarPoly<Rational> {
    pub fn to_scalar<U: Scalar>(&self) -> BivarPoly<U> {
        BivarPoly::trimmed(self.coeffs.iter().map(U::from_rational).collect())
    }
}

fn powers<T: Scalar>(x: &T, n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    for i in 0..n {
        out.push(out[i].mul_ref(x));
    }
    out
}

impl<T: Scalar> Add for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn add(self, rhs: Self) -> BivarPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(len, T::zero());
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o += c;
        }
        BivarPoly::trimmed(out)
    }
}

impl<T: Scalar> Sub for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn sub(self, rhs: Self) -> BivarPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(len, T::zero());
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        BivarPoly::trimmed(out)
    }
}

impl<T: Scalar> Mul for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn mul(self, rhs: Self) -> BivarPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero();
        }
        let degree = self.degree + rhs.degree;
        let mut out = vec![T::zero(); monomial_count(degree)];
        for (r1, m1, a) in self.terms() {
            for (r2, m2, b) in rhs.terms() {
                out[monomial_index(r1 + r2, m1 + m2)] += &a.mul_ref(b);
            }
        }
        BivarPoly::trimmed(out)
    }
}

impl<T: Scalar> Neg for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn neg(self) -> BivarPoly<T> {
        BivarPoly::trimmed(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for BivarPoly<T> {
            type Output = BivarPoly<T>;
            fn $method(self, rhs: Self) -> BivarPoly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Scalar> fmt::Debug for BivarPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(r, m, c)| {
                let mono = match (r, m) {
                    (0, 0) => String::new(),
                    (r, 0) => format!("*x^{r}"),
                    (0, m) => format!("*y^{m}"),
                    (r, m) => format!("*x^{r}*y^{m}"),
                };
                format!("({c}){mono}")
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Which density a Gram matrix integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    /// Product of the barycentric coordinates of the triangle.
    Bubble,
    /// Plain Lebesgue measure.
    Lebesgue,
}

/// `(u, v)_K = ∫_K u v ω_K`, computed by pulling back to `T1` (`ω_K` pulls back to
/// `x y (1 - x - y)`) and multiplying by `|det J|`.
pub fn inner_product<T: Scalar>(u: &BivarPoly<T>, v: &BivarPoly<T>, k: &Triangle<T>) -> T {
    let map = k.reference_map();
    let jac = map.det().abs();
    let pulled = &u.affine_substitute(&map) * &v.affine_substitute(&map);
    pulled.integrate_t1_bubble() * jac
}

/// `T1` moments of `x^a y^b` against the given density, indexed `[a][b]` for `a + b <= max_deg`.
fn t1_moment_table<T: Scalar>(max_deg: usize, density: Density) -> Vec<Vec<T>> {
    (0..=max_deg)
        .map(|a| {
            (0..=max_deg - a)
                .map(|b| {
                    let r = match density {
                        Density::Bubble => rational_factorial_ratio(a + 1, b + 1, 1),
                        Density::Lebesgue => rational_factorial_ratio(a, b, 0),
                    };
                    T::from_rational(&r)
                })
                .collect()
        })
        .collect()
}

/// Gram matrix of the monomial basis of `P_n` on `T1`.
pub fn t1_monomial_gram<T: Scalar>(n: usize, density: Density) -> Matrix<T> {
    let table = t1_moment_table::<T>(2 * n, density);
    let dim = monomial_count(n);
    Matrix::from_fn(dim, dim, |i, j| {
        let (a1, b1) = monomial_exponents(i);
        let (a2, b2) = monomial_exponents(j);
        table[a1 + a2][b1 + b2].clone()
    })
}

/// Gram matrix of the world-coordinate monomials of `P_n` on triangle `k`.
pub fn monomial_gram<T: Scalar>(n: usize, k: &Triangle<T>, density: Density) -> Matrix<T> {
    let map = k.reference_map();
    let jac = map.det().abs();
    let dim = monomial_count(n);
    // column j: coefficients of (x^r y^m) ∘ Λ in the T1 monomial basis
    let mut subst = Matrix::zeros(dim, dim);
    for j in 0..dim {
        let (r, m) = monomial_exponents(j);
        let pulled = BivarPoly::monomial(r, m, T::one()).affine_substitute(&map);
        for (i, c) in pulled.coeff_vector(n).expect("degree preserved").into_iter().enumerate() {
            subst[(i, j)] = c;
        }
    }
    let base = t1_monomial_gram::<T>(n, density);
    let mut g = subst.transpose().matmul(&base).matmul(&subst);
    g.scale_in_place(&jac);
    g
}
