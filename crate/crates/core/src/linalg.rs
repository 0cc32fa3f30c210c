//! Dense matrices over a [`Scalar`]: rank, nullspace, determinant, linear solves and the
//! smallest eigenvalue of a symmetric-definite pencil.
//!
//! Exact matrices get their rank and determinant from fraction-free (Bareiss) elimination on
//! denominator-cleared integers. Float matrices use complete pivoting and treat pivots below
//! [`FLOAT_RANK_TOL`] times the largest pivot as zero.

use std::ops::{Index, IndexMut};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Relative pivot threshold for float rank decisions.
pub const FLOAT_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Row echelon data from Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct Reduction<T> {
    pub rank: usize,
    /// Basis of the right nullspace, one vector per column.
    pub nullspace: Vec<Vec<T>>,
    /// Pivot threshold that was applied (zero in exact mode).
    pub tolerance: f64,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from equally long column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row counts differ");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.mul_ref(&other[(k, j)]);
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |mut acc, (a, b)| {
                    acc += &a.mul_ref(b);
                    acc
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add_ref(&other[(i, j)]))
    }

    pub fn scale_in_place(&mut self, s: &T) {
        for x in &mut self.data {
            *x *= s;
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.to_f64()).collect() }
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    fn exact_entries(&self) -> Option<Vec<&Rational>> {
        self.data.iter().map(Scalar::as_rational).collect()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Gauss-Jordan elimination with complete pivoting; returns rank and a nullspace basis.
    pub fn reduce(&self) -> Reduction<T> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let exact = T::is_exact();
        let mut tolerance = 0.0;
        let mut rank = 0;
        while rank < m.min(n) {
            let k = rank;
            let mut best: Option<(usize, usize, f64)> = None;
            'search: for j in k..n {
                for i in k..m {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    let mag = v.to_f64().abs();
                    if exact {
                        best = Some((i, j, mag));
                        break 'search;
                    }
                    if best.is_none_or(|(_, _, b)| mag > b) {
                        best = Some((i, j, mag));
                    }
                }
            }
            let Some((pi, pj, mag)) = best else { break };
            if !exact {
                if k == 0 {
                    tolerance = FLOAT_RANK_TOL * mag;
                }
                if mag <= tolerance {
                    break;
                }
            }
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            perm.swap(k, pj);
            let inv = T::one() / a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] *= &inv;
            }
            for i in 0..m {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone();
                for j in 0..n {
                    let delta = factor.mul_ref(&a[(k, j)]);
                    a[(i, j)] -= &delta;
                }
            }
            rank += 1;
        }
        let nullspace = (rank..n)
            .map(|f| {
                let mut v = vec![T::zero(); n];
                v[perm[f]] = T::one();
                for p in 0..rank {
                    v[perm[p]] = -a[(p, f)].clone();
                }
                v
            })
            .collect();
        Reduction { rank, nullspace, tolerance }
    }

    pub fn rank(&self) -> usize {
        match self.exact_entries() {
            Some(entries) => bareiss(self.rows, self.cols, &entries).0,
            None => self.reduce().rank,
        }
    }

    pub fn nullspace(&self) -> Vec<Vec<T>> {
        self.reduce().nullspace
    }

    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if let Some(entries) = self.exact_entries() {
            let scales: Vec<BigInt> = (0..self.rows)
                .map(|i| row_denominator_lcm(&entries[i * self.cols..(i + 1) * self.cols]))
                .collect();
            let (_, det) = bareiss(self.rows, self.cols, &entries);
            let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
            return T::from_rational(&Rational::new(det, denom));
        }
        self.lu_determinant()
    }

    fn lu_determinant(&self) -> T {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| {
                    a[(i, k)].to_f64().abs().total_cmp(&a[(j, k)].to_f64().abs())
                })
                .expect("nonempty range");
            if a[(p, k)].is_zero() {
                return T::zero();
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            det *= &a[(k, k)];
            let inv = T::one() / a[(k, k)].clone();
            for i in k + 1..n {
                let factor = a[(i, k)].mul_ref(&inv);
                for j in k..n {
                    let delta = factor.mul_ref(&a[(k, j)]);
                    a[(i, j)] -= &delta;
                }
            }
        }
        det
    }

    /// Solves `self * X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        let n = self.rows;
        let mut a = self.hstack(rhs);
        let scale = self.max_abs();
        for k in 0..n {
            let p = (k..n)
                .filter(|&i| !a[(i, k)].is_zero())
                .max_by(|&i, &j| a[(i, k)].to_f64().abs().total_cmp(&a[(j, k)].to_f64().abs()))
                .ok_or(Error::DivideByZero)?;
            if !T::is_exact() && a[(p, k)].to_f64().abs() <= f64::EPSILON * scale {
                return Err(Error::DivideByZero);
            }
            a.swap_rows(k, p);
            let inv = T::one() / a[(k, k)].clone();
            for j in k..a.cols {
                a[(k, j)] *= &inv;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone();
                for j in k..a.cols {
                    let delta = factor.mul_ref(&a[(k, j)]);
                    a[(i, j)] -= &delta;
                }
            }
        }
        Ok(Self::from_fn(n, rhs.cols, |i, j| a[(i, n + j)].clone()))
    }

    /// `self = L D Lᵀ` with unit lower-triangular `L`; fails unless every pivot is positive.
    pub fn ldlt(&self) -> Result<(Self, Vec<T>)> {
        let n = self.rows;
        let mut l = Self::identity(n);
        let mut d: Vec<T> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                let t = l[(j, k)].mul_ref(&l[(j, k)]).mul_ref(&d[k]);
                dj -= &t;
            }
            if !dj.is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            for i in j + 1..n {
                let mut v = self[(i, j)].clone();
                for k in 0..j {
                    let t = l[(i, k)].mul_ref(&l[(j, k)]).mul_ref(&d[k]);
                    v -= &t;
                }
                l[(i, j)] = v / dj.clone();
            }
            d.push(dj);
        }
        Ok((l, d))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

fn row_denominator_lcm(row: &[&Rational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Fraction-free elimination on the row-wise denominator-cleared matrix. Returns the rank and,
/// for square input, the determinant of the cleared integer matrix.
fn bareiss(rows: usize, cols: usize, entries: &[&Rational]) -> (usize, BigInt) {
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &entries[i * cols..(i + 1) * cols];
            let l = row_denominator_lcm(row);
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows { sign * prev } else { BigInt::zero() };
    (rank, det)
}

/// Smallest `λ` with `a v = λ b v` for symmetric `a` and symmetric positive definite `b`.
///
/// `b = L D Lᵀ` and `L⁻¹ a L⁻ᵀ` are formed in the matrices' own arithmetic (exactly for
/// rationals); only the final diagonal scaling and the symmetric eigensolve are in `f64`.
pub fn smallest_generalized_eigenvalue<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<f64> {
    let (l, d) = b.ldlt()?;
    let n = a.rows();
    // W = L⁻¹ a, then L⁻¹ Wᵀ = L⁻¹ a L⁻ᵀ (a symmetric)
    let w = forward_substitute(&l, a);
    let whitened = forward_substitute(&l, &w.transpose());
    let dinv: Vec<f64> = d.iter().map(|x| 1.0 / x.to_f64().sqrt()).collect();
    let c = DMatrix::from_fn(n, n, |i, j| {
        let v = 0.5 * (whitened[(i, j)].to_f64() + whitened[(j, i)].to_f64());
        v * dinv[i] * dinv[j]
    });
    let eig = SymmetricEigen::new(c);
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// `L⁻¹ rhs` for unit lower-triangular `L`.
fn forward_substitute<T: Scalar>(l: &Matrix<T>, rhs: &Matrix<T>) -> Matrix<T> {
    let mut x = rhs.clone();
    for i in 0..l.rows() {
        for k in 0..i {
            if l[(i, k)].is_zero() {
                continue;
            }
            for j in 0..x.cols() {
                let t = l[(i, k)].mul_ref(&x[(k, j)]);
                x[(i, j)] -= &t;
            }
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use proptest::prelude::*;

    type Q = Rational;

    fn qm(rows: usize, cols: usize, v: &[i64]) -> Matrix<Q> {
        Matrix::from_fn(rows, cols, |i, j| Q::from_i64(v[i * cols + j]))
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(qm(2, 2, &[1, 2, 3, 4]).determinant(), Q::from_i64(-2));
        let h = Matrix::from_fn(3, 3, |i, j| rational(1, (i + j + 1) as i64));
        assert_eq!(h.determinant(), rational(1, 2160));
        assert!((h.to_f64().determinant() - 1.0 / 2160.0).abs() < 1e-15);
        let swap = qm(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(swap.determinant(), Q::from_i64(-1));
    }

    #[test]
    fn rank_and_nullspace() {
        let a = qm(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 1, 0, 1, 0]);
        assert_eq!(a.rank(), 2);
        let red = a.reduce();
        assert_eq!(red.rank, 2);
        assert_eq!(red.nullspace.len(), 2);
        for v in &red.nullspace {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let f = a.to_f64();
        assert_eq!(f.rank(), 2);
        assert!(f.reduce().tolerance > 0.0);
    }

    #[test]
    fn tiny_float_pivots_count_as_zero() {
        // rows (1, 1) and (1, 1 + 1e-12) differ only below the threshold
        let m = Matrix::from_fn(2, 2, |i, j| if i == 1 && j == 1 { 1.0 + 1e-12 } else { 1.0 });
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_and_ldlt() {
        let a = qm(3, 3, &[4, 2, 2, 2, 5, 3, 2, 3, 6]);
        let rhs = qm(3, 1, &[1, 2, 3]);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.matmul(&x), rhs);
        let (l, d) = a.ldlt().unwrap();
        let dm = Matrix::from_fn(3, 3, |i, j| if i == j { d[i].clone() } else { Q::from_i64(0) });
        assert_eq!(l.matmul(&dm).matmul(&l.transpose()), a);
        assert_eq!(qm(2, 2, &[1, 2, 2, 1]).ldlt().unwrap_err(), Error::NotPositiveDefinite);
    }

    /// Counts eigenvalues of the pencil below `lambda` through the inertia of `a - lambda b`.
    fn count_below(a: &Matrix<f64>, b: &Matrix<f64>, lambda: f64) -> usize {
        let n = a.rows();
        let shifted = Matrix::from_fn(n, n, |i, j| a[(i, j)] - lambda * b[(i, j)]);
        let eig = SymmetricEigen::new(shifted.to_nalgebra());
        eig.eigenvalues.iter().filter(|v| **v < 0.0).count()
    }

    #[test]
    fn generalized_eigenvalue_matches_bisection() {
        let a = qm(3, 3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]);
        let b = qm(3, 3, &[4, 1, 0, 1, 3, 1, 0, 1, 2]);
        let lam = smallest_generalized_eigenvalue(&a, &b).unwrap();
        let (af, bf) = (a.to_f64(), b.to_f64());
        let (mut lo, mut hi) = (-10.0, 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if count_below(&af, &bf, mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((lam - lo).abs() < 1e-12, "{lam} vs {lo}");
        let lam_f = smallest_generalized_eigenvalue(&af, &bf).unwrap();
        assert!((lam - lam_f).abs() < 1e-12);
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Q>> {
        prop::collection::vec(-3i64..4, rows * cols).prop_map(move |v| {
            Matrix::from_fn(rows, cols, |i, j| rational(v[i * cols + j], 1 + (i as i64 % 3)))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_determinant(a in small_matrix(4, 4), b in small_matrix(4, 6)) {
            prop_assert_eq!(b.rank(), b.reduce().rank);
            prop_assert_eq!(b.rank() + b.nullspace().len(), 6);
            for v in b.nullspace() {
                prop_assert!(b.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
            let det = a.determinant();
            prop_assert_eq!(det.is_zero(), a.rank() < 4);
            let af = a.to_f64();
            prop_assert!((af.determinant() - det.to_f64()).abs() <= 1e-9 * (1.0 + det.to_f64().abs()));
            prop_assert_eq!(af.rank(), a.rank());
        }

        #[test]
        fn determinant_is_multiplicative(a in small_matrix(3, 3), b in small_matrix(3, 3)) {
            prop_assert_eq!(a.matmul(&b).determinant(), a.determinant() * b.determinant());
        }
    }
}
