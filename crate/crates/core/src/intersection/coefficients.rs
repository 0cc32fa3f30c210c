//! Closed-form coefficients of the linear system for `P⊥_{n-1}(T1) ∩ P⊥_{n-1}(K_{c,d})`.
//!
//! With `q = Σ_k α_k p_{n,k}` on `T1` and `Σ_k β_k p_{n,k}(x + cy, (d-c)y)` on `K_{c,d}`, the two
//! representations agree on the `y = 0` line, forcing `α = β`, and the remaining equations are
//! the vanishing of the `x^r y^m` coefficients (`m ≥ 1`) of
//! `Σ_k α_k (p_{n,k} - p_{n,k}(x + cy, (d-c)y))`, namely `Σ_k α_k f_{k,r,m} / r!`.

use num_bigint::BigInt;

use super::CdParams;
use crate::error::{Error, Result};
use crate::jacobi::shifted_factorial;
use crate::linalg::Matrix;
use crate::scalar::{factorial, Scalar};

fn fact<T: Scalar>(n: usize) -> T {
    T::from_rational(&factorial(n).into())
}

fn poch<T: Scalar>(a: i64, n: usize) -> T {
    shifted_factorial(&T::from_i64(a), n)
}

fn int(v: usize) -> i64 {
    v as i64
}

/// `(-n+k)_i (n+k+5)_i / ((2)_i i!)`, the coefficients of the `y`-factor of `p_{n,k}`.
fn outer_term<T: Scalar>(n: usize, k: usize, i: usize) -> T {
    poch::<T>(int(k) - int(n), i) * poch::<T>(int(n + k + 5), i) / (poch::<T>(2, i) * fact::<T>(i))
}

/// `f_{k,r,m}(c, d)` for `0 ≤ r ≤ k ≤ n`, `1 ≤ m`, `r + m ≤ n`.
pub fn f_coefficient<T: Scalar>(n: usize, k: usize, r: usize, m: usize, cd: &CdParams<T>) -> Result<T> {
    if !(r <= k && k <= n && m >= 1 && r + m <= n) {
        return Err(Error::IndexOutOfRange(format!("f index (n={n}, k={k}, r={r}, m={m})")));
    }
    let (c, d) = (&cd.c, &cd.d);
    let w = d.sub_ref(c);
    let (ki, ri, mi) = (int(k), int(r), int(m));
    let lo = (mi - ki + ri).max(0) as usize;
    let inner_r = poch::<T>(-ki, r) * poch::<T>(ki + 3, r) / poch::<T>(2, r);

    let mut s1 = T::zero();
    for i in lo..=m.min(n - k) {
        s1 += &(outer_term::<T>(n, k, i) * inner_r.clone() * poch::<T>(ri - ki, m - i) / fact::<T>(m - i));
    }
    s1 *= &(T::one() - w.powi(m));

    let mut s2 = T::zero();
    if m >= 1 {
        for i in lo..=(m - 1).min(n - k) {
            let outer = outer_term::<T>(n, k, i);
            for j in (r + 1)..=k.min(m + r - i) {
                let rest = m + r - i - j;
                let term = poch::<T>(-ki, j) * poch::<T>(ki + 3, j) * poch::<T>(int(j) - ki, rest)
                    / (poch::<T>(2, j) * fact::<T>(j - r) * fact::<T>(rest))
                    * c.powi(j - r)
                    * w.powi(m + r - j);
                s2 += &(outer.mul_ref(&term));
            }
        }
    }
    Ok(s1 - s2)
}

/// `f_{r,r,m}`: only the `(1 - (d-c)^m)` part survives.
pub fn f_diagonal_closed<T: Scalar>(n: usize, r: usize, m: usize, cd: &CdParams<T>) -> T {
    let sign = if r.is_multiple_of(2) { T::one() } else { -T::one() };
    let w = cd.d.sub_ref(&cd.c);
    sign * fact::<T>(2 * r + 2) / (T::from_i64(int(r + 1)) * fact::<T>(r + 2))
        * poch::<T>(int(r) - int(n), m)
        * poch::<T>(int(n + r + 5), m)
        / (poch::<T>(2, m) * fact::<T>(m))
        * (T::one() - w.powi(m))
}

/// `f_{r+1,r,m}` on the line `d = c + 1`, where it is linear in `c`. Needs `r + m ≤ n`.
pub fn f_superdiagonal_closed<T: Scalar>(n: usize, r: usize, m: usize, c: &T) -> T {
    let sign = if (m + r + 1).is_multiple_of(2) { T::one() } else { -T::one() };
    sign * fact::<T>(n - r - 1) * poch::<T>(int(n + r + 6), m - 1)
        / (fact::<T>(n - r - m) * fact::<T>(m - 1) * fact::<T>(m))
        * poch::<T>(int(r + 4), r + 1)
        / T::from_i64(int(r + 2))
        * c.clone()
}

/// The `(r, m)`-indexed rows (`r = 0..n-1`, `m = 1..n`, `r + m ≤ n`) with columns `α_0..α_n`;
/// entry `f_{k,r,m} / r!`, zero for `k < r`.
pub fn reduced_system<T: Scalar>(n: usize, cd: &CdParams<T>) -> Result<Matrix<T>> {
    if n == 0 {
        return Err(Error::InvalidDegree(0, "the reduced system needs degree at least 1"));
    }
    let rows: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (1..=n - r).map(move |m| (r, m))).collect();
    let mut entries = Vec::with_capacity(rows.len() * (n + 1));
    for &(r, m) in &rows {
        for k in 0..=n {
            entries.push(if k < r { T::zero() } else { f_coefficient(n, k, r, m, cd)? / fact::<T>(r) });
        }
    }
    let mut it = entries.into_iter();
    Ok(Matrix::from_fn(rows.len(), n + 1, |_, _| it.next().expect("filled row-major")))
}

/// The 3×3 block with rows `(r, m) = (n-1, 1), (n-2, 1), (n-2, 2)` and columns
/// `α_n, α_{n-1}, α_{n-2}`.
pub fn det3_matrix<T: Scalar>(n: usize, cd: &CdParams<T>) -> Result<Matrix<T>> {
    if n < 2 {
        return Err(Error::InvalidDegree(n, "the 3x3 block needs degree at least 2"));
    }
    let rows = [(n - 1, 1), (n - 2, 1), (n - 2, 2)];
    let cols = [n, n - 1, n - 2];
    let mut entries = Vec::with_capacity(9);
    for (r, m) in rows {
        for k in cols {
            entries.push(if k < r { T::zero() } else { f_coefficient(n, k, r, m, cd)? / fact::<T>(r) });
        }
    }
    let mut it = entries.into_iter();
    Ok(Matrix::from_fn(3, 3, |_, _| it.next().expect("filled row-major")))
}

pub fn det3<T: Scalar>(n: usize, cd: &CdParams<T>) -> Result<T> {
    Ok(det3_matrix(n, cd)?.determinant())
}

/// `(-1)^{n+1} 2^{4n} (2n)! (1/2)_{n-1} (1/2)_{n+2} / (3 (n-2)! n! ((n+1)!)^2)
///  · c (d-1) (c-d+1) (c-d-1)`.
pub fn det3_closed<T: Scalar>(n: usize, cd: &CdParams<T>) -> Result<T> {
    if n < 2 {
        return Err(Error::InvalidDegree(n, "the 3x3 block needs degree at least 2"));
    }
    let (c, d) = (&cd.c, &cd.d);
    let half = T::ratio(1, 2);
    let sign = if n % 2 == 1 { T::one() } else { -T::one() };
    let pow2 = T::from_rational(&BigInt::from(2).pow(4 * n as u32).into());
    let np1 = fact::<T>(n + 1);
    let lead = sign * pow2 * fact::<T>(2 * n) * shifted_factorial(&half, n - 1)
        * shifted_factorial(&half, n + 2)
        / (T::from_i64(3) * fact::<T>(n - 2) * fact::<T>(n) * np1.mul_ref(&np1));
    let one = T::one();
    let cmd = c.sub_ref(d);
    Ok(lead * c.clone() * d.sub_ref(&one) * cmd.add_ref(&one) * cmd.sub_ref(&one))
}

/// On `d = c - 1`, the ratios `(α_{n-1}/α_n, α_{n-2}/α_n)` forced by the top rows.
pub fn below_diagonal_alphas<T: Scalar>(n: usize, c: &T) -> Result<(T, T)> {
    if n < 2 {
        return Err(Error::InvalidDegree(n, "needs degree at least 2"));
    }
    let t = |v: usize| T::from_i64(int(v));
    let np2sq = t(n + 2) * t(n + 2);
    let a1 = c.sub_ref(&T::one()) * t(n) * t(2 * n + 1) / np2sq.clone();
    let inner = t(3 * (n + 1)) + c.clone() * c.sub_ref(&t(2)) * t(2 * n + 1);
    let a0 = t(n - 1) * t(n) * t(2 * n - 1) * inner / (t(n + 1) * np2sq * t(2 * n + 3));
    Ok((a1, a0))
}
