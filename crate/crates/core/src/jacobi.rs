//! Jacobi polynomials `P_n^(α,β)` from the terminating hypergeometric sum
//!
//! `P_n^(α,β)(x) = (α+1)_n / n! · Σ_j (-n)_j (n+α+β+1)_j / ((α+1)_j j!) · ((1-x)/2)^j`.

use crate::error::{Error, Result};
use crate::polynomial::UnivarPoly;
use crate::scalar::Scalar;

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`.
pub fn shifted_factorial<T: Scalar>(a: &T, n: usize) -> T {
    let mut out = T::one();
    let mut term = a.clone();
    for _ in 0..n {
        out *= &term;
        term += &T::one();
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiParams<T> {
    alpha: T,
    beta: T,
    n: usize,
}

impl<T: Scalar> JacobiParams<T> {
    pub fn new(alpha: T, beta: T, n: usize) -> Result<Self> {
        let minus_one = -T::one();
        for p in [&alpha, &beta] {
            if *p <= minus_one {
                return Err(Error::ParameterOutOfRange(p.to_decimal_string()));
            }
        }
        Ok(JacobiParams { alpha, beta, n })
    }

    /// Integer parameters, the only kind used downstream.
    pub fn ints(alpha: i64, beta: i64, n: usize) -> Result<Self> {
        Self::new(T::from_i64(alpha), T::from_i64(beta), n)
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients `a_j` of the expansion in `z = (1 - x)/2`: `P = Σ_j a_j z^j`.
    pub fn hypergeometric_terms(&self) -> Vec<T> {
        let n = self.n;
        let one = T::one();
        let a1 = self.alpha.add_ref(&one);
        let lead = shifted_factorial(&a1, n) / T::from_rational(&crate::scalar::factorial(n).into());
        let minus_n = T::from_i64(-(n as i64));
        let upper = T::from_i64(n as i64).add_ref(&self.alpha).add_ref(&self.beta).add_ref(&one);
        let mut out = Vec::with_capacity(n + 1);
        let mut ratio = T::one();
        for j in 0..=n {
            out.push(lead.mul_ref(&ratio));
            // ratio_{j+1} = ratio_j (-n+j)(upper+j) / ((α+1+j)(j+1))
            let jj = T::from_i64(j as i64);
            let num = minus_n.add_ref(&jj).mul_ref(&upper.add_ref(&jj));
            let den = a1.add_ref(&jj).mul_ref(&T::from_i64(j as i64 + 1));
            ratio = ratio.mul_ref(&num) / den;
        }
        out
    }
}

/// `P_n^(α,β)` as a polynomial in `x`.
pub fn jacobi_poly<T: Scalar>(params: &JacobiParams<T>) -> UnivarPoly<T> {
    let half = T::ratio(1, 2);
    UnivarPoly::new(params.hypergeometric_terms()).compose_linear(&half, &-half.clone())
}

/// `P_n^(α,β)(x)`, summing the hypergeometric series directly.
pub fn jacobi_eval<T: Scalar>(params: &JacobiParams<T>, x: &T) -> T {
    let z = (T::one() - x.clone()) / T::from_i64(2);
    UnivarPoly::new(params.hypergeometric_terms()).eval(&z)
}
