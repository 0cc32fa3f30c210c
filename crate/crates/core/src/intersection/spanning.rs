//! Explicit generators of the one-dimensional intersections on the exceptional lines.

use super::{predicted_cd_dim, CdParams};
use crate::error::{Error, Result};
use crate::jacobi::{jacobi_poly, JacobiParams};
use crate::polynomial::BivarPoly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum SpanningCase<T> {
    /// `c = 0`: `P_n^(1,3)(1 - 2x)`.
    CZero,
    /// `d = 1`: `P_n^(1,3)(2(x + y) - 1)`.
    DOne,
    /// `d = c + 1`: `P_n^(1,3)(1 - 2y)`.
    DiagonalAbove,
    /// `(c, d) = (1, 0)`: `(P_{n+1}^(1,1)(1 - 2(x+y)) - P_{n+1}^(1,1)(1 - 2x)) / y`.
    ReflectedPoint,
    /// `n = 2`, `d = c - 1`.
    DiagonalBelow { c: T },
    /// `n = 1`, any `(c, d)`.
    Linear { c: T, d: T },
}

impl<T> SpanningCase<T> {
    pub fn name(&self) -> &'static str {
        match self {
            SpanningCase::CZero => "c_zero",
            SpanningCase::DOne => "d_one",
            SpanningCase::DiagonalAbove => "diagonal_above",
            SpanningCase::ReflectedPoint => "reflected_point",
            SpanningCase::DiagonalBelow { .. } => "diagonal_below",
            SpanningCase::Linear { .. } => "linear",
        }
    }
}

fn jacobi_of<T: Scalar>(n: usize, alpha: i64, beta: i64, form: &BivarPoly<T>) -> BivarPoly<T> {
    jacobi_poly(&JacobiParams::ints(alpha, beta, n).expect("positive parameters")).compose_bivar(form)
}

/// The generator for `case` in degree `n`.
pub fn spanning_poly<T: Scalar>(n: usize, case: &SpanningCase<T>) -> Result<BivarPoly<T>> {
    let i = |v: i64| T::from_i64(v);
    Ok(match case {
        SpanningCase::CZero => jacobi_of(n, 1, 3, &BivarPoly::linear(i(1), i(-2), i(0))),
        SpanningCase::DOne => jacobi_of(n, 1, 3, &BivarPoly::linear(i(-1), i(2), i(2))),
        SpanningCase::DiagonalAbove => jacobi_of(n, 1, 3, &BivarPoly::linear(i(1), i(0), i(-2))),
        SpanningCase::ReflectedPoint => {
            let diag = jacobi_of(n + 1, 1, 1, &BivarPoly::linear(i(1), i(-2), i(-2)));
            let edge = jacobi_of(n + 1, 1, 1, &BivarPoly::linear(i(1), i(-2), i(0)));
            (&diag - &edge).divide_by_y()?
        }
        SpanningCase::DiagonalBelow { c } => {
            if n != 2 {
                return Err(Error::InvalidDegree(n, "the d = c - 1 generator is quadratic"));
            }
            let (x, y) = (BivarPoly::x(), BivarPoly::y());
            let quad = (&x * &x).scale(&i(6))
                + (&x * &y).scale(&(i(6) * c.clone()))
                + (&y * &y).scale(&(c.clone() * c.add_ref(&i(1))));
            let lin = BivarPoly::linear(i(0), i(2), c.clone());
            let constant = i(3) * c.clone() * c.clone() + i(15) * c.clone() + i(18);
            quad.scale(&i(28)) - lin.scale(&(i(21) * c.add_ref(&i(3)))) + BivarPoly::constant(constant)
        }
        SpanningCase::Linear { c, d } => {
            if n != 1 {
                return Err(Error::InvalidDegree(n, "the general generator is linear"));
            }
            let ax = i(3) * (c.sub_ref(d) + i(1));
            let constant = d.sub_ref(&(i(2) * c.clone())) - i(1);
            BivarPoly::linear(constant, ax, i(3) * c.clone())
        }
    })
}

/// Picks the generator matching `(c, d)` when the intersection is one-dimensional.
pub fn spanning_case<T: Scalar>(n: usize, cd: &CdParams<T>) -> Option<SpanningCase<T>> {
    if n == 0 || predicted_cd_dim(n, cd) != 1 {
        return None;
    }
    let (c, d) = (&cd.c, &cd.d);
    let one = T::one();
    Some(if n == 1 {
        SpanningCase::Linear { c: c.clone(), d: d.clone() }
    } else if c.is_zero() {
        SpanningCase::CZero
    } else if *d == one {
        SpanningCase::DOne
    } else if d.sub_ref(c) == one {
        SpanningCase::DiagonalAbove
    } else if *c == one && d.is_zero() {
        SpanningCase::ReflectedPoint
    } else {
        SpanningCase::DiagonalBelow { c: c.clone() }
    })
}
