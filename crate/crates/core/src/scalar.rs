//! Numeric backends shared by every algebraic routine.
//!
//! All polynomial, linear-algebra and geometry code is generic over [`Scalar`], which has two
//! implementations: [`Rational`] (arbitrary-precision, exact) for verification runs and `f64`
//! for sweeps. Mixing the two in one computation is a type error; moving from exact to float is
//! always an explicit [`Scalar::to_f64`] or [`Scalar::from_rational`] call.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Which backend a computation ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Signed
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    /// Converts an exact value into this backend (identity for [`Rational`]).
    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Serialization form: `p/q` for rationals, shortest round-trip decimal for floats.
    fn to_decimal_string(&self) -> String;

    /// The exact value, when this backend has one.
    fn as_rational(&self) -> Option<&Rational>;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivideByZero);
        }
        let mut out = self.clone();
        out /= rhs;
        Ok(out)
    }

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }

    /// `self * rhs` without consuming either side.
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out *= rhs;
        out
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out += rhs;
        out
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out -= rhs;
        out
    }

    fn powi(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out *= self;
        }
        out
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles numerators and denominators beyond f64 range.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_decimal_string(&self) -> String {
        self.to_string()
    }

    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_decimal_string(&self) -> String {
        format!("{self:?}")
    }

    fn as_rational(&self) -> Option<&Rational> {
        None
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `a! b! c! / (a+b+c+2)!`, the integral of `x^a y^b (1-x-y)^c` over the unit triangle.
pub fn rational_factorial_ratio(a: usize, b: usize, c: usize) -> Rational {
    Rational::new(
        factorial(a) * factorial(b) * factorial(c),
        factorial(a + b + c + 2),
    )
}

/// Parses a decimal literal (`-1.25`, `3`, `2.5e-3`) or a fraction (`-7/3`) exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse {
        line: 0,
        column: 0,
        message: format!("not a decimal or fraction: {text:?}"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}
