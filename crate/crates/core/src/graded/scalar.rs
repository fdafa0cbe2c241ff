//! Scalar fields.
//!
//! All algebraic data is generic over [`Scalar`]. Axiom checks are run with
//! exact rationals ([`Rational`]); flows and the Newton solver use
//! [`FloatScalar`] types.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number, always stored reduced.
pub type Rational = BigRational;

pub trait Scalar:
    Num + Clone + Debug + Display + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` when arithmetic is exact; rank and equality decisions are then
    /// made with `is_zero`, otherwise with a tolerance.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_rational(&self) -> Option<Rational>;
    fn to_f64(&self) -> f64;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn mul_ref(&self, rhs: &Self) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }

    /// Zero test used for pivoting: exact for rationals, scaled tolerance
    /// for floats.
    fn is_negligible(&self, scale: f64) -> bool;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn signed(sign: i8) -> Self {
        if sign < 0 {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

/// Floating-point scalars used by the integrators.
pub trait FloatScalar: Scalar + Float {
    fn from_f64(v: f64) -> Self;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn abs_f64(&self) -> f64 {
        Scalar::to_f64(&self.abs())
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn from_rational(q: &Rational) -> Self {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }

            fn to_rational(&self) -> Option<Rational> {
                BigRational::from_float(*self)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }

            fn add_assign_ref(&mut self, rhs: &Self) {
                *self += rhs;
            }

            fn sub_assign_ref(&mut self, rhs: &Self) {
                *self -= rhs;
            }

            fn add_product(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }

            fn is_negligible(&self, scale: f64) -> bool {
                (self.abs() as f64) <= $eps * scale.max(1.0)
            }
        }

        impl FloatScalar for $t {
            fn from_f64(v: f64) -> Self {
                v as $t
            }
        }
    };
}

float_scalar!(f64, 1e-12);
float_scalar!(f32, 1e-5);

/// Parses an exact rational from `"p"`, `"p/q"` or a finite decimal such as
/// `"-0.125"` or `"1e-3"`. Anything else (including `inf`, `nan`, surds) is
/// rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Input(format!("not an exact rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Input(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(n, d));
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
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let power = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Best rational approximation with denominator at most `max_den` lying
/// within `tol` of `value`; the smallest such denominator wins.
pub fn rationalize(value: f64, max_den: u32, tol: f64) -> Option<Rational> {
    if !value.is_finite() {
        return None;
    }
    (1..=max_den.max(1)).find_map(|den| {
        let num = (value * den as f64).round();
        if (value - num / den as f64).abs() <= tol && num.abs() < 9.0e15 {
            Some(BigRational::new(BigInt::from(num as i64), BigInt::from(den)))
        } else {
            None
        }
    })
}

pub(crate) fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_i64(k))
}
