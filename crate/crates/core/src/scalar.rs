//! Exact rational scalars.
//!
//! Every coordinate, squared distance, squared radius and area in the kernel is
//! a [`Scalar`]. The backing `rug::Rational` keeps values in canonical form
//! (reduced, positive denominator) after every operation, so equality and
//! hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Integer, Rational};
use thiserror::Error;

/// Arbitrary-precision rational number.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(Rational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty numeric literal")]
    Empty,
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Rational::new())
    }

    pub fn one() -> Self {
        Scalar(Rational::from(1))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Rational::from(v))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(Rational::from((num, den)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar(r)
    }

    /// Exact conversion of a finite `f64`; `None` for NaN or infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        Rational::from_f64(v).map(Scalar)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    /// Nearest-ish `f64`; used for float filters and reporting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn signum(&self) -> i32 {
        self.0.cmp0() as i32
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.0.cmp0() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.clone().abs())
    }

    pub fn square(&self) -> Scalar {
        Scalar(self.0.clone().square())
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.clone().recip())
    }

    /// `floor(self * 2^bits) / 2^bits`.
    pub fn floor_dyadic(&self, bits: u32) -> Scalar {
        let scaled = self.0.clone() << bits;
        let floor = scaled.floor();
        Scalar(floor >> bits)
    }

    /// Round to the nearest multiple of `2^-bits` (ties go up).
    pub fn round_dyadic(&self, bits: u32) -> Scalar {
        let scaled = (self.0.clone() << bits) + Rational::from((1, 2));
        Scalar(scaled.floor() >> bits)
    }

    /// Power of ten as a scalar; negative exponents give fractions.
    pub fn pow10(exp: i32) -> Scalar {
        let p = Integer::from(Integer::u_pow_u(10, exp.unsigned_abs()));
        if exp >= 0 {
            Scalar(Rational::from(p))
        } else {
            Scalar(Rational::from((Integer::from(1), p)))
        }
    }

    /// Canonical text: `n` for integers, a terminating decimal when the
    /// denominator only has factors 2 and 5, otherwise `p/q`. The output always
    /// parses back to the identical value.
    pub fn to_exact_string(&self) -> String {
        if *self.0.denom() == 1 {
            return self.0.numer().to_string();
        }
        let mut den = self.0.denom().clone();
        let twos = den.find_one(0).unwrap_or(0);
        den >>= twos;
        let mut fives = 0u32;
        while den.is_divisible_u(5) {
            den /= 5u32;
            fives += 1;
        }
        if den == 1 {
            let digits = twos.max(fives);
            let scale = Integer::from(Integer::u_pow_u(10, digits));
            let scaled = Integer::from(self.0.numer() * &scale) / self.0.denom();
            let neg = scaled < 0;
            let mut s = scaled.abs().to_string();
            let d = digits as usize;
            if s.len() <= d {
                s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
            }
            let split = s.len() - d;
            format!("{}{}.{}", if neg { "-" } else { "" }, &s[..split], &s[split..])
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts integers, decimals with optional exponent (`-1.25e-3`) and
    /// rationals `p/q`. Conversion is lossless.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        let bad = || ParseScalarError::Malformed(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let num = parse_decimal(p.trim()).ok_or_else(bad)?;
            let den = parse_decimal(q.trim()).ok_or_else(bad)?;
            if den.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(s.to_string()));
            }
            return Ok(Scalar(num.0 / den.0));
        }
        parse_decimal(s).ok_or_else(bad)
    }
}

fn parse_decimal(s: &str) -> Option<Scalar> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).ok()?;
    if neg {
        value = -value;
    }
    let shift = exp.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    Some(Scalar(Rational::from(value)) * Scalar::pow10(shift))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_int(v.into())
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar(r)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(Rational::from((&self.0).$method(&rhs.0)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(Rational::from(&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(Rational::from(&self.0 / &rhs.0))
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        &self / rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(Rational::from(-&self.0))
    }
}
