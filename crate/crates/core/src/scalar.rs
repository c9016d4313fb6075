//! Coefficient scalars: exact rationals of unbounded size or `f64`, with a
//! mode flag so reports can state precision provenance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::BhError;

/// Arithmetic mode of a scalar or polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithMode {
    Exact,
    Float,
}

impl fmt::Display for ArithMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithMode::Exact => write!(f, "exact"),
            ArithMode::Float => write!(f, "float"),
        }
    }
}

/// A coefficient: either an exact rational or a double.
///
/// Mixed-mode arithmetic demotes to float; exact stays exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    /// Parses a decimal literal (`-0.66008`, `3`, `+1.5`) into an exact rational.
    pub fn parse_decimal(s: &str) -> Result<Self, BhError> {
        let t = s.trim();
        let (neg, digits) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(BhError::ParseScalar(s.to_string()));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(BhError::ParseScalar(s.to_string()));
        }
        let mut num: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| BhError::ParseScalar(s.to_string()))?
        };
        let mut den = BigInt::from(1);
        for b in frac_part.bytes() {
            num = num * 10 + (b - b'0');
            den *= 10;
        }
        if neg {
            num = -num;
        }
        Ok(Scalar::Exact(BigRational::new(num, den)))
    }

    pub fn mode(&self) -> ArithMode {
        match self {
            Scalar::Exact(_) => ArithMode::Exact,
            Scalar::Float(_) => ArithMode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    /// Exact value if in exact mode.
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Converts to float mode.
    pub fn demote(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Converts a float scalar to the exact dyadic rational it represents.
    pub fn promote_exact(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(_) => Some(self.clone()),
            Scalar::Float(x) => BigRational::from_f64(*x).map(Scalar::Exact),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Float(self.to_f64() * other.to_f64()),
        }
    }

    /// Natural log of the absolute value; `-inf` for zero.
    ///
    /// In exact mode this stays accurate even when the rational itself
    /// overflows `f64`.
    pub fn ln_abs(&self) -> f64 {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom())
                }
            }
            Scalar::Float(x) => x.abs().ln(),
        }
    }
}

/// `ln |x|` for a big integer, exact to ~1 ulp at any magnitude.
pub fn ln_abs_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 900 {
        return x.to_f64().expect("bigint fits f64 range").abs().ln();
    }
    // Keep the top 64 bits as mantissa and account for the shift.
    let shift = bits - 64;
    let mantissa = (x.abs() >> shift).to_f64().expect("64-bit mantissa");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Rational to f64, robust to numerator/denominator outside f64 range.
fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    let ln = ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom());
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln.exp()
}
