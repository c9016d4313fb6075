//! Bivariate homogeneous polynomials: dense coefficient storage, convolution
//! products, powers, and stable `l_p` coefficient norms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::BhError;
use crate::scalar::{ArithMode, Scalar};

/// Degree-`m` homogeneous polynomial in two variables.
///
/// Coefficient `k` multiplies `x^(m-k) y^k`, matching the descending-powers
/// listing order used throughout.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly2 {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl HomPoly2 {
    /// Validates that `coeffs` has exactly `degree + 1` entries.
    pub fn new(degree: usize, coeffs: Vec<Scalar>) -> Result<Self, BhError> {
        if coeffs.len() != degree + 1 {
            return Err(BhError::CoeffLength {
                degree,
                expected: degree + 1,
                got: coeffs.len(),
            });
        }
        Ok(HomPoly2 { degree, coeffs })
    }

    pub fn from_f64(degree: usize, coeffs: &[f64]) -> Result<Self, BhError> {
        Self::new(
            degree,
            coeffs.iter().map(|&x| Scalar::from_f64(x)).collect(),
        )
    }

    /// Exact polynomial from decimal-literal coefficients.
    pub fn from_decimals(degree: usize, coeffs: &[&str]) -> Result<Self, BhError> {
        let parsed: Result<Vec<_>, _> = coeffs.iter().map(|s| Scalar::parse_decimal(s)).collect();
        Self::new(degree, parsed?)
    }

    pub fn zero(degree: usize) -> Self {
        HomPoly2 {
            degree,
            coeffs: vec![Scalar::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Exact iff every coefficient is exact.
    pub fn mode(&self) -> ArithMode {
        if self.coeffs.iter().all(|c| c.mode() == ArithMode::Exact) {
            ArithMode::Exact
        } else {
            ArithMode::Float
        }
    }

    pub fn demote(&self) -> HomPoly2 {
        HomPoly2 {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(Scalar::demote).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomPoly2 {
        HomPoly2 {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let m = self.degree;
        let mut acc = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c.to_f64() * x.powi((m - k) as i32) * y.powi(k as i32);
        }
        acc
    }

    /// Coefficient sum; both polynomials must be homogeneous of the same degree.
    pub fn add(&self, other: &HomPoly2) -> Result<HomPoly2, BhError> {
        if self.degree != other.degree {
            return Err(BhError::CoeffLength {
                degree: self.degree,
                expected: self.degree + 1,
                got: other.degree + 1,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(HomPoly2 {
            degree: self.degree,
            coeffs,
        })
    }

    /// Coefficient convolution; exact whenever both operands are exact.
    pub fn multiply(&self, other: &HomPoly2) -> HomPoly2 {
        let degree = self.degree + other.degree;
        if self.mode() == ArithMode::Exact && other.mode() == ArithMode::Exact {
            let (na, da) = scaled_integers(&self.coeffs);
            let (nb, db) = scaled_integers(&other.coeffs);
            let mut conv = vec![BigInt::zero(); degree + 1];
            for (i, a) in na.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in nb.iter().enumerate() {
                    if !b.is_zero() {
                        conv[i + j] += a * b;
                    }
                }
            }
            let den = da * db;
            let coeffs = conv
                .into_iter()
                .map(|n| Scalar::Exact(BigRational::new(n, den.clone())))
                .collect();
            HomPoly2 { degree, coeffs }
        } else {
            let a = self.coeffs_f64();
            let b = other.coeffs_f64();
            let mut conv = vec![0.0f64; degree + 1];
            for (i, &ai) in a.iter().enumerate() {
                for (j, &bj) in b.iter().enumerate() {
                    conv[i + j] += ai * bj;
                }
            }
            HomPoly2 {
                degree,
                coeffs: conv.into_iter().map(Scalar::from_f64).collect(),
            }
        }
    }

    /// `self^n` by repeated multiplication, `n >= 1`.
    pub fn power(&self, n: u32) -> HomPoly2 {
        assert!(n >= 1, "power requires n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `(sum_k |c_k|^p)^(1/p)` with compensated summation.
    pub fn lp_norm(&self, p: f64) -> Result<f64, BhError> {
        if self.is_zero() {
            return Err(BhError::ZeroPolynomial);
        }
        if !p.is_finite() || p <= 0.0 {
            return Err(BhError::InvalidExponent(p));
        }
        let sum = kahan_sum(self.coeffs.iter().map(|c| c.to_f64().abs().powf(p)));
        Ok(sum.powf(1.0 / p))
    }

    /// `log` of the `l_p` norm via log-sum-exp; finite even when the norm
    /// itself overflows `f64`.
    pub fn log_lp_norm(&self, p: f64) -> Result<f64, BhError> {
        if self.is_zero() {
            return Err(BhError::ZeroPolynomial);
        }
        if !p.is_finite() || p <= 0.0 {
            return Err(BhError::InvalidExponent(p));
        }
        let logs: Vec<f64> = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| p * c.ln_abs())
            .collect();
        Ok(log_sum_exp(&logs) / p)
    }

    /// Restriction to an edge of the square, as a univariate polynomial.
    pub fn dehomogenize(&self, edge: Edge) -> UniPoly {
        let m = self.degree;
        let coeffs: Vec<f64> = match edge {
            // P(x, 1) = sum_k c_k x^(m-k): ascending coefficient j is c_(m-j).
            Edge::YEqualsOne => (0..=m).map(|j| self.coeffs[m - j].to_f64()).collect(),
            // P(1, y) = sum_k c_k y^k.
            Edge::XEqualsOne => self.coeffs_f64(),
        };
        UniPoly::new(coeffs)
    }
}

/// Which edge of the square a bivariate polynomial is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    YEqualsOne,
    XEqualsOne,
}

/// Clears denominators: returns numerators over a common denominator.
fn scaled_integers(coeffs: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let rats: Vec<&BigRational> = coeffs
        .iter()
        .map(|c| c.as_exact().expect("exact coefficients"))
        .collect();
    let mut den = BigInt::one();
    for r in &rats {
        den = den.lcm(r.denom());
    }
    let nums = rats
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();
    (nums, den)
}

pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for x in values {
        let y = x - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

pub(crate) fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let sum: f64 = kahan_sum(logs.iter().map(|&x| (x - m).exp()));
    m + sum.ln()
}

/// Univariate real polynomial, ascending coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<f64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::new(vec![]);
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i + 1) as f64)
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}
