//! Extreme-point parameterizations of the relevant polynomial unit balls,
//! the objective functions they induce, and the fixed catalog of extremal
//! polynomials P2 through P10.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::BhError;
use crate::norms;
use crate::poly::HomPoly2;

/// Quadratic `a z^2 + b w z + c w^2` on the bidisk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexQuad {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl ComplexQuad {
    pub fn from_real(a: f64, b: f64, c: f64) -> Self {
        ComplexQuad {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
        }
    }

    pub fn disk_norm(&self, tol: f64) -> f64 {
        norms::sup_norm_disk_complex(self.a, self.b, self.c, tol).value
    }

    /// `l_p` norm of the coefficient triple.
    pub fn lp_norm(&self, p: f64) -> f64 {
        (self.a.norm().powf(p) + self.b.norm().powf(p) + self.c.norm().powf(p)).powf(1.0 / p)
    }
}

/// An extreme point of one of the two unit balls under study.
#[derive(Clone, Debug)]
pub enum ExtremePoint {
    /// `+-(t x^2 - t y^2 +- 2 sqrt(t(1-t)) xy)`, `t` in `[1/2, 1]`.
    ChoiKim { t: f64, sign: i8, poly: HomPoly2 },
    /// `(s, sqrt(4|s||t|(1/(|s|+|t|)^2 - 1)), t)` for `(s, t)` in `G`.
    AronKlimek { s: f64, t: f64, quad: ComplexQuad },
}

/// The Choi-Kim extreme polynomial `t x^2 + sign 2 sqrt(t(1-t)) xy - t y^2`.
pub fn choi_kim_extreme(t: f64, sign: i8) -> Result<HomPoly2, BhError> {
    if !(0.5..=1.0).contains(&t) {
        return Err(BhError::Domain {
            name: "t",
            value: t,
            domain: "[1/2, 1]",
        });
    }
    let mid = sign.signum() as f64 * 2.0 * (t * (1.0 - t)).max(0.0).sqrt();
    HomPoly2::from_f64(2, &[t, mid, -t])
}

/// `f(t) = [2 t^{4/3} + (2 sqrt(t(1-t)))^{4/3}]^{3/4}` on `[0, 1]`; the
/// `l_{4/3}` coefficient norm along the Choi-Kim family.
pub fn f_of_t(t: f64) -> f64 {
    let mid = 2.0 * (t * (1.0 - t)).max(0.0).sqrt();
    (2.0 * t.powf(4.0 / 3.0) + mid.powf(4.0 / 3.0)).powf(0.75)
}

/// Membership in the Aron-Klimek parameter region `G`.
pub fn in_g(s: f64, t: f64) -> bool {
    let continuum = s.abs() + t.abs() < 1.0 && (s + t).abs() <= (s + t) * (s + t);
    let isolated = (s.abs() == 1.0 && t == 0.0) || (s == 0.0 && t.abs() == 1.0);
    continuum || isolated
}

/// The Aron-Klimek extreme point for `(s, t)` in `G`.
///
/// The radicand is written as `4|s||t| (1 - u^2) / u^2` with `u = |s| + |t|`,
/// which is exactly zero at the four isolated points; the origin limit along
/// the continuum is `(0, 1, 0)`.
pub fn aron_klimek_extreme(s: f64, t: f64) -> Result<ComplexQuad, BhError> {
    if !in_g(s, t) {
        return Err(BhError::Domain {
            name: "(s,t)",
            value: s,
            domain: "G",
        });
    }
    let u = s.abs() + t.abs();
    let mid = if u == 0.0 {
        1.0
    } else {
        let radicand = 4.0 * s.abs() * t.abs() * (1.0 - u * u) / (u * u);
        if radicand < -1e-12 {
            return Err(BhError::Domain {
                name: "radicand",
                value: radicand,
                domain: ">= 0",
            });
        }
        radicand.max(0.0).sqrt()
    };
    Ok(ComplexQuad::from_real(s, mid, t))
}

/// `Phi(s, t)`: the `l_{4/3}` coefficient norm of the Aron-Klimek point.
pub fn phi(s: f64, t: f64) -> Result<f64, BhError> {
    let q = aron_klimek_extreme(s, t)?;
    Ok(q.lp_norm(4.0 / 3.0))
}

/// Quotient `|(1, l, l, 1)|_{3/2} / ||P_{1,l}||` for the cubic family.
pub fn quotient_e(lambda: f64) -> Result<f64, BhError> {
    let denom = norms::pab_sup_norm(1.0, lambda);
    if denom == 0.0 {
        return Err(BhError::Domain {
            name: "lambda",
            value: lambda,
            domain: "P_{1,l} != 0",
        });
    }
    let numer = (2.0 + 2.0 * lambda.abs().powf(1.5)).powf(2.0 / 3.0);
    Ok(numer / denom)
}

/// Quotient `|(0, 1, 0, l, 0, 1, 0)|_{12/7} / ||Q_{1,l}||` for the sextic
/// family. The outer exponent is `7/12`, the conjugate of the `12/7` norm.
pub fn quotient_f(lambda: f64) -> f64 {
    let numer = (2.0 + lambda.abs().powf(12.0 / 7.0)).powf(7.0 / 12.0);
    numer / norms::q_lambda_sup_norm(lambda)
}

/// Argmax of `f` on `[1/2, 1]`, from its printed radical form; `~ 0.867835`.
pub fn t0() -> f64 {
    static T0: OnceLock<f64> = OnceLock::new();
    *T0.get_or_init(|| {
        let s129 = 129f64.sqrt();
        (2.0 * (107.0 + 9.0 * s129).cbrt() + (856.0 - 72.0 * s129).cbrt() + 16.0) / 36.0
    })
}

/// Identifier of a catalog polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogId {
    P2,
    P3,
    P5,
    P6,
    P7,
    P8,
    P10,
}

impl CatalogId {
    pub const ALL: [CatalogId; 7] = [
        CatalogId::P2,
        CatalogId::P3,
        CatalogId::P5,
        CatalogId::P6,
        CatalogId::P7,
        CatalogId::P8,
        CatalogId::P10,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogId::P2 => "P2",
            CatalogId::P3 => "P3",
            CatalogId::P5 => "P5",
            CatalogId::P6 => "P6",
            CatalogId::P7 => "P7",
            CatalogId::P8 => "P8",
            CatalogId::P10 => "P10",
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogId {
    type Err = BhError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "P2" => Ok(CatalogId::P2),
            "P3" => Ok(CatalogId::P3),
            "P5" => Ok(CatalogId::P5),
            "P6" => Ok(CatalogId::P6),
            "P7" => Ok(CatalogId::P7),
            "P8" => Ok(CatalogId::P8),
            "P10" => Ok(CatalogId::P10),
            other => Err(BhError::UnknownCatalogId(other.to_string())),
        }
    }
}

/// A catalog polynomial together with the values reported for it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: CatalogId,
    pub degree: usize,
    pub poly: HomPoly2,
    pub reported_norm: Option<f64>,
    pub reported_quotient: Option<f64>,
}

/// Builds a catalog entry. Terminating-decimal coefficients are stored
/// exactly; algebraically parameterized ones (t0, b1, lambda0) in floats
/// evaluated to full precision.
pub fn catalog(id: CatalogId) -> CatalogEntry {
    match id {
        CatalogId::P2 => CatalogEntry {
            id,
            degree: 2,
            poly: choi_kim_extreme(t0(), 1).expect("t0 in [1/2,1]"),
            reported_norm: Some(1.0),
            reported_quotient: Some(1.837373),
        },
        CatalogId::P3 => {
            let b1 = norms::b1();
            CatalogEntry {
                id,
                degree: 3,
                poly: HomPoly2::from_f64(3, &[1.0, b1, b1, 1.0]).expect("len"),
                reported_norm: Some(1.33848),
                reported_quotient: Some(2.5525),
            }
        }
        CatalogId::P5 => CatalogEntry {
            id,
            degree: 5,
            poly: HomPoly2::from_decimals(
                5,
                &[
                    "0.19462", "-0.66008", "-0.97833", "0.97833", "0.66008", "-0.19462",
                ],
            )
            .expect("literals"),
            reported_norm: Some(0.28617),
            reported_quotient: Some(6.83591),
        },
        CatalogId::P6 => {
            let (lambda0, _) = crate::optimize::lambda_roots();
            CatalogEntry {
                id,
                degree: 6,
                poly: HomPoly2::from_f64(6, &[0.0, 1.0, 0.0, lambda0, 0.0, 1.0, 0.0]).expect("len"),
                reported_norm: None,
                reported_quotient: Some(10.7809),
            }
        }
        CatalogId::P7 => CatalogEntry {
            id,
            degree: 7,
            poly: HomPoly2::from_decimals(
                7,
                &[
                    "-0.05126", "0.22070", "0.50537", "-0.71044", "-0.71044", "0.50537", "0.22070",
                    "-0.05126",
                ],
            )
            .expect("literals"),
            reported_norm: Some(0.07138),
            reported_quotient: Some(19.96308),
        },
        CatalogId::P8 => CatalogEntry {
            id,
            degree: 8,
            poly: HomPoly2::from_decimals(
                8,
                &[
                    "0", "-0.15258", "0", "0.64697", "0", "-0.64697", "0", "0.15258", "0",
                ],
            )
            .expect("literals"),
            reported_norm: Some(0.02985),
            reported_quotient: Some(33.36323),
        },
        CatalogId::P10 => CatalogEntry {
            id,
            degree: 10,
            poly: HomPoly2::from_decimals(
                10,
                &[
                    "0", "0.0938", "0", "-0.5938", "0", "1", "0", "-0.5938", "0", "0.0938", "0",
                ],
            )
            .expect("literals"),
            reported_norm: Some(0.01530),
            reported_quotient: Some(90.35556),
        },
    }
}

/// Convenience: the Choi-Kim point as a tagged extreme point.
pub fn choi_kim_point(t: f64, sign: i8) -> Result<ExtremePoint, BhError> {
    Ok(ExtremePoint::ChoiKim {
        t,
        sign,
        poly: choi_kim_extreme(t, sign)?,
    })
}

/// Convenience: the Aron-Klimek point as a tagged extreme point.
pub fn aron_klimek_point(s: f64, t: f64) -> Result<ExtremePoint, BhError> {
    Ok(ExtremePoint::AronKlimek {
        s,
        t,
        quad: aron_klimek_extreme(s, t)?,
    })
}
