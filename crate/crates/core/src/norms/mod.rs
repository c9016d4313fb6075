//! Sup-norm engines: univariate on an interval (via derivative root
//! isolation), bivariate homogeneous on the unit square, quadratics on the
//! complex disk, and closed forms for the cubic and sextic families.

mod sturm;

pub use sturm::{roots_in, SturmChain};

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::BhError;
use crate::poly::{Edge, HomPoly2, UniPoly};

/// Default tolerance for interval maximization.
pub const INTERVAL_TOL: f64 = 1e-10;
/// Default tolerance for disk maximization.
pub const DISK_TOL: f64 = 1e-8;

/// How a certified maximum was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxMethod {
    SturmNewton,
    GridRefine,
    ClosedForm,
}

impl MaxMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            MaxMethod::SturmNewton => "sturm-newton",
            MaxMethod::GridRefine => "grid-refine",
            MaxMethod::ClosedForm => "closed-form",
        }
    }
}

/// A maximization result: argmax, value, bracket half-width on the argmax,
/// and the method that produced it.
#[derive(Clone, Copy, Debug)]
pub struct CertifiedMax<A> {
    pub arg: A,
    pub value: f64,
    pub radius: f64,
    pub method: MaxMethod,
}

pub type CertifiedMax1 = CertifiedMax<f64>;
pub type CertifiedMax2 = CertifiedMax<(f64, f64)>;

/// All roots of `q'` in `[lo, hi]`, bracketed to width `<= tol`; multiple
/// roots are reported once. A constant `q` has none.
pub fn critical_points(q: &UniPoly, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let d = q.derivative();
    if d.is_zero() {
        return vec![];
    }
    roots_in(&d, lo, hi, tol)
}

/// Max of `|q|` over `[lo, hi]`: the critical points and both endpoints.
pub fn sup_norm_interval(q: &UniPoly, lo: f64, hi: f64, tol: f64) -> CertifiedMax1 {
    let mut best_arg = lo;
    let mut best = q.eval(lo).abs();
    let mut best_radius = 0.0;
    for (x, r) in [(hi, 0.0)].into_iter().chain(
        critical_points(q, lo, hi, tol)
            .into_iter()
            .map(|x| (x, tol)),
    ) {
        let v = q.eval(x).abs();
        if v > best {
            best = v;
            best_arg = x;
            best_radius = r;
        }
    }
    CertifiedMax1 {
        arg: best_arg,
        value: best,
        radius: best_radius,
        method: MaxMethod::SturmNewton,
    }
}

/// Sup of `|P|` over the square `[-1,1]^2`.
///
/// Homogeneity pushes the maximum to the boundary, and `P(x,-1)` is
/// `+-P(-x,1)`, so the two edges `y = 1` and `x = 1` suffice.
pub fn sup_norm_square(p: &HomPoly2, tol: f64) -> Result<CertifiedMax2, BhError> {
    if p.is_zero() {
        return Err(BhError::ZeroPolynomial);
    }
    let on_y1 = sup_norm_interval(&p.dehomogenize(Edge::YEqualsOne), -1.0, 1.0, tol);
    let on_x1 = sup_norm_interval(&p.dehomogenize(Edge::XEqualsOne), -1.0, 1.0, tol);
    let (arg, inner) = if on_y1.value >= on_x1.value {
        ((on_y1.arg, 1.0), on_y1)
    } else {
        ((1.0, on_x1.arg), on_x1)
    };
    Ok(CertifiedMax2 {
        arg,
        value: inner.value,
        radius: inner.radius,
        method: inner.method,
    })
}

/// Sup of `|a z^2 + b z + c|` over the closed unit disk, real coefficients.
pub fn sup_norm_disk_real(a: f64, b: f64, c: f64, tol: f64) -> CertifiedMax1 {
    sup_norm_disk_complex(
        Complex64::new(a, 0.0),
        Complex64::new(b, 0.0),
        Complex64::new(c, 0.0),
        tol,
    )
}

/// Sup of `|a z^2 + b z + c|` over the closed unit disk, complex coefficients.
///
/// Rotating `z` and `w` lets us take `a, c >= 0`; on `|z| = 1` the squared
/// modulus is a degree-2 trigonometric polynomial which is densely sampled
/// and refined by golden section.
pub fn sup_norm_disk_complex(a: Complex64, b: Complex64, c: Complex64, tol: f64) -> CertifiedMax1 {
    let (a0, b0, c0) = canonicalize_quad(a, b, c);
    let (br, bi) = (b0.re, b0.im);
    let constant = a0 * a0 + c0 * c0 + b0.norm_sqr();
    let g = |theta: f64| {
        constant
            + 2.0
                * (a0 * c0 * (2.0 * theta).cos()
                    + (a0 + c0) * br * theta.cos()
                    + (a0 - c0) * bi * theta.sin())
    };
    // Lipschitz bound on |g'| drives the sample count.
    let lip = 2.0 * (2.0 * a0 * c0 + (a0 + c0) * br.abs() + (a0 - c0).abs() * bi.abs());
    let span = std::f64::consts::TAU;
    let n = (((lip * span) / (1e-3 * constant.max(1.0))).ceil() as usize).clamp(4096, 1 << 18);
    let step = span / n as f64;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let v = g(i as f64 * step);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let theta0 = best_i as f64 * step;
    let theta_tol = (tol / (lip + 1.0)).max(1e-13);
    let (arg, gmax, radius) = golden_max(&g, theta0 - step, theta0 + step, theta_tol);
    CertifiedMax1 {
        arg: arg.rem_euclid(span),
        value: gmax.max(0.0).sqrt(),
        radius,
        method: MaxMethod::GridRefine,
    }
}

/// Rotates away the phases of `a` and `c`: `z -> z e^{-i arg(a)/2}`,
/// `w -> w e^{-i arg(c)/2}`. Moduli of all three coefficients are unchanged.
pub fn canonicalize_quad(a: Complex64, b: Complex64, c: Complex64) -> (f64, Complex64, f64) {
    let phase = Complex64::from_polar(1.0, -(a.arg() + c.arg()) / 2.0);
    (a.norm(), b * phase, c.norm())
}

/// Golden-section maximization on `[lo, hi]` to interval width `tol`.
/// Returns `(argmax, value, half_width)`.
pub(crate) fn golden_max(
    f: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let half = 0.5 * (hi - lo);
    if f1 > f2 {
        (x1, f1, half)
    } else {
        (x2, f2, half)
    }
}

/// Branch point `b_1` of the cubic-family norm formula, `~ -1.6692`.
pub fn b1() -> f64 {
    static B1: OnceLock<f64> = OnceLock::new();
    *B1.get_or_init(|| {
        let s3 = 3f64.sqrt();
        3.0 / 7.0
            * (3.0 - 2.0 * 9f64.cbrt() / (-12.0 + 7.0 * s3).cbrt()
                + 2.0 * (-36.0 + 21.0 * s3).cbrt())
    })
}

/// Closed-form sup norm of `a x^3 + b x^2 y + b x y^2 + a y^3` on the square.
pub fn pab_sup_norm(a: f64, b: f64) -> f64 {
    let upper = 3.0 - 2.0 * 3f64.sqrt();
    if a != 0.0 {
        let r = b / a;
        if b1() < r && r < upper {
            let inner = a - b * b / (3.0 * a)
                + 2.0 * b.powi(3) / (27.0 * a * a)
                + (2.0 * a / 27.0) * (-3.0 * r + r * r).powf(1.5);
            return inner.abs();
        }
    }
    (2.0 * a + 2.0 * b).abs()
}

/// Threshold below which the sextic-family quintic has interior critical
/// points: `-2 sqrt(5) / 3`.
pub fn q_lambda_critical_threshold() -> f64 {
    -2.0 * 5f64.sqrt() / 3.0
}

/// Value of `x^5 + lambda x^3 + x` at its first critical point
/// `x0 = sqrt((-3 lambda - sqrt(9 lambda^2 - 20)) / 10)`.
/// Only defined for `lambda <= -2 sqrt(5) / 3`.
pub fn q_lambda_at_x0(lambda: f64) -> f64 {
    let s = (9.0 * lambda * lambda - 20.0).max(0.0).sqrt();
    let x0 = ((-3.0 * lambda - s) / 10.0).max(0.0).sqrt();
    let x2 = x0 * x0;
    x0 * (x2 * x2 + lambda * x2 + 1.0)
}

/// Closed-form sup norm of `x^5 y + lambda x^3 y^3 + x y^5` on the square,
/// equivalently of `x^5 + lambda x^3 + x` on `[0, 1]`.
///
/// Above the critical threshold the quintic is monotone and the norm is
/// `|2 + lambda|`; below it, the interior critical value competes. At the
/// branch boundary both formulas are evaluated and the max taken.
pub fn q_lambda_sup_norm(lambda: f64) -> f64 {
    let endpoint = (2.0 + lambda).abs();
    if lambda > q_lambda_critical_threshold() {
        endpoint
    } else {
        endpoint.max(q_lambda_at_x0(lambda).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomPoly2;

    fn uni(coeffs: &[f64]) -> UniPoly {
        UniPoly::new(coeffs.to_vec())
    }

    #[test]
    fn critical_points_of_cubic() {
        let q = uni(&[0.0, -1.0, 0.0, 1.0]); // x^3 - x
        let pts = critical_points(&q, -1.0, 1.0, 1e-12);
        let r = 1.0 / 3f64.sqrt();
        assert_eq!(pts.len(), 2);
        assert!((pts[0] + r).abs() < 1e-10 && (pts[1] - r).abs() < 1e-10);
    }

    #[test]
    fn critical_points_of_quintic_match_radical() {
        // q = x^5 + lambda x^3 + x, lambda = -2.1; q' = 5x^4 + 3 lambda x^2 + 1.
        let lambda = -2.1;
        let q = uni(&[0.0, 1.0, 0.0, lambda, 0.0, 1.0]);
        let pts = critical_points(&q, -1.0, 1.0, 1e-12);
        let disc = (9.0 * lambda * lambda - 20.0).sqrt();
        let x0 = ((-3.0 * lambda - disc) / 10.0).sqrt();
        // x1 = sqrt((-3 lambda + disc)/10) > 1 lies outside the interval.
        assert_eq!(pts.len(), 2);
        assert!((pts[0] + x0).abs() < 1e-10);
        assert!((pts[1] - x0).abs() < 1e-10);
    }

    #[test]
    fn critical_points_of_parabola_and_constant() {
        let q = uni(&[0.0, 0.0, 1.0]); // x^2
        let pts = critical_points(&q, -1.0, 1.0, 1e-12);
        assert_eq!(pts.len(), 1);
        assert!(pts[0].abs() < 1e-12);
        assert!(critical_points(&uni(&[3.0]), -1.0, 1.0, 1e-12).is_empty());
    }

    #[test]
    fn sup_norm_interval_of_parabola() {
        let q = uni(&[0.0, 0.0, 1.0]);
        let m = sup_norm_interval(&q, -1.0, 1.0, 1e-10);
        assert!((m.value - 1.0).abs() < 1e-14);
        assert_eq!(m.arg.abs(), 1.0);
    }

    #[test]
    fn sup_norm_interval_on_dehomogenized_catalog_entries() {
        let p3 = HomPoly2::from_f64(3, &[1.0, b1(), b1(), 1.0]).unwrap();
        let q3 = p3.dehomogenize(crate::poly::Edge::YEqualsOne);
        // The reference rounds to 5 decimals (and was evaluated at a rounded
        // b1), hence the 2e-5 window.
        let m3 = sup_norm_interval(&q3, -1.0, 1.0, 1e-10);
        assert!(
            (m3.value - 1.33848).abs() < 2e-5,
            "P3 edge norm {}",
            m3.value
        );

        let p5 = HomPoly2::from_decimals(
            5,
            &[
                "0.19462", "-0.66008", "-0.97833", "0.97833", "0.66008", "-0.19462",
            ],
        )
        .unwrap();
        let q5 = p5.dehomogenize(crate::poly::Edge::YEqualsOne);
        let m5 = sup_norm_interval(&q5, -1.0, 1.0, 1e-10);
        assert!(
            (m5.value - 0.28617).abs() < 1e-5,
            "P5 edge norm {}",
            m5.value
        );
        assert!(m5.radius <= 1e-10);
        assert_eq!(m5.method, MaxMethod::SturmNewton);
    }

    #[test]
    fn sup_norm_square_of_monomial() {
        let p = HomPoly2::from_f64(2, &[1.0, 0.0, 0.0]).unwrap();
        let m = sup_norm_square(&p, 1e-10).unwrap();
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sup_norm_square_rejects_zero() {
        assert!(matches!(
            sup_norm_square(&HomPoly2::zero(3), 1e-10),
            Err(BhError::ZeroPolynomial)
        ));
    }

    #[test]
    fn disk_norm_monomial_and_binomial() {
        let m = sup_norm_disk_real(1.0, 0.0, 0.0, 1e-8);
        assert!((m.value - 1.0).abs() < 1e-9);
        let b = sup_norm_disk_real(1.0, 0.0, 1.0, 1e-8);
        assert!((b.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn disk_norm_matches_dense_sampling_oracle() {
        // Independent oracle: brute-force modulus over 10^6 boundary points.
        let (a, b, c) = (
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(2.0, 0.0),
        );
        let mut oracle: f64 = 0.0;
        let n = 1_000_000;
        for i in 0..n {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            let z = Complex64::from_polar(1.0, t);
            oracle = oracle.max((a * z * z + b * z + c).norm());
        }
        let got = sup_norm_disk_complex(a, b, c, 1e-10);
        assert!(
            (got.value - oracle).abs() < 1e-8,
            "engine {} vs oracle {oracle}",
            got.value
        );
    }

    #[test]
    fn disk_norm_invariant_under_canonicalization() {
        let (a, b, c) = (
            Complex64::new(0.7, -0.4),
            Complex64::new(-0.3, 1.1),
            Complex64::new(-0.9, 0.2),
        );
        let direct = sup_norm_disk_complex(a, b, c, 1e-10).value;
        let (a0, b0, c0) = canonicalize_quad(a, b, c);
        let canon =
            sup_norm_disk_complex(Complex64::new(a0, 0.0), b0, Complex64::new(c0, 0.0), 1e-10)
                .value;
        assert!((direct - canon).abs() < 1e-8);
    }

    #[test]
    fn aron_klimek_point_has_unit_disk_norm() {
        let (s, t) = (0.25f64, -0.25f64);
        let mid = (4.0 * s.abs() * t.abs() * (1.0 / (s.abs() + t.abs()).powi(2) - 1.0)).sqrt();
        assert!((mid - 0.75f64.sqrt()).abs() < 1e-15);
        let m = sup_norm_disk_real(s, mid, t, 1e-8);
        assert!((m.value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn b1_matches_published_rounding() {
        assert!((b1() - (-1.6692)).abs() < 1e-4, "b1 = {}", b1());
    }

    #[test]
    fn pab_norm_branches() {
        // b/a = 0 is the "otherwise" branch: |2a + 2b| = 2.
        assert!((pab_sup_norm(1.0, 0.0) - 2.0).abs() < 1e-15);
        // At the b1 boundary the two branches agree, giving ~1.33848.
        let at_b1 = pab_sup_norm(1.0, b1());
        assert!((at_b1 - 1.33848).abs() < 1e-4, "norm {at_b1}");
        let outside = (2.0 + 2.0 * b1()).abs();
        assert!((at_b1 - outside).abs() < 1e-9);
        let inside = pab_sup_norm(1.0, b1() + 1e-9);
        assert!((at_b1 - inside).abs() < 1e-7);
    }

    #[test]
    fn pab_norm_cross_checks_square_engine() {
        let p = HomPoly2::from_f64(3, &[1.0, -1.0, -1.0, 1.0]).unwrap();
        let numeric = sup_norm_square(&p, 1e-12).unwrap().value;
        assert!((pab_sup_norm(1.0, -1.0) - numeric).abs() < 1e-8);
    }

    #[test]
    fn q_lambda_norm_branches() {
        assert!((q_lambda_sup_norm(0.0) - 2.0).abs() < 1e-15);
        // At lambda = -2 the engine and closed form agree.
        let p = HomPoly2::from_f64(6, &[0.0, 1.0, 0.0, -2.0, 0.0, 1.0, 0.0]).unwrap();
        let numeric = sup_norm_square(&p, 1e-12).unwrap().value;
        assert!((q_lambda_sup_norm(-2.0) - numeric).abs() < 1e-8);
    }
}
