//! Reusable check batteries shared by the property and acceptance suites.
//! Each returns `Err(message)` on the first violated assertion so callers
//! can aggregate or fail fast as they prefer.

use super::Rng;
use num_complex::Complex64;

use bhkit::bounds::critical_exponent;
use bhkit::extremals::{aron_klimek_extreme, catalog, choi_kim_extreme, CatalogId};
use bhkit::norms::{
    pab_sup_norm, q_lambda_sup_norm, sup_norm_disk_complex, sup_norm_disk_real, sup_norm_square,
};
use bhkit::poly::HomPoly2;
use bhkit::scalar::Scalar;
use bhkit::verify::reduction_surrogate;

pub fn pab_cross_engine(cases: usize) -> Result<(), String> {
    let mut rng = Rng::new(0x5eed_0002);
    for _ in 0..cases {
        let a = rng.range(-2.0, 2.0);
        let b = rng.range(-4.0, 2.0);
        if a == 0.0 {
            continue;
        }
        let closed = pab_sup_norm(a, b);
        let p = HomPoly2::from_f64(3, &[a, b, b, a]).unwrap();
        let numeric = sup_norm_square(&p, 1e-12).unwrap().value;
        if (closed - numeric).abs() > 1e-8 * numeric.max(1.0) {
            return Err(format!(
                "(a,b)=({a},{b}): closed {closed} vs numeric {numeric}"
            ));
        }
    }
    Ok(())
}

pub fn q_lambda_cross_engine(cases: usize) -> Result<(), String> {
    let mut rng = Rng::new(0x5eed_0003);
    for _ in 0..cases {
        let lambda = rng.range(-4.0, 1.0);
        let closed = q_lambda_sup_norm(lambda);
        let p = HomPoly2::from_f64(6, &[0.0, 1.0, 0.0, lambda, 0.0, 1.0, 0.0]).unwrap();
        let numeric = sup_norm_square(&p, 1e-12).unwrap().value;
        if (closed - numeric).abs() > 1e-8 * numeric.max(1.0) {
            return Err(format!(
                "lambda={lambda}: closed {closed} vs numeric {numeric}"
            ));
        }
    }
    Ok(())
}

pub fn extreme_points_unit_norm() -> Result<(), String> {
    let mut rng = Rng::new(0x5eed_0006);
    for i in 0..=100 {
        let t = if i <= 2 {
            [0.5, 0.75, 1.0][i]
        } else {
            rng.range(0.5, 1.0)
        };
        for sign in [1i8, -1] {
            let p = choi_kim_extreme(t, sign).map_err(|e| e.to_string())?;
            let n = sup_norm_square(&p, 1e-12).unwrap().value;
            if (n - 1.0).abs() > 1e-8 {
                return Err(format!("choi-kim t={t} sign={sign}: norm {n}"));
            }
        }
    }
    for i in 0..=100 {
        let s = if i == 0 {
            3f64.sqrt() / 6.0
        } else {
            rng.range(1e-3, 0.4999)
        };
        let q = aron_klimek_extreme(s, -s).map_err(|e| e.to_string())?;
        let n = q.disk_norm(1e-9);
        if (n - 1.0).abs() > 1e-6 {
            return Err(format!("aron-klimek s={s}: norm {n}"));
        }
    }
    for (s, t) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
        let q = aron_klimek_extreme(s, t).map_err(|e| e.to_string())?;
        let n = q.disk_norm(1e-9);
        if (n - 1.0).abs() > 1e-6 {
            return Err(format!("isolated ({s},{t}): norm {n}"));
        }
    }
    Ok(())
}

pub fn lp_monotone_and_homogeneous(cases: usize) -> Result<(), String> {
    let mut rng = Rng::new(0x5eed_000c);
    for _ in 0..cases {
        let deg = 1 + (rng.next_u64() as usize) % 8;
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.range(-1.0, 1.0)).collect();
        let p = HomPoly2::from_f64(deg, &coeffs).unwrap();
        if p.is_zero() {
            continue;
        }
        let (lo, hi) = {
            let a = rng.range(0.5, 3.0);
            let b = rng.range(0.5, 3.0);
            (a.min(b), a.max(b))
        };
        let nlo = p.lp_norm(lo).unwrap();
        let nhi = p.lp_norm(hi).unwrap();
        if nlo < nhi - 1e-12 {
            return Err(format!("monotonicity: |P|_{lo} = {nlo} < |P|_{hi} = {nhi}"));
        }
        let c = rng.range(-3.0, 3.0);
        if c != 0.0 {
            let scaled = p.scale(&Scalar::from_f64(c)).lp_norm(lo).unwrap();
            if (scaled - c.abs() * nlo).abs() > 1e-12 * (c.abs() * nlo).max(1.0) {
                return Err(format!(
                    "homogeneity at c={c}: {scaled} vs {}",
                    c.abs() * nlo
                ));
            }
        }
    }
    Ok(())
}

pub fn exact_vs_float_log_norms(n_max: u32) -> Result<(), String> {
    for id in [CatalogId::P5, CatalogId::P7, CatalogId::P8, CatalogId::P10] {
        let base = catalog(id).poly;
        let base_f = base.demote();
        let mut exact = base.clone();
        let mut float = base_f.clone();
        for n in 1..=n_max {
            if n > 1 {
                exact = exact.multiply(&base);
                float = float.multiply(&base_f);
            }
            let (num, den) = critical_exponent(exact.degree());
            let p = num as f64 / den as f64;
            let le = exact.log_lp_norm(p).unwrap();
            let lf = float.log_lp_norm(p).unwrap();
            if (le - lf).abs() > 1e-9 * le.abs().max(1.0) {
                return Err(format!("{id} n={n}: exact {le} vs float {lf}"));
            }
        }
    }
    Ok(())
}

pub fn surrogate_preservation(cases: usize) -> Result<(), String> {
    let mut rng = Rng::new(0x5eed_000a);
    for i in 0..cases {
        let (a, b, c) = (
            Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)),
            Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)),
            Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)),
        );
        let s = reduction_surrogate(a, b, c);
        let original_l43 =
            (a.norm().powf(4.0 / 3.0) + b.norm().powf(4.0 / 3.0) + c.norm().powf(4.0 / 3.0))
                .powf(0.75);
        if (s.l43_norm() - original_l43).abs() > 1e-10 {
            return Err(format!("#{i}: l43 {} vs {original_l43}", s.l43_norm()));
        }
        let complex_norm = sup_norm_disk_complex(a, b, c, 1e-9).value;
        if s.disk_norm_sq() > complex_norm * complex_norm + 1e-7 {
            return Err(format!(
                "#{i}: 4a'^2+b'^2 = {} exceeds ||.||^2 = {}",
                s.disk_norm_sq(),
                complex_norm * complex_norm
            ));
        }
        if i % 20 == 0 {
            let engine = sup_norm_disk_real(s.triple[0], s.triple[1], s.triple[2], 1e-9).value;
            if engine > complex_norm + 1e-7 {
                return Err(format!("#{i}: engine {engine} vs {complex_norm}"));
            }
            if (engine - s.disk_norm_sq().sqrt()).abs() > 1e-7 {
                return Err(format!("#{i}: engine {engine} vs closed form"));
            }
        }
    }
    Ok(())
}
