//! Lower bounds on the Bohnenblust-Hille constants: the coefficient-norm /
//! sup-norm quotient at the critical exponent 2m/(m+1), and the power-trick
//! series that push a fixed base polynomial to high degree.
//!
//! All large-n accumulation happens in the log domain: coefficients of the
//! degree-600 powers reach ~1e160 and their p-th power sums overflow f64,
//! while `||P||^n` can underflow. Neither quantity is ever formed linearly.

use num_integer::Integer;

use crate::error::BhError;
use crate::extremals::{catalog, CatalogId};
use crate::norms::sup_norm_square;
use crate::poly::HomPoly2;
use crate::scalar::ArithMode;

/// Base sup norms are computed once per series at this tolerance; their
/// error budget is amplified by n before the mn-th root compresses it back.
const BASE_NORM_TOL: f64 = 1e-12;

/// The critical exponent `2m/(m+1)` in lowest terms.
pub fn critical_exponent(degree: usize) -> (u64, u64) {
    let num = 2 * degree as u64;
    let den = degree as u64 + 1;
    let g = num.gcd(&den);
    (num / g, den / g)
}

/// One quotient evaluation `|P|_{2m/(m+1)} / ||P||`.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub poly_id: Option<String>,
    pub degree: usize,
    pub p_num: u64,
    pub p_den: u64,
    pub coeff_norm: f64,
    pub sup_norm: f64,
    pub quotient: f64,
    pub mode: ArithMode,
}

/// Computes the BH quotient of a nonzero polynomial of degree >= 1.
pub fn bh_quotient(p: &HomPoly2) -> Result<QuotientReport, BhError> {
    bh_quotient_tagged(p, None)
}

pub fn bh_quotient_tagged(
    p: &HomPoly2,
    poly_id: Option<String>,
) -> Result<QuotientReport, BhError> {
    let m = p.degree();
    if m == 0 {
        return Err(BhError::DegreeZero);
    }
    let (p_num, p_den) = critical_exponent(m);
    let exponent = p_num as f64 / p_den as f64;
    let coeff_norm = p.lp_norm(exponent)?;
    let sup_norm = sup_norm_square(p, BASE_NORM_TOL)?.value;
    Ok(QuotientReport {
        poly_id,
        degree: m,
        p_num,
        p_den,
        coeff_norm,
        sup_norm,
        quotient: coeff_norm / sup_norm,
        mode: p.mode(),
    })
}

/// One record of a power-trick series.
#[derive(Clone, Copy, Debug)]
pub struct PowerBound {
    pub n: u32,
    pub degree: usize,
    /// `log |coeffs(P^n)|_{2mn/(mn+1)} - n log ||P||`.
    pub log_bound: f64,
    /// `exp(log_bound / (mn))`, the per-degree root of the bound.
    pub per_degree_root: f64,
}

/// Lower bound on `D_{R,mn}(2)` from the n-th power of a degree-m base.
pub fn power_lower_bound(p: &HomPoly2, n: u32) -> Result<PowerBound, BhError> {
    if p.degree() == 0 {
        return Err(BhError::DegreeZero);
    }
    let log_sup = sup_norm_square(p, BASE_NORM_TOL)?.value.ln();
    power_bound_record(&p.power(n), n, log_sup)
}

fn power_bound_record(pn: &HomPoly2, n: u32, base_log_sup: f64) -> Result<PowerBound, BhError> {
    let mn = pn.degree();
    let (num, den) = critical_exponent(mn);
    let log_lp = pn.log_lp_norm(num as f64 / den as f64)?;
    let log_bound = log_lp - n as f64 * base_log_sup;
    Ok(PowerBound {
        n,
        degree: mn,
        log_bound,
        per_degree_root: (log_bound / mn as f64).exp(),
    })
}

/// A per-base series of power-trick bounds.
#[derive(Clone, Debug)]
pub struct PowerBoundSeries {
    pub base_id: Option<String>,
    pub base_degree: usize,
    pub base_log_sup_norm: f64,
    pub records: Vec<PowerBound>,
}

/// Evaluates [`power_lower_bound`] at `n = 1, 1 + stride, ... <= n_max`,
/// reusing the running product so each step is one multiplication.
pub fn hyper_series(
    p: &HomPoly2,
    n_max: u32,
    stride: u32,
    base_id: Option<String>,
) -> Result<PowerBoundSeries, BhError> {
    if p.degree() == 0 {
        return Err(BhError::DegreeZero);
    }
    let stride = stride.max(1);
    let base_log_sup = sup_norm_square(p, BASE_NORM_TOL)?.value.ln();
    let step = if stride == 1 {
        p.clone()
    } else {
        p.power(stride)
    };
    let mut records = Vec::new();
    let mut current = p.clone();
    let mut n = 1u32;
    loop {
        records.push(power_bound_record(&current, n, base_log_sup)?);
        if n + stride > n_max {
            break;
        }
        current = current.multiply(&step);
        n += stride;
    }
    Ok(PowerBoundSeries {
        base_id,
        base_degree: p.degree(),
        base_log_sup_norm: base_log_sup,
        records,
    })
}

/// Best per-degree root achievable at `degree` from the catalog bases whose
/// degree divides it. `None` when no base reaches the degree.
pub fn best_known_bound(degree: usize) -> Option<(CatalogId, u32, f64)> {
    let mut best: Option<(CatalogId, u32, f64)> = None;
    for id in CatalogId::ALL {
        let entry = catalog(id);
        if degree == 0 || !degree.is_multiple_of(entry.degree) {
            continue;
        }
        let n = (degree / entry.degree) as u32;
        let bound = power_lower_bound(&entry.poly, n).expect("catalog base is valid");
        if best
            .map(|(_, _, r)| bound.per_degree_root > r)
            .unwrap_or(true)
        {
            best = Some((id, n, bound.per_degree_root));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomPoly2;

    #[test]
    fn critical_exponent_reduces() {
        assert_eq!(critical_exponent(2), (4, 3));
        assert_eq!(critical_exponent(3), (3, 2));
        assert_eq!(critical_exponent(5), (5, 3));
        assert_eq!(critical_exponent(6), (12, 7));
        assert_eq!(critical_exponent(7), (7, 4));
        assert_eq!(critical_exponent(600), (1200, 601));
    }

    #[test]
    fn quotient_of_monomial_is_one() {
        let p = HomPoly2::from_f64(4, &[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let r = bh_quotient(&p).unwrap();
        assert!((r.quotient - 1.0).abs() < 1e-12);
        assert_eq!((r.p_num, r.p_den), (8, 5));
    }

    #[test]
    fn quotient_rejects_constants_and_zero() {
        let c = HomPoly2::from_f64(0, &[2.0]).unwrap();
        assert!(matches!(bh_quotient(&c), Err(BhError::DegreeZero)));
        assert!(matches!(
            bh_quotient(&HomPoly2::zero(3)),
            Err(BhError::ZeroPolynomial)
        ));
    }

    #[test]
    fn quotient_of_p5_matches_published_value() {
        let p5 = catalog(CatalogId::P5);
        let r = bh_quotient(&p5.poly).unwrap();
        assert!((r.sup_norm - 0.28617).abs() < 2e-5, "norm {}", r.sup_norm);
        assert!(
            (r.quotient - 6.83591).abs() / 6.83591 < 5e-3,
            "quotient {}",
            r.quotient
        );
        assert_eq!(r.mode, ArithMode::Exact);
    }

    #[test]
    fn power_bound_at_n1_is_log_quotient() {
        let p5 = catalog(CatalogId::P5);
        let b = power_lower_bound(&p5.poly, 1).unwrap();
        let q = bh_quotient(&p5.poly).unwrap();
        assert!((b.log_bound - q.quotient.ln()).abs() < 1e-10);
        assert_eq!(b.degree, 5);
    }

    #[test]
    fn series_is_incremental_and_strictly_increasing_in_n() {
        let p5 = catalog(CatalogId::P5);
        let s = hyper_series(&p5.poly, 10, 1, None).unwrap();
        assert_eq!(s.records.len(), 10);
        for (i, r) in s.records.iter().enumerate() {
            assert_eq!(r.n, i as u32 + 1);
            assert_eq!(r.degree, 5 * (i + 1));
        }
        // Spot-check an incremental record against the direct power.
        let direct = power_lower_bound(&p5.poly, 7).unwrap();
        let inc = s.records[6];
        assert!((direct.per_degree_root - inc.per_degree_root).abs() < 1e-12);
    }

    #[test]
    fn series_respects_stride() {
        let p5 = catalog(CatalogId::P5);
        let s = hyper_series(&p5.poly, 10, 3, None).unwrap();
        let ns: Vec<u32> = s.records.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![1, 4, 7, 10]);
    }

    #[test]
    fn per_degree_root_is_scale_invariant() {
        let p = HomPoly2::from_f64(3, &[0.4, -1.2, 0.3, 0.9]).unwrap();
        let base = power_lower_bound(&p, 6).unwrap().per_degree_root;
        for c in [0.03, -2.5, 117.0] {
            let scaled = p.scale(&crate::scalar::Scalar::from_f64(c));
            let got = power_lower_bound(&scaled, 6).unwrap().per_degree_root;
            assert!((got - base).abs() < 1e-9, "c = {c}: {got} vs {base}");
        }
    }

    #[test]
    fn p5_series_reaches_published_endpoint() {
        let p5 = catalog(CatalogId::P5);
        let s = hyper_series(&p5.poly, 120, 1, Some("P5".into())).unwrap();
        let last = s.records.last().unwrap();
        assert_eq!((last.n, last.degree), (120, 600));
        assert!(
            (last.per_degree_root - 1.54987).abs() < 1e-3,
            "{}",
            last.per_degree_root
        );
        // Against the direct endpoint computation.
        let direct = power_lower_bound(&p5.poly, 120).unwrap();
        assert!((last.per_degree_root - direct.per_degree_root).abs() < 1e-12);
    }

    #[test]
    fn power_trick_improves_on_the_degree_two_seed() {
        // Per-degree scale: the n = 300 bound beats the n = 1 quotient root.
        let p2 = catalog(CatalogId::P2);
        let big = power_lower_bound(&p2.poly, 300).unwrap().per_degree_root;
        let seed = power_lower_bound(&p2.poly, 1).unwrap().per_degree_root;
        assert!((seed - 1.837373f64.sqrt()).abs() < 1e-5);
        assert!(big > seed, "{big} vs {seed}");
        assert!(big >= 1.36117 - 1e-5);
    }

    #[test]
    fn best_known_bound_at_600_comes_from_the_decic() {
        let (id, n, root) = best_known_bound(600).unwrap();
        assert_eq!((id, n), (CatalogId::P10, 60));
        assert!((root - 1.65171).abs() < 1e-3, "{root}");
    }

    #[test]
    fn best_known_bound_composes_catalog() {
        // Degree 7 is reachable only through P7 itself.
        let (id, n, root) = best_known_bound(7).unwrap();
        assert_eq!(id, CatalogId::P7);
        assert_eq!(n, 1);
        let q = bh_quotient(&catalog(CatalogId::P7).poly).unwrap();
        assert!((root - q.quotient.powf(1.0 / 7.0)).abs() < 1e-10);
        assert!((root - 1.5336).abs() < 1e-3);

        // Degree 2: P2 itself, per-degree root of the quotient f(t0).
        let (id2, n2, root2) = best_known_bound(2).unwrap();
        assert_eq!((id2, n2), (CatalogId::P2, 1));
        assert!((root2 - 1.837373f64.sqrt()).abs() < 1e-5);

        // Degrees no base divides are explicit misses.
        assert!(best_known_bound(11).is_none());
        assert!(best_known_bound(0).is_none());
    }
}
