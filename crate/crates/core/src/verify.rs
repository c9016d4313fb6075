//! Numerical certification that the scalar inequalities behind the
//! complex-to-real reduction hold with margin >= 1 on their triangle
//! domains, plus the constructive real surrogate the reduction produces.

use num_complex::Complex64;

use crate::error::BhError;
use crate::norms::canonicalize_quad;

/// The constant `k ~ 2.828` used by the k-shaped surrogates, taken as
/// `2 sqrt(2)` (which makes `2 + k^{4/3} = 6` exact). Overridable wherever
/// a `k` parameter is accepted; the certification suites validate the choice.
pub fn solve_k() -> f64 {
    2.0 * std::f64::consts::SQRT_2
}

fn l43_pair(x: f64, y: f64) -> f64 {
    (x.powf(4.0 / 3.0) + y.powf(4.0 / 3.0)).powf(1.5)
}

fn l43_triple(x: f64, y: f64) -> f64 {
    (x.powf(4.0 / 3.0) + y.powf(4.0 / 3.0) + 1.0).powf(1.5)
}

/// Case (1) target on `0 <= y <= x <= 1`, `(x, y) != (0, 0)`:
/// `(x^2 + y^2 + 2x) / (sqrt(2) (x^{4/3} + y^{4/3})^{3/2})`.
pub fn case1_fn(x: f64, y: f64) -> f64 {
    (x * x + y * y + 2.0 * x) / (std::f64::consts::SQRT_2 * l43_pair(x, y))
}

/// Case (2) first target on `0 <= x <= y <= 1`, `(x, y) != (0, 0)`.
pub fn phi1_fn(x: f64, y: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    (x * x + y * y + s2 * (1.0 - x) * y) / (s2 * l43_pair(x, y))
}

/// Case (2) second target, with the k-shaped surrogate.
pub fn psi1_fn(x: f64, y: f64) -> f64 {
    psi1_fn_with_k(x, y, solve_k())
}

pub fn psi1_fn_with_k(x: f64, y: f64, k: f64) -> f64 {
    let kfac = (2.0 + k.powf(4.0 / 3.0)).powf(1.5) / (4.0 + k * k);
    (1.0 + x * x + y * y + 2.0 * y * x) * kfac / l43_triple(x, y)
}

/// Case (3) target for `lambda = +-1`; same algebraic shape as `psi1_fn`.
pub fn phi2_fn(x: f64, y: f64) -> f64 {
    phi2_fn_with_k(x, y, solve_k())
}

pub fn phi2_fn_with_k(x: f64, y: f64, k: f64) -> f64 {
    let kfac = (2.0 + k.powf(4.0 / 3.0)).powf(1.5) / (4.0 + k * k);
    (1.0 + x * x + y * y + 2.0 * x * y) * kfac / l43_triple(x, y)
}

/// Case (3) target for the diagonal `lambda`; numerator parenthesis closes
/// after `sqrt(2)(y - x)`.
pub fn psi2_fn(x: f64, y: f64) -> f64 {
    psi2_fn_with_k(x, y, solve_k())
}

pub fn psi2_fn_with_k(x: f64, y: f64, k: f64) -> f64 {
    let kfac = (2.0 + k.powf(4.0 / 3.0)).powf(1.5) / (4.0 + k * k);
    (1.0 + x * x + y * y + std::f64::consts::SQRT_2 * (y - x)) * kfac / l43_triple(x, y)
}

/// Case (3) target when `|Im b| >= sqrt(2)/2`, on `0 <= x <= y <= 1`,
/// `(x, y) != (0, 0)`.
pub fn omega1_fn(x: f64, y: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    let d = y - x;
    (x * x + y * y + 2.0 * x * y * (1.0 - 2.0 * d * d) + s2 * d * d) / (s2 * l43_pair(x, y))
}

/// Case (3) target when `|Re b| >= sqrt(2)/2`, on `0 <= x <= y <= 1`,
/// `(x, y) != (0, 0)`.
pub fn omega2_fn(x: f64, y: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    let d = y - x;
    (x * x
        + y * y
        + 2.0 * x * y * (1.0 - 2.0 * d * d)
        + s2 * (y + x) * (1.0 - d * d).max(0.0).sqrt())
        / (s2 * l43_pair(x, y))
}

/// Triangle half of the unit square a suite is certified on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `0 <= y <= x <= 1`
    LowerTriangle,
    /// `0 <= x <= y <= 1`
    UpperTriangle,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::LowerTriangle => "lower-triangle",
            Region::UpperTriangle => "upper-triangle",
        }
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
            return false;
        }
        match self {
            Region::LowerTriangle => y <= x,
            Region::UpperTriangle => x <= y,
        }
    }
}

/// A scalar function participating in a certification suite.
pub struct CertFn {
    pub name: &'static str,
    pub f: Box<dyn Fn(f64, f64) -> f64 + Sync>,
    /// Excludes a disk of radius 1e-9 around the origin, where the
    /// normalized triple has a vanishing denominator (a = 0 there, outside
    /// every case hypothesis).
    pub excludes_origin: bool,
}

impl CertFn {
    pub fn new(
        name: &'static str,
        f: impl Fn(f64, f64) -> f64 + Sync + 'static,
        excludes_origin: bool,
    ) -> Self {
        CertFn {
            name,
            f: Box::new(f),
            excludes_origin,
        }
    }

    fn applicable(&self, x: f64, y: f64) -> bool {
        !(self.excludes_origin && x * x + y * y <= 1e-18)
    }
}

/// Outcome of one grid certification run.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub set_id: String,
    pub region: Region,
    pub grid_n: usize,
    pub min_of_max: f64,
    pub min_at: (f64, f64),
    /// How far the minimum dropped under 4x local subsampling; bounds the
    /// in-cell variation near the minimizer.
    pub margin: f64,
    pub pass: bool,
    /// Minimum within 1e-6 of the target 1 (an equality case).
    pub tight: bool,
    /// Location of a non-finite evaluation inside the domain, if any.
    pub failure: Option<(f64, f64)>,
}

/// Evaluates `max` over `fns` at every grid node of the region, takes the
/// minimum over nodes, subsamples at 4x resolution around the minimizer to
/// bound in-cell variation, and passes iff `min - margin >= 1 - 1e-9`.
pub fn certify_min_ge_one(
    set_id: &str,
    fns: &[CertFn],
    region: Region,
    grid_n: usize,
) -> Result<InequalityReport, BhError> {
    if grid_n < 64 {
        return Err(BhError::GridTooCoarse(grid_n));
    }
    let h = 1.0 / grid_n as f64;
    let mut min_of_max = f64::INFINITY;
    let mut min_at = (0.0, 0.0);
    let mut failure = None;

    'outer: for i in 0..=grid_n {
        let x = i as f64 * h;
        for j in 0..=grid_n {
            let y = j as f64 * h;
            if !region.contains(x, y) {
                continue;
            }
            match node_value(fns, x, y) {
                NodeValue::Skip => {}
                NodeValue::NonFinite => {
                    failure = Some((x, y));
                    break 'outer;
                }
                NodeValue::Value(v) => {
                    if v < min_of_max {
                        min_of_max = v;
                        min_at = (x, y);
                    }
                }
            }
        }
    }

    // 4x subsampling over the cells adjacent to the minimizing node.
    let mut refined_min = min_of_max;
    if failure.is_none() {
        let sub = h / 4.0;
        for di in -4i32..=4 {
            let x = min_at.0 + di as f64 * sub;
            for dj in -4i32..=4 {
                let y = min_at.1 + dj as f64 * sub;
                if !region.contains(x, y) {
                    continue;
                }
                match node_value(fns, x, y) {
                    NodeValue::Skip => {}
                    NodeValue::NonFinite => {
                        failure = Some((x, y));
                    }
                    NodeValue::Value(v) => refined_min = refined_min.min(v),
                }
            }
        }
    }

    let margin = (min_of_max - refined_min).max(0.0);
    let pass = failure.is_none() && min_of_max - margin >= 1.0 - 1e-9;
    Ok(InequalityReport {
        set_id: set_id.to_string(),
        region,
        grid_n,
        min_of_max,
        min_at,
        margin,
        pass,
        tight: (min_of_max - 1.0).abs() <= 1e-6,
        failure,
    })
}

enum NodeValue {
    Value(f64),
    Skip,
    NonFinite,
}

fn node_value(fns: &[CertFn], x: f64, y: f64) -> NodeValue {
    let mut best = f64::NEG_INFINITY;
    let mut any = false;
    for cf in fns {
        if !cf.applicable(x, y) {
            continue;
        }
        let v = (cf.f)(x, y);
        if !v.is_finite() {
            return NodeValue::NonFinite;
        }
        any = true;
        best = best.max(v);
    }
    if any {
        NodeValue::Value(best)
    } else {
        NodeValue::Skip
    }
}

/// The four suites proving the reduction, at a given `k` and grid size.
pub fn reduction_suites(k: f64, grid_n: usize) -> Result<Vec<InequalityReport>, BhError> {
    let case1 = vec![CertFn::new("case1", case1_fn, true)];
    let case2 = vec![
        CertFn::new("phi1", phi1_fn, true),
        CertFn::new("psi1", move |x, y| psi1_fn_with_k(x, y, k), false),
    ];
    let case3_im = vec![
        CertFn::new("phi2", move |x, y| phi2_fn_with_k(x, y, k), false),
        CertFn::new("psi2", move |x, y| psi2_fn_with_k(x, y, k), false),
        CertFn::new("omega1", omega1_fn, true),
    ];
    let case3_re = vec![
        CertFn::new("phi2", move |x, y| phi2_fn_with_k(x, y, k), false),
        CertFn::new("psi2", move |x, y| psi2_fn_with_k(x, y, k), false),
        CertFn::new("omega2", omega2_fn, true),
    ];
    Ok(vec![
        certify_min_ge_one("case1", &case1, Region::LowerTriangle, grid_n)?,
        certify_min_ge_one("case2", &case2, Region::UpperTriangle, grid_n)?,
        certify_min_ge_one("case3-im", &case3_im, Region::UpperTriangle, grid_n)?,
        certify_min_ge_one("case3-re", &case3_re, Region::UpperTriangle, grid_n)?,
    ])
}

/// Fast validation pass that the suites hold under a candidate `k`.
pub fn verify_k(k: f64) -> bool {
    reduction_suites(k, 256)
        .map(|rs| rs.iter().all(|r| r.pass))
        .unwrap_or(false)
}

/// Which ordering of `(|a|, |c|, |b|)` the canonicalized triple landed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurrogateCase {
    /// `a >= c >= |b|`
    BSmallest,
    /// `a >= |b| >= c`
    BMiddle,
    /// `|b| >= a >= c`
    BLargest,
}

/// Which surrogate shape was selected within the case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurrogateShape {
    /// `a' = (c^{4/3} + |b|^{4/3})^{3/4} / 2^{3/4}`, `b' = a`, `c' = -a'`.
    PairShape,
    /// `a' = (a^{4/3} + c^{4/3} + |b|^{4/3})^{3/4} / (2 + k^{4/3})^{3/4}`,
    /// `b' = k a'`, `c' = -a'`.
    KShape,
    /// `a' = (a^{4/3} + c^{4/3})^{3/4} / 2^{3/4}`, `b' = |b|`, `c' = -a'`.
    BShape,
}

/// The real surrogate triple of the reduction, with its provenance.
#[derive(Clone, Copy, Debug)]
pub struct Surrogate {
    pub triple: [f64; 3],
    pub case: SurrogateCase,
    pub shape: SurrogateShape,
}

impl Surrogate {
    /// Closed-form squared disk norm `4 a'^2 + b'^2` of the
    /// `(a', b', -a')` shape.
    pub fn disk_norm_sq(&self) -> f64 {
        4.0 * self.triple[0] * self.triple[0] + self.triple[1] * self.triple[1]
    }

    pub fn l43_norm(&self) -> f64 {
        self.triple
            .iter()
            .map(|t| t.abs().powf(4.0 / 3.0))
            .sum::<f64>()
            .powf(0.75)
    }
}

/// Constructs real `(a', b', c')` with the same `l_{4/3}` norm as `(a, b, c)`
/// and a disk norm no larger, following the constructive reduction: the
/// triple is canonicalized to `a >= c >= 0`, and the surrogate shape whose
/// certified inequality holds at the normalized point is selected.
pub fn reduction_surrogate(a: Complex64, b: Complex64, c: Complex64) -> Surrogate {
    let k = solve_k();
    let (mut a0, b0, mut c0) = canonicalize_quad(a, b, c);
    if a0 < c0 {
        std::mem::swap(&mut a0, &mut c0);
    }
    let babs = b0.norm();
    let pow34 = |v: f64| v.powf(0.75);
    let two34 = 2f64.powf(0.75);

    let pair_shape = |lo: f64, mid: f64| {
        let ap = pow34(lo.powf(4.0 / 3.0) + mid.powf(4.0 / 3.0)) / two34;
        [ap, a0, -ap]
    };
    let k_shape = || {
        let ap = pow34(a0.powf(4.0 / 3.0) + c0.powf(4.0 / 3.0) + babs.powf(4.0 / 3.0))
            / pow34(2.0 + k.powf(4.0 / 3.0));
        [ap, k * ap, -ap]
    };

    if babs <= c0 {
        // a >= c >= |b|
        Surrogate {
            triple: pair_shape(c0, babs),
            case: SurrogateCase::BSmallest,
            shape: SurrogateShape::PairShape,
        }
    } else if babs <= a0 {
        // a >= |b| >= c
        let (x, y) = (c0 / a0, babs / a0);
        if phi1_fn(x, y) >= 1.0 {
            Surrogate {
                triple: pair_shape(c0, babs),
                case: SurrogateCase::BMiddle,
                shape: SurrogateShape::PairShape,
            }
        } else {
            Surrogate {
                triple: k_shape(),
                case: SurrogateCase::BMiddle,
                shape: SurrogateShape::KShape,
            }
        }
    } else {
        // |b| >= a >= c
        let (x, y) = (c0 / babs, a0 / babs);
        if phi2_fn_with_k(x, y, k) >= 1.0 || psi2_fn_with_k(x, y, k) >= 1.0 {
            Surrogate {
                triple: k_shape(),
                case: SurrogateCase::BLargest,
                shape: SurrogateShape::KShape,
            }
        } else {
            let ap = pow34(a0.powf(4.0 / 3.0) + c0.powf(4.0 / 3.0)) / two34;
            Surrogate {
                triple: [ap, babs, -ap],
                case: SurrogateCase::BLargest,
                shape: SurrogateShape::BShape,
            }
        }
    }
}
