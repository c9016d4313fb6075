//! Certified 1-D maximization and scalar root solving, plus the solvers for
//! the specific constants t0, b1, lambda0, lambda1 and their printed-form
//! cross-checks.

use std::sync::OnceLock;

use crate::error::BhError;
use crate::extremals;
use crate::norms::{golden_max, CertifiedMax1, MaxMethod};

/// Search interval with a stopping tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self, BhError> {
        let valid = lo.is_finite() && hi.is_finite() && tol.is_finite() && lo < hi && tol > 0.0;
        if !valid {
            return Err(BhError::Bracket { lo, hi, tol });
        }
        Ok(Bracket { lo, hi, tol })
    }
}

/// Grid density used to localize the global maximum before refinement.
pub const DEFAULT_GRID: usize = 1024;

/// Maximizes `f` on the bracket: a coarse grid scan localizes the global
/// maximum, golden section refines it to `tol`.
pub fn maximize_1d(f: impl Fn(f64) -> f64, bracket: &Bracket) -> Result<CertifiedMax1, BhError> {
    maximize_1d_grid(f, bracket, DEFAULT_GRID)
}

/// As [`maximize_1d`] with an explicit grid density (multimodal guard knob).
pub fn maximize_1d_grid(
    f: impl Fn(f64) -> f64,
    bracket: &Bracket,
    grid: usize,
) -> Result<CertifiedMax1, BhError> {
    let n = grid.max(2);
    let step = (bracket.hi - bracket.lo) / n as f64;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        let x = if i == n {
            bracket.hi
        } else {
            bracket.lo + i as f64 * step
        };
        let v = f(x);
        if !v.is_finite() {
            return Err(BhError::NonFiniteObjective { at: x });
        }
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = (bracket.lo + best_i.saturating_sub(1) as f64 * step).max(bracket.lo);
    let hi = (bracket.lo + (best_i + 1) as f64 * step).min(bracket.hi);
    let (arg, value, radius) = golden_max(&f, lo, hi, bracket.tol);
    Ok(CertifiedMax1 {
        arg,
        value,
        radius,
        method: MaxMethod::GridRefine,
    })
}

/// Root of `g` on a sign-changing bracket: bisection to `tol`, then a
/// Newton polish with a central-difference derivative.
pub fn find_root_scalar(g: impl Fn(f64) -> f64, bracket: &Bracket) -> Result<f64, BhError> {
    let mut lo = bracket.lo;
    let mut hi = bracket.hi;
    let mut glo = g(lo);
    let ghi = g(hi);
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo * ghi > 0.0 {
        return Err(BhError::NoSignChange { lo, hi });
    }
    while hi - lo > bracket.tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if glo * gm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    // Newton polish inside the final bracket.
    let mut x = 0.5 * (lo + hi);
    let h = (bracket.tol * 1e-2).max(1e-12);
    for _ in 0..8 {
        let gx = g(x);
        if gx == 0.0 {
            break;
        }
        let d = (g(x + h) - g(x - h)) / (2.0 * h);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - gx / d;
        if !(bracket.lo..=bracket.hi).contains(&next) {
            break;
        }
        if (next - x).abs() < 1e-4 * bracket.tol {
            x = next;
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Residual of the branch-crossing equation for the sextic family:
/// `|2 + l| - |3l^2 - 20 + l s| sqrt((-3l - s)/10) / 25` with
/// `s = sqrt(9 l^2 - 20)`. Defined for `l <= -2 sqrt(5)/3`.
fn lambda_crossing_residual(lambda: f64) -> f64 {
    let s = (9.0 * lambda * lambda - 20.0).max(0.0).sqrt();
    let x0 = ((-3.0 * lambda - s) / 10.0).max(0.0).sqrt();
    (2.0 + lambda).abs() - (3.0 * lambda * lambda - 20.0 + lambda * s).abs() * x0 / 25.0
}

/// The two roots `(lambda0, lambda1)` of the crossing equation, confirmed to
/// be exactly two by a sign-pattern scan over `[-6, -2 sqrt(5)/3]`.
pub fn solve_lambda_roots() -> Result<(f64, f64), BhError> {
    let hi = crate::norms::q_lambda_critical_threshold();
    let lo = -6.0;
    let n = 10_000;
    let step = (hi - lo) / n as f64;
    let mut brackets = Vec::new();
    let mut prev = lambda_crossing_residual(lo);
    for i in 1..=n {
        let x = lo + i as f64 * step;
        let cur = lambda_crossing_residual(x);
        if prev * cur < 0.0 {
            brackets.push((x - step, x));
        }
        prev = cur;
    }
    if brackets.len() != 2 {
        return Err(BhError::RootCount {
            expected: 2,
            found: brackets.len(),
        });
    }
    let mut roots = [0.0; 2];
    for (i, (a, b)) in brackets.into_iter().enumerate() {
        roots[i] = find_root_scalar(lambda_crossing_residual, &Bracket::new(a, b, 1e-14)?)?;
    }
    Ok((roots[0].min(roots[1]), roots[0].max(roots[1])))
}

/// Memoized `(lambda0, lambda1) ~ (-2.2654, -1.6779)`.
pub fn lambda_roots() -> (f64, f64) {
    static ROOTS: OnceLock<(f64, f64)> = OnceLock::new();
    *ROOTS.get_or_init(|| solve_lambda_roots().expect("crossing equation has two roots"))
}

/// Cross-check report for the printed forms of `t0` and `f(t0)`.
#[derive(Clone, Copy, Debug)]
pub struct T0Report {
    pub t0_radical: f64,
    pub t0_argmax: f64,
    pub radical_matches: bool,
    pub stationarity_residual: f64,
    pub stationary: bool,
    pub f_t0_printed: f64,
    pub f_t0_computed: f64,
    pub printed_matches: bool,
}

impl T0Report {
    pub fn pass(&self) -> bool {
        self.radical_matches && self.stationary && self.printed_matches
    }
}

/// The printed nested-radical expression for the exact value of `f(t0)`.
fn f_t0_printed_expression() -> f64 {
    let s129 = 129f64.sqrt();
    let a = 2.0 * (107.0 + 9.0 * s129).cbrt() + (856.0 - 72.0 * s129).cbrt() + 16.0;
    let first = a.powf(4.0 / 3.0) / (18.0 * 6f64.powf(2.0 / 3.0));
    let d = -2.0 * (107.0 + 9.0 * s129).cbrt() + (107.0 + 9.0 * s129).powf(2.0 / 3.0)
        - 2.0 * (107.0 - 9.0 * s129).cbrt()
        + (107.0 - 9.0 * s129).powf(2.0 / 3.0)
        - 60.0;
    let second = 1.0 / (9.0 * (-3.0 / d).powf(2.0 / 3.0));
    (first + second).powf(0.75)
}

/// Evaluates the printed radical for `t0`, compares it with the numeric
/// argmax of `f`, checks stationarity by central difference, and compares
/// the printed exact `f(t0)` expression with `f(t0)`.
pub fn check_exact_t0() -> Result<T0Report, BhError> {
    let t0_radical = extremals::t0();
    let bracket = Bracket::new(0.5, 1.0, 1e-12)?;
    let argmax = maximize_1d(extremals::f_of_t, &bracket)?;
    let h = 1e-6;
    let deriv = (extremals::f_of_t(t0_radical + h) - extremals::f_of_t(t0_radical - h)) / (2.0 * h);
    let printed = f_t0_printed_expression();
    let computed = extremals::f_of_t(t0_radical);
    Ok(T0Report {
        t0_radical,
        t0_argmax: argmax.arg,
        radical_matches: (t0_radical - argmax.arg).abs() < 1e-6,
        stationarity_residual: deriv,
        stationary: deriv.abs() < 1e-6,
        f_t0_printed: printed,
        f_t0_computed: computed,
        printed_matches: (printed - computed).abs() < 1e-5,
    })
}

/// Maximizes `Phi` over `G`: the continuum is the segment `t = -s`,
/// `s` in `(0, 1/2)`, and the four isolated points contribute `Phi = 1`.
pub fn maximize_phi_on_g(tol: f64) -> Result<CertifiedMax1, BhError> {
    let eps = 1e-9;
    let bracket = Bracket::new(eps, 0.5 - eps, tol)?;
    let segment = maximize_1d(
        |s| extremals::phi(s, -s).expect("segment stays in G"),
        &bracket,
    )?;
    if segment.value >= 1.0 {
        Ok(segment)
    } else {
        // Isolated points dominate only if the segment max dips below 1.
        Ok(CertifiedMax1 {
            arg: 1.0,
            value: 1.0,
            radius: 0.0,
            method: MaxMethod::ClosedForm,
        })
    }
}
