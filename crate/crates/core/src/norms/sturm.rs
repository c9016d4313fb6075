//! Sturm-chain real root isolation on an interval, with bisection and a
//! Newton polish.
//!
//! Chains are built in floating point with a coefficient-magnitude guard;
//! if a remainder's leading coefficient is ambiguous the chain is rebuilt in
//! exact rational arithmetic (every `f64` is a dyadic rational, so the
//! rebuild loses nothing).

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

use crate::poly::UniPoly;

/// Leading coefficients below `GUARD * scale` make the float chain untrustworthy.
const GUARD: f64 = 1e-12;

type RatPoly = Vec<BigRational>;

enum ChainRepr {
    Float(Vec<UniPoly>),
    Rational(Vec<RatPoly>),
}

/// Signed-remainder sequence of `p` and `p'`; sign variations count distinct
/// real roots in a half-open interval.
pub struct SturmChain {
    repr: ChainRepr,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> SturmChain {
        match build_float_chain(p) {
            Some(chain) => SturmChain {
                repr: ChainRepr::Float(chain),
            },
            None => SturmChain {
                repr: ChainRepr::Rational(build_rational_chain(p)),
            },
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.repr, ChainRepr::Rational(_))
    }

    /// Number of sign variations of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: f64) -> usize {
        match &self.repr {
            ChainRepr::Float(chain) => {
                let signs: Vec<f64> = chain
                    .iter()
                    .map(|p| p.eval(x))
                    .filter(|v| *v != 0.0)
                    .collect();
                signs.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
            }
            ChainRepr::Rational(chain) => {
                let xq = BigRational::from_f64(x).expect("finite x");
                let signs: Vec<i8> = chain
                    .iter()
                    .map(|p| rp_eval_sign(p, &xq))
                    .filter(|s| *s != 0)
                    .collect();
                signs.windows(2).filter(|w| w[0] != w[1]).count()
            }
        }
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: f64, hi: f64) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Whether the chain head vanishes exactly at `x`; variation counts at
    /// such points are ambiguous and the point should be nudged.
    fn head_vanishes_at(&self, x: f64) -> bool {
        match &self.repr {
            ChainRepr::Float(chain) => chain[0].eval(x) == 0.0,
            ChainRepr::Rational(chain) => {
                let xq = BigRational::from_f64(x).expect("finite x");
                rp_eval_sign(&chain[0], &xq) == 0
            }
        }
    }
}

fn build_float_chain(p: &UniPoly) -> Option<Vec<UniPoly>> {
    let p0 = normalize(p);
    let p1 = normalize(&p0.derivative());
    if p1.is_zero() {
        return Some(vec![p0]);
    }
    let mut chain = vec![p0, p1];
    loop {
        let n = chain.len();
        let r = poly_rem_neg(&chain[n - 2], &chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        let done = r.degree() == Some(0);
        chain.push(normalize(&r));
        if done {
            break;
        }
    }
    Some(chain)
}

/// Remainder of `a / b` negated, or `None` when a trimmed leading coefficient
/// is too small to classify.
fn poly_rem_neg(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    let db = b.degree().expect("nonzero divisor");
    let mut rem: Vec<f64> = a.coeffs().to_vec();
    let bc = b.coeffs();
    let lead_b = bc[db];
    while rem.len() > db {
        let k = rem.len() - 1;
        let factor = rem[k] / lead_b;
        if factor != 0.0 {
            for i in 0..db {
                rem[k - db + i] -= factor * bc[i];
            }
        }
        rem.pop();
    }
    let scale = rem.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Some(UniPoly::new(vec![]));
    }
    // Inputs are normalized to max coefficient 1; a remainder that is tiny
    // but not exactly zero is indistinguishable from a cancelled gcd step.
    if scale < GUARD {
        return None;
    }
    // Degree of the remainder must be unambiguous: a leading run of
    // near-cancelled coefficients means the float chain cannot be trusted.
    while let Some(&c) = rem.last() {
        if c == 0.0 {
            rem.pop();
        } else if c.abs() < GUARD * scale {
            return None;
        } else {
            break;
        }
    }
    Some(UniPoly::new(rem.iter().map(|c| -c).collect()))
}

fn normalize(p: &UniPoly) -> UniPoly {
    let m = p.max_abs_coeff();
    if m == 0.0 {
        return p.clone();
    }
    UniPoly::new(p.coeffs().iter().map(|c| c / m).collect())
}

fn build_rational_chain(p: &UniPoly) -> Vec<RatPoly> {
    let p0 = rp_from_unipoly(p);
    let p1 = rp_derivative(&p0);
    if p1.is_empty() {
        return vec![p0];
    }
    let mut chain = vec![rp_normalize(p0), rp_normalize(p1)];
    loop {
        let n = chain.len();
        let r = rp_rem_neg(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        let done = r.len() == 1;
        chain.push(rp_normalize(r));
        if done {
            break;
        }
    }
    chain
}

fn rp_from_unipoly(p: &UniPoly) -> RatPoly {
    p.coeffs()
        .iter()
        .map(|&c| BigRational::from_f64(c).expect("finite coefficient"))
        .collect()
}

fn rp_derivative(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return vec![];
    }
    p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer((i as i64 + 1).into()))
        .collect()
}

fn rp_trim(mut p: RatPoly) -> RatPoly {
    while p.last().map(|c| c.is_zero()) == Some(true) {
        p.pop();
    }
    p
}

/// Divide through by |leading coefficient| to restrain growth.
fn rp_normalize(p: RatPoly) -> RatPoly {
    match p.last() {
        None => p,
        Some(lead) => {
            let scale = lead.abs();
            p.iter().map(|c| c / &scale).collect()
        }
    }
}

fn rp_rem_neg(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.len() - 1;
    let mut rem = a.clone();
    while rem.len() > db {
        let k = rem.len() - 1;
        let factor = &rem[k] / &b[db];
        if !factor.is_zero() {
            for i in 0..db {
                let delta = &factor * &b[i];
                rem[k - db + i] -= delta;
            }
        }
        rem.pop();
    }
    rp_trim(rem.into_iter().map(|c| -c).collect())
}

fn rp_eval_sign(p: &RatPoly, x: &BigRational) -> i8 {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// All distinct real roots of `p` in `[lo, hi]`, each bracketed to width
/// `<= tol` and polished by Newton where the derivative allows.
pub fn roots_in(p: &UniPoly, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    match p.degree() {
        None | Some(0) => return vec![],
        _ => {}
    }
    let chain = SturmChain::new(p);
    // Nudge outward so roots sitting exactly on lo/hi are counted.
    let eps = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
    let a = lo - eps;
    let b = hi + eps;
    let total = chain.count_roots(a, b);
    if total == 0 {
        return vec![];
    }
    let mut intervals = Vec::new();
    isolate(&chain, a, b, total, &mut intervals);

    let deriv = p.derivative();
    let mut roots: Vec<f64> = intervals
        .into_iter()
        .map(|(mut l, mut r)| {
            // Variation-count bisection converges for any root multiplicity.
            while r - l > tol * 0.5 {
                let mut mid = 0.5 * (l + r);
                if p.eval(mid) == 0.0 {
                    mid = next_up(mid, r);
                }
                if chain.count_roots(l, mid) >= 1 {
                    r = mid;
                } else {
                    l = mid;
                }
            }
            let polished = newton_polish(p, &deriv, 0.5 * (l + r), l, r, tol);
            polished.clamp(lo, hi)
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
    roots
}

fn isolate(chain: &SturmChain, lo: f64, hi: f64, count: usize, out: &mut Vec<(f64, f64)>) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((lo, hi));
        return;
    }
    let mut mid = 0.5 * (lo + hi);
    if mid == lo || mid == hi {
        // Interval at f64 resolution still claims several roots; report once.
        out.push((lo, hi));
        return;
    }
    // Avoid landing a count endpoint on a root of the chain head.
    if chain.head_vanishes_at(mid) {
        mid = next_up(mid, hi);
    }
    let left = chain.count_roots(lo, mid);
    isolate(chain, lo, mid, left, out);
    isolate(chain, mid, hi, count - left, out);
}

fn next_up(x: f64, limit: f64) -> f64 {
    let bumped = x + (x.abs() * 1e-14 + 1e-300);
    if bumped < limit {
        bumped
    } else {
        0.5 * (x + limit)
    }
}

fn newton_polish(p: &UniPoly, deriv: &UniPoly, start: f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let mut x = start;
    for _ in 0..12 {
        let fx = p.eval(x);
        if fx == 0.0 {
            return x;
        }
        let dx = deriv.eval(x);
        if dx == 0.0 {
            break;
        }
        let step = fx / dx;
        let next = x - step;
        if !next.is_finite() || next < lo - tol || next > hi + tol {
            break;
        }
        x = next;
        if step.abs() < 1e-3 * tol {
            break;
        }
    }
    x
}
