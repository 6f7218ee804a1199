//! Bracketing root finder and adaptive Simpson quadrature.

use crate::error::{Error, Result};

/// A sign-changing interval `[lo, hi]` of some real function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks the sign change.
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if lo < hi && f_lo * f_hi < 0.0 {
            Ok(Self { lo, hi, f_lo, f_hi })
        } else {
            Err(Error::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }
}

/// Outcome of [`bisect`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bisection {
    pub root: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Bisects until the bracket is no wider than `tol`; the root is the final
/// midpoint and the residual is `|f(root)|`.
pub fn bisect(f: impl Fn(f64) -> f64, bracket: Bracket, tol: f64) -> Result<Bisection> {
    let Bracket { mut lo, mut hi, f_lo, f_hi } = bracket;
    if !(lo < hi && f_lo * f_hi < 0.0) {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("bisection tolerance {tol}")));
    }
    let lo_positive = f_lo > 0.0;
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(Bisection {
                root: mid,
                residual: 0.0,
                iterations: iterations + 1,
            });
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let root = 0.5 * (lo + hi);
    Ok(Bisection {
        root,
        residual: f(root).abs(),
        iterations,
    })
}

/// Scans `[lo, hi]` in steps of `step` and returns the first cell whose
/// endpoints have opposite signs.
pub fn first_sign_change(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> Result<Bracket> {
    let cells = ((hi - lo) / step).ceil() as usize;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=cells {
        let b = (lo + i as f64 * step).min(hi);
        let fb = f(b);
        if fa * fb < 0.0 {
            return Bracket::from_values(a, b, fa, fb);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoSignChange { lo, hi, step })
}

const MAX_DEPTH: usize = 50;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn quad_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a <= b) {
        return Err(Error::InvalidArgument(format!("quadrature interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureDepth(MAX_DEPTH));
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}
