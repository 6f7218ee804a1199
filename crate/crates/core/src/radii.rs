//! Radii of close-to-convexity for partial sums
//! `S_{m,l}(f) = sum_{k<=m} a_k z^k + conj(sum_{2<=k<=l} b_k z^k)` with `n = 1`.
//!
//! The radius `r_c` is the least of four case radii:
//!
//! | case            | equation                                  | root        |
//! |-----------------|-------------------------------------------|-------------|
//! | `m <= 2, l = 2` | `2 - 3r = 0`                              | `2/3`       |
//! | `m, l >= 3`     | `2 + 2ln(1-r) + r ln(1-r) - r + r^2 = 0`  | `~0.503`    |
//! | `m <= 2, l >= 3`| `2 - 2r + r ln(1-r) = 0`                  | `~0.653575` |
//! | `m >= 3, l = 2` | `2 - r + 2ln(1-r) + r^2 = 0`              | `~0.584628` |
//!
//! Each left side is positive near 0; the radius is its first zero in (0, 1).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::{BoundId, BoundReport};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::mapclass::HarmonicMapping;
use crate::numerics::{bisect, first_sign_change};
use crate::series::{check_disk, ComplexSeries};

/// Step of the scan that locates the least positive root.
pub const SCAN_STEP: f64 = 1e-3;
/// Final bracket width of the bisection.
pub const BISECTION_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationId {
    R1,
    R2,
    R3,
    R4,
    /// Minimum of the four.
    RC,
}

impl EquationId {
    pub const CASES: [EquationId; 4] = [EquationId::R1, EquationId::R2, EquationId::R3, EquationId::R4];

    pub fn name(self) -> &'static str {
        match self {
            EquationId::R1 => "r1",
            EquationId::R2 => "r2",
            EquationId::R3 => "r3",
            EquationId::R4 => "r4",
            EquationId::RC => "rc",
        }
    }

    pub fn parse(s: &str) -> Option<EquationId> {
        [EquationId::RC]
            .into_iter()
            .chain(Self::CASES)
            .find(|e| e.name().eq_ignore_ascii_case(s))
    }

    /// Left side of the radius equation. `RC` shares the `R2` equation.
    pub fn eval(self, r: f64) -> f64 {
        let l = (-r).ln_1p();
        match self {
            EquationId::R1 => 2.0 - 3.0 * r,
            EquationId::R2 | EquationId::RC => 2.0 + 2.0 * l + r * l - r + r * r,
            EquationId::R3 => 2.0 - 2.0 * r + r * l,
            EquationId::R4 => 2.0 - r + 2.0 * l + r * r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub equation: EquationId,
    pub root: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scan_step: Option<f64>,
    /// For `RC`, the case equation that attains the minimum.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub attained_by: Option<EquationId>,
}

impl RadiusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("radius report serializes")
    }
}

/// Least positive root of the chosen radius equation.
pub fn solve_radius(equation: EquationId) -> Result<RadiusReport> {
    match equation {
        EquationId::R1 => {
            let root = 2.0 / 3.0;
            Ok(RadiusReport {
                equation,
                root,
                residual: equation.eval(root).abs(),
                bracket: (0.0, 1.0),
                iterations: 0,
                scan_step: None,
                attained_by: None,
            })
        }
        EquationId::RC => {
            let mut best: Option<RadiusReport> = None;
            for case in EquationId::CASES {
                let report = solve_radius(case)?;
                if best.as_ref().is_none_or(|b| report.root < b.root) {
                    best = Some(report);
                }
            }
            let best = best.expect("four cases");
            Ok(RadiusReport {
                equation,
                attained_by: Some(best.equation),
                ..best
            })
        }
        _ => {
            let f = |r: f64| equation.eval(r);
            let bracket = first_sign_change(f, 0.0, 1.0 - SCAN_STEP, SCAN_STEP)?;
            let b = bisect(f, bracket, BISECTION_TOL)?;
            Ok(RadiusReport {
                equation,
                root: b.root,
                residual: b.residual,
                bracket: (bracket.lo, bracket.hi),
                iterations: b.iterations,
                scan_step: Some(SCAN_STEP),
                attained_by: None,
            })
        }
    }
}

/// `r_c = min(r1, r2, r3, r4)`.
pub fn radius_cc() -> f64 {
    solve_radius(EquationId::RC).expect("radius equations have a root").root
}

/// Which branch of the case analysis a pair `(m, l)` falls in.
pub fn case_equation(m: usize, l: usize) -> EquationId {
    match (m <= 2, l == 2) {
        (true, true) => EquationId::R1,
        (false, false) => EquationId::R2,
        (true, false) => EquationId::R3,
        (false, true) => EquationId::R4,
    }
}

/// Truncation of a mapping to `m` analytic and `l` co-analytic terms.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSum {
    m: usize,
    l: usize,
    analytic: ComplexSeries,
    coanalytic: ComplexSeries,
    analytic_deriv: ComplexSeries,
    coanalytic_deriv: ComplexSeries,
}

pub fn partial_sum(f: &HarmonicMapping, m: usize, l: usize) -> Result<PartialSum> {
    if m < 1 || l < 2 {
        return Err(Error::InvalidArgument(format!("partial sum needs m >= 1, l >= 2 (got {m}, {l})")));
    }
    if m > f.h().order() || l > f.g().order() {
        return Err(Error::InvalidArgument(format!(
            "partial sum ({m}, {l}) exceeds stored orders ({}, {})",
            f.h().order(),
            f.g().order()
        )));
    }
    let analytic = f.h().truncate(m);
    let mut g = f.g().truncate(l).coeffs().to_vec();
    // S_{m,l} starts the co-analytic sum at k = 2
    g[1] = Complex64::new(0.0, 0.0);
    let coanalytic = ComplexSeries::from_coeffs(g);
    Ok(PartialSum {
        m,
        l,
        analytic_deriv: analytic.derivative(),
        coanalytic_deriv: coanalytic.derivative(),
        analytic,
        coanalytic,
    })
}

impl PartialSum {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// `S_{m,l}(f)(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(self.analytic.horner(z) + self.coanalytic.horner(z).conj())
    }

    fn derivative_parts(&self, z: Complex64) -> (Complex64, Complex64) {
        (self.analytic_deriv.horner(z), self.coanalytic_deriv.horner(z))
    }
}

/// `Γ'_{m,l}(z) = sum_{k<=m} k a_k z^{k-1} + eps sum_{2<=k<=l} k b_k z^{k-1}`.
pub fn eval_gamma_deriv(p: &PartialSum, epsilon: Complex64, z: Complex64) -> Result<Complex64> {
    if (epsilon.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("|epsilon| = {} != 1", epsilon.norm())));
    }
    check_disk(z)?;
    let (a, b) = p.derivative_parts(z);
    Ok(a + epsilon * b)
}

/// Grid for [`verify_cc_radius`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CcSampling {
    pub angles: usize,
    pub radii: usize,
    pub eps_samples: usize,
}

impl Default for CcSampling {
    fn default() -> Self {
        Self {
            angles: 128,
            radii: 32,
            eps_samples: 64,
        }
    }
}

/// Minimum of `Re Γ'_{m,l}` over a polar grid in `|z| <= r` and `eps` over
/// roots of unity. A sampling check of the sufficient condition
/// `Re Γ' > 0`, not a proof.
pub fn verify_cc_radius(
    f: &HarmonicMapping,
    m: usize,
    l: usize,
    r: f64,
    angles: usize,
    eps_samples: usize,
) -> Result<BoundReport> {
    let sampling = CcSampling {
        angles,
        eps_samples,
        ..CcSampling::default()
    };
    verify_cc_radius_with(f, m, l, r, sampling, Exec::default())
}

pub fn verify_cc_radius_with(
    f: &HarmonicMapping,
    m: usize,
    l: usize,
    r: f64,
    sampling: CcSampling,
    exec: Exec,
) -> Result<BoundReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("radius {r} not in (0, 1)")));
    }
    let CcSampling { angles, radii, eps_samples } = sampling;
    if angles == 0 || radii == 0 || eps_samples == 0 {
        return Err(Error::InvalidArgument("empty sampling grid".into()));
    }
    let p = partial_sum(f, m, l)?;
    let eps: Vec<Complex64> = (0..eps_samples)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / eps_samples as f64))
        .collect();
    let (min, (z, e)) = exec
        .argmin(angles * radii, |i| {
            let (ring, a) = (i / angles, i % angles);
            let z = Complex64::from_polar(
                r * (ring + 1) as f64 / radii as f64,
                2.0 * PI * a as f64 / angles as f64,
            );
            let (da, db) = p.derivative_parts(z);
            eps.iter()
                .map(|&e| ((da + e * db).re, (z, e)))
                .fold((f64::INFINITY, (z, eps[0])), |acc, x| if x.0 < acc.0 { x } else { acc })
        })
        .expect("non-empty grid");
    Ok(BoundReport::strict_lower(
        BoundId::CloseToConvex,
        json!({
            "m": m, "l": l, "r": r,
            "angles": angles, "radii": radii, "eps_samples": eps_samples,
            "argmin_z": [z.re, z.im], "argmin_eps": [e.re, e.im],
        }),
        0.0,
        min,
    ))
}

/// `Δ(n) = -ln(1-r) - sum_{k=1}^{n-1} r^k/k = sum_{k>=n} r^k/k`.
pub fn tail_bound_delta(n: usize, r: f64) -> f64 {
    assert!(n >= 1, "tail bound needs n >= 1");
    let head: f64 = (1..n).map(|k| r.powi(k as i32) / k as f64).sum();
    -(-r).ln_1p() - head
}
