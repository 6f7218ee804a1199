//! Closed-form coefficient, Fekete–Szegő, distortion, growth and area bounds
//! for the class, and verifiers that measure a concrete mapping against them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exec::Exec;
use crate::mapclass::{ClassParams, HarmonicMapping};

/// Absolute slack applied when comparing a measured value with a bound.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundId {
    CoeffA,
    CoeffB,
    FeketeSzegoG,
    FeketeSzegoF,
    GrowthLower,
    GrowthUpper,
    AreaLower,
    AreaUpper,
    DistortLower,
    DistortUpper,
    TailDeriv,
    /// Positivity of `Re Γ'` for partial sums.
    CloseToConvex,
}

impl BoundId {
    pub fn is_lower(self) -> bool {
        matches!(
            self,
            BoundId::GrowthLower | BoundId::AreaLower | BoundId::DistortLower | BoundId::CloseToConvex
        )
    }
}

/// A bound value, optionally compared with a measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub params: Value,
    #[serde(rename = "bound")]
    pub bound_value: f64,
    #[serde(rename = "measured")]
    pub measured_value: Option<f64>,
    pub satisfied: Option<bool>,
    pub margin: Option<f64>,
}

impl BoundReport {
    pub fn oracle(bound_id: BoundId, params: Value, bound_value: f64) -> Self {
        Self {
            bound_id,
            params,
            bound_value,
            measured_value: None,
            satisfied: None,
            margin: None,
        }
    }

    /// Compares with [`BOUND_SLACK`]; the direction follows the id.
    pub fn measured(bound_id: BoundId, params: Value, bound_value: f64, measured: f64) -> Self {
        let margin = if bound_id.is_lower() {
            measured - bound_value
        } else {
            bound_value - measured
        };
        Self {
            bound_id,
            params,
            bound_value,
            measured_value: Some(measured),
            satisfied: Some(margin >= -BOUND_SLACK),
            margin: Some(margin),
        }
    }

    /// Lower bound with no slack: satisfied only when `measured > bound`.
    pub fn strict_lower(bound_id: BoundId, params: Value, bound_value: f64, measured: f64) -> Self {
        let margin = measured - bound_value;
        Self {
            bound_id,
            params,
            bound_value,
            measured_value: Some(measured),
            satisfied: Some(margin > 0.0),
            margin: Some(margin),
        }
    }

    pub fn is_satisfied(&self) -> bool {
        self.satisfied.unwrap_or(true)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("bound report serializes")
    }
}

/// `|a_k| <= 2(alpha - 1)/((k - 1)k)`.
pub fn coeff_bound_a(k: usize, alpha: f64) -> f64 {
    assert!(k >= 2, "coefficient bound for a_k needs k >= 2");
    2.0 * (alpha - 1.0) / ((k - 1) * k) as f64
}

/// Bound on `|b_{k+n}|`: `|lambda|/(n+1)` for `k = 1`, otherwise
/// `|lambda| k coeff_bound_a(k)/(k+n) = 2|lambda|(alpha - 1)/((k-1)(k+n))`,
/// which is what `(k+n) b_{k+n} = lambda k a_k` gives and is attained by
/// the extremal `h`.
pub fn coeff_bound_b(k: usize, n: u32, alpha: f64, lambda_abs: f64) -> f64 {
    assert!(k >= 1, "coefficient bound for b_(k+n) needs k >= 1");
    let n = n as f64;
    if k == 1 {
        lambda_abs / (n + 1.0)
    } else {
        lambda_abs * k as f64 * coeff_bound_a(k, alpha) / (k as f64 + n)
    }
}

/// `2|lambda|(alpha - 1)/((k-1)k(k+n))`, smaller than [`coeff_bound_b`] by a
/// factor `k`. Not a valid bound: `z - z^2/2 + conj(z^2/4 - z^3/6)` has
/// `|b_3| = 1/6` against `1/12`.
pub fn coeff_bound_b_stated(k: usize, n: u32, alpha: f64, lambda_abs: f64) -> f64 {
    assert!(k >= 2, "stated form needs k >= 2");
    2.0 * lambda_abs * (alpha - 1.0) / ((k - 1) as f64 * k as f64 * (k as f64 + n as f64))
}

/// Piecewise Fekete–Szegő estimate for `|a_3 - delta a_2^2|` in the form
///
/// ```text
/// (alpha-1)/3 |3 + delta - (2+delta) alpha|  if |delta - (3-2alpha)/(3(alpha-1))| >= 1/(3(alpha-1))
/// (alpha-1)/3                                 otherwise
/// ```
///
/// This form is not a valid bound: `z - z^2/2` (alpha = 3/2, delta = 1)
/// reaches 1/4 against a value of 1/12, and the two branches disagree on
/// the branch boundary. Verification uses [`fekete_szego_g_sharp`].
pub fn fekete_szego_g(alpha: f64, delta: f64) -> f64 {
    let center = (3.0 - 2.0 * alpha) / (3.0 * (alpha - 1.0));
    if (delta - center).abs() >= 1.0 / (3.0 * (alpha - 1.0)) {
        (alpha - 1.0) / 3.0 * (3.0 + delta - (2.0 + delta) * alpha).abs()
    } else {
        (alpha - 1.0) / 3.0
    }
}

/// Sharp bound on `|a_3 - delta a_2^2|` over `Re(1 + z h''/h') < alpha`.
///
/// Writing the Schwarz function as `w1 z + w2 z^2 + ...` gives
/// `a_3 - delta a_2^2 = -(alpha-1)/3 (w2 - mu w1^2)` with
/// `mu = 2alpha - 3 - 3delta(alpha-1)`, and `|w2 - mu w1^2| <= max(1, |mu|)`.
/// Equality holds for `w = z` (when `|mu| >= 1`) and `w = z^2`.
pub fn fekete_szego_g_sharp(alpha: f64, delta: f64) -> f64 {
    let mu = 2.0 * alpha - 3.0 - 3.0 * delta * (alpha - 1.0);
    (alpha - 1.0) / 3.0 * mu.abs().max(1.0)
}

/// `|b_3 - delta b_2^2| <= 2(alpha-1)|lambda|/3 + |delta||lambda|^2/4` for `n = 1`.
pub fn fekete_szego_f(alpha: f64, lambda_abs: f64, delta_abs: f64) -> f64 {
    2.0 * (alpha - 1.0) * lambda_abs / 3.0 + delta_abs * lambda_abs * lambda_abs / 4.0
}

/// `(1 - r, 1 + r)`, the range of `|h'(z)|` on `|z| = r`.
pub fn distortion_interval(r: f64) -> (f64, f64) {
    (1.0 - r, 1.0 + r)
}

/// `r/(1 - r)`, the bound on `|z h''/h'|` on `|z| = r`.
pub fn pre_schwarz_deriv_bound(r: f64) -> f64 {
    r / (1.0 - r)
}

/// Lerch series `sum_{k>=0} z^k/(k+a)^s` for `0 <= z < 1`, `a > 0`, summed until
/// a term drops below `1e-16` of the running total.
pub fn lerch_phi(z_abs: f64, s: f64, a: f64) -> f64 {
    assert!((0.0..1.0).contains(&z_abs), "lerch_phi needs 0 <= z < 1");
    assert!(a > 0.0, "lerch_phi needs a > 0");
    let mut sum = a.powf(-s);
    let mut zk = 1.0;
    let mut k = 1u64;
    loop {
        zk *= z_abs;
        let term = zk / (k as f64 + a).powf(s);
        sum += term;
        if term < 1e-16 * sum || zk == 0.0 {
            return sum;
        }
        k += 1;
    }
}

/// Growth bounds on `|f(z)|` for `|z| = r`:
/// `int_0^r (1 -+ t)(1 -+ |lambda| t^n) dt`.
pub fn growth_interval(params: &ClassParams, r: f64) -> (f64, f64) {
    let lam = params.lambda().norm();
    let n = params.n() as f64;
    let rn = r.powf(n);
    let lower = r * (lam * (r / (n + 2.0) - 1.0 / (n + 1.0)) * rn - r / 2.0 + 1.0);
    let upper = r * (lam * (r / (n + 2.0) + 1.0 / (n + 1.0)) * rn + r / 2.0 + 1.0);
    (lower, upper)
}

/// Area bounds `2 pi int_0^r (1 - |lambda|^2 t^{2n})(1 -+ t)^2 t dt`.
pub fn area_interval(params: &ClassParams, r: f64) -> (f64, f64) {
    let lam2 = params.lambda().norm_sqr();
    let p = 2.0 * params.n() as f64;
    let base = r.powi(2) / 2.0 + r.powi(4) / 4.0;
    let odd = 2.0 * r.powi(3) / 3.0;
    let coupled_base = r.powf(p + 2.0) / (p + 2.0) + r.powf(p + 4.0) / (p + 4.0);
    let coupled_odd = 2.0 * r.powf(p + 3.0) / (p + 3.0);
    let lower = 2.0 * PI * (base - odd - lam2 * (coupled_base - coupled_odd));
    let upper = 2.0 * PI * (base + odd - lam2 * (coupled_base + coupled_odd));
    (lower, upper)
}

/// `int int_{|z|<r} |z|^{2p} |s(z)|^2 dx dy = pi sum_m |c_m|^2 r^{2m+2p+2}/(m+p+1)`.
fn weighted_l2(coeffs: &[Complex64], p: usize, r: f64) -> f64 {
    PI * coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| c.norm_sqr() * r.powi((2 * m + 2 * p + 2) as i32) / (m + p + 1) as f64)
        .sum::<f64>()
}

/// Area of `f(|z| < r)` counted with the Jacobian. With class parameters
/// this is `int (1 - |lambda|^2 |z|^{2n}) |h'|^2`; otherwise
/// `int |h'|^2 - |g'|^2`.
pub fn area_exact(f: &HarmonicMapping, r: f64) -> f64 {
    let hp = f.h().derivative();
    match f.params() {
        Some(p) => {
            weighted_l2(hp.coeffs(), 0, r)
                - p.lambda().norm_sqr() * weighted_l2(hp.coeffs(), p.n() as usize, r)
        }
        None => weighted_l2(hp.coeffs(), 0, r) - weighted_l2(f.g().derivative().coeffs(), 0, r),
    }
}

/// Groups of checks run by [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Coefficients,
    FeketeSzego,
    Growth,
    Area,
    Distortion,
    Tail,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Coefficients,
        Check::FeketeSzego,
        Check::Growth,
        Check::Area,
        Check::Distortion,
        Check::Tail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Coefficients => "coefficients",
            Check::FeketeSzego => "fekete-szego",
            Check::Growth => "growth",
            Check::Area => "area",
            Check::Distortion => "distortion",
            Check::Tail => "tail",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Sampling for the verifiers.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub radii: Vec<f64>,
    pub angles: usize,
    pub deltas: Vec<f64>,
    /// Truncation indices for the derivative tail check.
    pub tail_indices: Vec<usize>,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            radii: vec![0.25, 0.5, 0.75, 0.9],
            angles: 64,
            deltas: vec![-2.0, -1.0, 0.0, 1.0, 2.0],
            tail_indices: vec![2, 3, 4, 8],
            exec: Exec::default(),
        }
    }
}

/// Runs the requested checks. Mappings without class parameters produce no
/// reports.
pub fn verify(f: &HarmonicMapping, checks: &[Check], opts: &VerifyOptions) -> Vec<BoundReport> {
    let mut out = Vec::new();
    for check in checks {
        out.extend(match check {
            Check::Coefficients => check_coefficients(f),
            Check::FeketeSzego => check_fekete_szego(f, &opts.deltas),
            Check::Growth => check_growth(f, &opts.radii, opts.angles, opts.exec),
            Check::Area => check_area(f, &opts.radii),
            Check::Distortion => check_distortion(f, &opts.radii, opts.angles, opts.exec),
            Check::Tail => check_tail(f, &opts.radii, opts.angles, &opts.tail_indices, opts.exec),
        });
    }
    out
}

pub fn check_coefficients(f: &HarmonicMapping) -> Vec<BoundReport> {
    let Some(p) = f.params() else { return Vec::new() };
    let alpha = p.alpha();
    let lam = p.lambda().norm();
    let n = p.n() as usize;
    let mut out: Vec<BoundReport> = (2..=f.h().order())
        .map(|k| {
            BoundReport::measured(
                BoundId::CoeffA,
                json!({"k": k, "alpha": alpha}),
                coeff_bound_a(k, alpha),
                f.a(k).norm(),
            )
        })
        .collect();
    out.extend((n + 1..=f.g().order()).map(|j| {
        let k = j - n;
        BoundReport::measured(
            BoundId::CoeffB,
            json!({"index": j, "k": k, "n": n, "alpha": alpha, "lambda_abs": lam}),
            coeff_bound_b(k, p.n(), alpha, lam),
            f.b(j).norm(),
        )
    }));
    out
}

/// `FeketeSzegoG` on the analytic part for each `delta`, plus `FeketeSzegoF`
/// on the co-analytic part when `n = 1`.
pub fn check_fekete_szego(f: &HarmonicMapping, deltas: &[f64]) -> Vec<BoundReport> {
    let Some(p) = f.params() else { return Vec::new() };
    let alpha = p.alpha();
    let lam = p.lambda().norm();
    let mut out = Vec::new();
    for &delta in deltas {
        let measured = (f.a(3) - delta * f.a(2) * f.a(2)).norm();
        out.push(BoundReport::measured(
            BoundId::FeketeSzegoG,
            json!({"alpha": alpha, "delta": delta}),
            fekete_szego_g_sharp(alpha, delta),
            measured,
        ));
        if p.n() == 1 {
            let measured = (f.b(3) - delta * f.b(2) * f.b(2)).norm();
            out.push(BoundReport::measured(
                BoundId::FeketeSzegoF,
                json!({"alpha": alpha, "lambda_abs": lam, "delta": delta}),
                fekete_szego_f(alpha, lam, delta.abs()),
                measured,
            ));
        }
    }
    out
}

fn circle_point(r: f64, i: usize, angles: usize) -> Complex64 {
    Complex64::from_polar(r, 2.0 * PI * i as f64 / angles as f64)
}

/// Min and max of `|f|` on each circle against [`growth_interval`].
pub fn check_growth(f: &HarmonicMapping, radii: &[f64], angles: usize, exec: Exec) -> Vec<BoundReport> {
    let Some(p) = f.params() else { return Vec::new() };
    let mut out = Vec::new();
    for &r in radii {
        let modulus = |i: usize| {
            let z = circle_point(r, i, angles);
            (f.h().horner(z) + f.g().horner(z).conj()).norm()
        };
        let lo = exec.min(angles, modulus);
        let hi = exec.max(angles, modulus);
        let (bl, bu) = growth_interval(p, r);
        let params = json!({"r": r, "n": p.n(), "lambda_abs": p.lambda().norm(), "angles": angles});
        out.push(BoundReport::measured(BoundId::GrowthLower, params.clone(), bl, lo));
        out.push(BoundReport::measured(BoundId::GrowthUpper, params, bu, hi));
    }
    out
}

pub fn check_area(f: &HarmonicMapping, radii: &[f64]) -> Vec<BoundReport> {
    let Some(p) = f.params() else { return Vec::new() };
    let mut out = Vec::new();
    for &r in radii {
        let a = area_exact(f, r);
        let (lo, hi) = area_interval(p, r);
        let params = json!({"r": r, "n": p.n(), "lambda_abs": p.lambda().norm()});
        out.push(BoundReport::measured(BoundId::AreaLower, params.clone(), lo, a));
        out.push(BoundReport::measured(BoundId::AreaUpper, params, hi, a));
    }
    out
}

/// Min and max of `|h'|` on each circle against `(1 - r, 1 + r)`.
pub fn check_distortion(f: &HarmonicMapping, radii: &[f64], angles: usize, exec: Exec) -> Vec<BoundReport> {
    if f.params().is_none() {
        return Vec::new();
    }
    let hp = f.h().derivative();
    let mut out = Vec::new();
    for &r in radii {
        let modulus = |i: usize| hp.horner(circle_point(r, i, angles)).norm();
        let (bl, bu) = distortion_interval(r);
        let params = json!({"r": r, "angles": angles});
        out.push(BoundReport::measured(BoundId::DistortLower, params.clone(), bl, exec.min(angles, modulus)));
        out.push(BoundReport::measured(BoundId::DistortUpper, params, bu, exec.max(angles, modulus)));
    }
    out
}

/// Max of `|Σ'_n(z)|`, the derivative of `sum_{k>n} a_k z^k`, against
/// `r^n phi(r, 1, n)`.
pub fn check_tail(
    f: &HarmonicMapping,
    radii: &[f64],
    angles: usize,
    indices: &[usize],
    exec: Exec,
) -> Vec<BoundReport> {
    if f.params().is_none() {
        return Vec::new();
    }
    let hp = f.h().derivative();
    let mut out = Vec::new();
    for &n in indices.iter().filter(|&&n| n >= 1) {
        // coefficients of Σ'_n: k a_k z^{k-1} for k > n
        let mut tail = hp.coeffs().to_vec();
        for c in tail.iter_mut().take(n) {
            *c = Complex64::new(0.0, 0.0);
        }
        let tail = crate::series::ComplexSeries::from_coeffs(tail);
        for &r in radii {
            let measured = exec.max(angles, |i| tail.horner(circle_point(r, i, angles)).norm());
            let bound = r.powi(n as i32) * lerch_phi(r, 1.0, n as f64);
            out.push(BoundReport::measured(
                BoundId::TailDeriv,
                json!({"n": n, "r": r, "angles": angles}),
                bound,
                measured,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapclass::{couple_g, extremal_h, from_schwarz, SchwarzFunction};
    use crate::numerics::quad_adaptive;
    use crate::series::ComplexSeries;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn params(alpha: f64, lambda: f64, n: u32) -> ClassParams {
        ClassParams::new(alpha, c(lambda), n).unwrap()
    }

    fn figure_one() -> HarmonicMapping {
        let w = SchwarzFunction::monomial(c(1.0), 1, 32).unwrap();
        from_schwarz(&w, params(1.5, 0.5, 1)).unwrap()
    }

    #[test]
    fn coeff_a_examples() {
        assert_eq!(coeff_bound_a(2, 1.5), 0.5);
        assert_abs_diff_eq!(coeff_bound_a(3, 1.5), 1.0 / 6.0, epsilon = 1e-16);
        assert_abs_diff_eq!(coeff_bound_a(10, 1.2), 0.4 / 90.0, epsilon = 1e-16);
    }

    #[test]
    fn coeff_b_examples() {
        assert_eq!(coeff_bound_b(1, 1, 1.5, 0.5), 0.25);
        // b_3 = (2/3) lambda a_2 with |a_2| <= 1/2
        let b3 = coeff_bound_b(2, 1, 1.5, 0.5);
        assert_abs_diff_eq!(b3, 2.0 / 3.0 * 0.5 * coeff_bound_a(2, 1.5), epsilon = 1e-16);
        assert_abs_diff_eq!(b3, 1.0 / 6.0, epsilon = 1e-16);
        assert_abs_diff_eq!(coeff_bound_b_stated(2, 1, 1.5, 0.5), 1.0 / 12.0, epsilon = 1e-16);
        assert_eq!(coeff_bound_b(4, 2, 1.3, 0.0), 0.0);
    }

    #[test]
    fn coeff_b_consistent_with_recurrence() {
        for k in 2..30 {
            for n in 1..5u32 {
                let (alpha, lam) = (1.0 + 0.01 * k as f64, 0.9 / (n as f64 + 1.0));
                let via_a = lam * k as f64 * coeff_bound_a(k, alpha) / (k as f64 + n as f64);
                assert_eq!(coeff_bound_b(k, n, alpha, lam), via_a);
                let closed = 2.0 * lam * (alpha - 1.0) / ((k - 1) as f64 * (k as f64 + n as f64));
                assert!((coeff_bound_b(k, n, alpha, lam) - closed).abs() <= 1e-15 * closed);
            }
        }
    }

    #[test]
    fn fekete_szego_g_examples() {
        assert_abs_diff_eq!(fekete_szego_g(1.5, 1.0), 1.0 / 12.0, epsilon = 1e-16);
        assert_abs_diff_eq!(fekete_szego_g(1.5, 0.0), 1.0 / 6.0, epsilon = 1e-16);
        let alpha: f64 = 1.2;
        let center = (3.0 - 2.0 * alpha) / (3.0 * (alpha - 1.0));
        assert_abs_diff_eq!(fekete_szego_g(alpha, center), (alpha - 1.0) / 3.0, epsilon = 1e-16);
    }

    #[test]
    fn fekete_szego_g_stated_form_fails_on_extremal() {
        // h = z - z^2/2: a_2 = -1/2, a_3 = 0
        let measured = (0.0f64 - 0.25).abs();
        assert!(measured > fekete_szego_g(1.5, 1.0) + 0.1);
        assert_abs_diff_eq!(measured, fekete_szego_g_sharp(1.5, 1.0), epsilon = 1e-16);
        // and jumps on the branch boundary
        let alpha: f64 = 1.5;
        let edge = (3.0 - 2.0 * alpha) / (3.0 * (alpha - 1.0)) + 1.0 / (3.0 * (alpha - 1.0));
        let jump = (fekete_szego_g(alpha, edge) - fekete_szego_g(alpha, edge - 1e-12)).abs();
        assert!(jump > 0.01, "jump {jump}");
    }

    #[test]
    fn fekete_szego_g_sharp_is_continuous_and_attained() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let alpha = 1.0 + rng.gen_range(1e-3..=0.5);
            let center = (2.0 * alpha - 3.0) / (3.0 * (alpha - 1.0));
            let radius = 1.0 / (3.0 * (alpha - 1.0));
            for edge in [center - radius, center + radius] {
                let left = fekete_szego_g_sharp(alpha, edge - 1e-9);
                let right = fekete_szego_g_sharp(alpha, edge + 1e-9);
                assert!((left - right).abs() < 1e-8);
                assert!((fekete_szego_g_sharp(alpha, edge) - (alpha - 1.0) / 3.0).abs() < 1e-12);
            }
            // w = z and w = z^2 attain the two branches
            for (m, delta) in [(1usize, rng.gen_range(-3.0..3.0)), (2, rng.gen_range(-3.0..3.0))] {
                let w = SchwarzFunction::monomial(c(1.0), m, 8).unwrap();
                let f = from_schwarz(&w, params(alpha, 0.0, 1)).unwrap();
                let measured = (f.a(3) - delta * f.a(2) * f.a(2)).norm();
                let bound = fekete_szego_g_sharp(alpha, delta);
                assert!(measured <= bound + 1e-12);
                if m == 2 {
                    assert!((measured - (alpha - 1.0) / 3.0).abs() < 1e-12);
                } else {
                    let mu = 2.0 * alpha - 3.0 - 3.0 * delta * (alpha - 1.0);
                    assert!((measured - (alpha - 1.0) / 3.0 * mu.abs()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fekete_szego_f_examples() {
        assert_abs_diff_eq!(fekete_szego_f(1.5, 0.5, 1.0), 11.0 / 48.0, epsilon = 1e-16);
        assert_eq!(fekete_szego_f(1.5, 0.0, 1.0), 0.0);
        assert_abs_diff_eq!(fekete_szego_f(1.5, 0.5, 0.0), 1.0 / 6.0, epsilon = 1e-16);
    }

    #[test]
    fn distortion_examples_and_sharpness() {
        assert_eq!(distortion_interval(0.0), (1.0, 1.0));
        assert_eq!(pre_schwarz_deriv_bound(0.0), 0.0);
        assert_eq!(distortion_interval(0.5), (0.5, 1.5));
        assert_eq!(pre_schwarz_deriv_bound(0.5), 1.0);
        let h = ComplexSeries::from_real(&[0.0, 1.0, -0.5]);
        let hp = h.derivative();
        let hpp = hp.derivative();
        for r in [0.1, 0.4, 0.8] {
            assert_abs_diff_eq!(hp.horner(c(-r)).norm(), distortion_interval(r).1, epsilon = 1e-15);
            let pre = (c(r) * hpp.horner(c(r)) / hp.horner(c(r))).norm();
            assert_abs_diff_eq!(pre, pre_schwarz_deriv_bound(r), epsilon = 1e-14);
        }
    }

    #[test]
    fn lerch_examples() {
        assert_eq!(lerch_phi(0.0, 1.0, 3.0), 1.0 / 3.0);
        assert_abs_diff_eq!(lerch_phi(0.5, 1.0, 1.0), 2.0 * 2f64.ln(), epsilon = 1e-15);
        for i in 1..=9 {
            let r = i as f64 / 10.0;
            let closed = -(-r).ln_1p() / r;
            assert!((lerch_phi(r, 1.0, 1.0) - closed).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn growth_examples() {
        let p0 = params(1.3, 0.0, 2);
        for r in [0.1, 0.5, 0.9] {
            let (lo, hi) = growth_interval(&p0, r);
            assert_abs_diff_eq!(lo, r - r * r / 2.0, epsilon = 1e-15);
            assert_abs_diff_eq!(hi, r + r * r / 2.0, epsilon = 1e-15);
        }
        let (lo, hi) = growth_interval(&params(1.5, 0.5, 1), 1e-8);
        assert!((lo / 1e-8 - 1.0).abs() < 1e-7 && (hi / 1e-8 - 1.0).abs() < 1e-7);

        let p = params(1.5, 0.5, 1);
        let (lo, hi) = growth_interval(&p, 0.5);
        assert_abs_diff_eq!(lo, 0.5 * (0.5 * (1.0 / 6.0 - 0.5) * 0.5 - 0.25 + 1.0), epsilon = 1e-16);
        assert_abs_diff_eq!(hi, 0.5 * (0.5 * (1.0 / 6.0 + 0.5) * 0.5 + 0.25 + 1.0), epsilon = 1e-16);
        for n in 1..4u32 {
            for r in [0.2, 0.5, 0.95] {
                let lam = 0.7 / (n as f64 + 1.0);
                let p = params(1.2, lam, n);
                let ql = quad_adaptive(|t| (1.0 - t) * (1.0 - lam * t.powi(n as i32)), 0.0, r, 1e-15).unwrap();
                let qu = quad_adaptive(|t| (1.0 + t) * (1.0 + lam * t.powi(n as i32)), 0.0, r, 1e-15).unwrap();
                let (lo, hi) = growth_interval(&p, r);
                assert!((lo - ql).abs() < 1e-13 && (hi - qu).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn area_interval_matches_quadrature() {
        for n in 1..4u32 {
            for r in [0.25, 0.5, 0.9] {
                let lam = 0.8 / (n as f64 + 1.0);
                let p = params(1.4, lam, n);
                let w = |t: f64, s: f64| {
                    2.0 * PI * (1.0 - lam * lam * t.powi(2 * n as i32)) * (1.0 + s * t).powi(2) * t
                };
                let ql = quad_adaptive(|t| w(t, -1.0), 0.0, r, 1e-15).unwrap();
                let qu = quad_adaptive(|t| w(t, 1.0), 0.0, r, 1e-15).unwrap();
                let (lo, hi) = area_interval(&p, r);
                assert!((lo - ql).abs() < 1e-13 && (hi - qu).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn area_of_coupled_identity() {
        for lam in [0.0, 0.3, 0.5] {
            let f = couple_g(ComplexSeries::identity(8), params(1.2, lam, 1)).unwrap();
            for r in [0.25, 0.5, 0.75] {
                let a = area_exact(&f, r);
                let expected = PI * r * r - PI * lam * lam * r.powi(4) / 2.0;
                assert_abs_diff_eq!(a, expected, epsilon = 1e-15);
                let (lo, hi) = area_interval(f.params().unwrap(), r);
                assert!(lo <= a && a <= hi);
            }
        }
    }

    #[test]
    fn area_paths_agree() {
        // without the coupling shortcut: |h'|^2 - |g'|^2 over the disk
        let f = figure_one();
        let free = HarmonicMapping::new(f.h().clone(), f.g().clone(), None).unwrap();
        assert_abs_diff_eq!(area_exact(&f, 0.5), area_exact(&free, 0.5), epsilon = 1e-14);
    }

    #[test]
    fn area_matches_jacobian_quadrature() {
        let f = figure_one();
        let r = 0.5;
        let n = 512;
        let (dr, dt) = (r / n as f64, 2.0 * PI / n as f64);
        let mut sum = 0.0;
        for i in 0..n {
            let rho = (i as f64 + 0.5) * dr;
            for j in 0..n {
                let z = Complex64::from_polar(rho, (j as f64 + 0.5) * dt);
                sum += crate::mapclass::jacobian(&f, z).unwrap() * rho * dr * dt;
            }
        }
        let exact = area_exact(&f, r);
        assert!(((sum - exact) / exact).abs() < 1e-4, "{sum} vs {exact}");
    }

    #[test]
    fn figure_one_passes_every_check() {
        let f = figure_one();
        let reports = verify(&f, &Check::ALL, &VerifyOptions::default());
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.is_satisfied(), "{}", r.to_json_line());
        }
        // b_2 = lambda/2 sits on its bound
        let b2 = reports
            .iter()
            .find(|r| r.bound_id == BoundId::CoeffB && r.params["index"] == 2)
            .unwrap();
        assert_abs_diff_eq!(b2.margin.unwrap(), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn extremal_attains_coefficient_bound() {
        for k in 2..=8 {
            for alpha in [1.1, 1.3, 1.5] {
                let h = extremal_h(k, alpha, 32).unwrap();
                assert!((h.coeff(k).norm() - coeff_bound_a(k, alpha)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stated_b_form_fails_on_figure_one() {
        let f = figure_one();
        let b3 = f.b(3).norm();
        assert!((b3 - 1.0 / 6.0).abs() < 1e-12);
        assert!(b3 > coeff_bound_b_stated(2, 1, 1.5, 0.5) + 1e-3);
        assert!((b3 - coeff_bound_b(2, 1, 1.5, 0.5)).abs() < 1e-12);
    }

    #[test]
    fn doubled_b2_fails() {
        let f = figure_one();
        let mut g = f.g().coeffs().to_vec();
        g[2] *= 2.0;
        let bad = HarmonicMapping::new(f.h().clone(), ComplexSeries::from_coeffs(g), f.params().copied()).unwrap();
        let failed: Vec<_> = check_coefficients(&bad).into_iter().filter(|r| !r.is_satisfied()).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].bound_id, BoundId::CoeffB);
    }

    #[test]
    fn report_json_shape() {
        let r = BoundReport::measured(BoundId::CoeffA, json!({"k": 2}), 0.5, 0.25);
        let v: Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(v["bound_id"], "CoeffA");
        assert_eq!(v["bound"], 0.5);
        assert_eq!(v["measured"], 0.25);
        assert_eq!(v["satisfied"], true);
        assert_eq!(v["margin"], 0.25);
        let o = BoundReport::oracle(BoundId::AreaUpper, json!({}), 1.0);
        let v: Value = serde_json::from_str(&o.to_json_line()).unwrap();
        assert!(v["measured"].is_null() && v["satisfied"].is_null() && v["margin"].is_null());
        let lower = BoundReport::measured(BoundId::GrowthLower, json!({}), 0.5, 0.5 - 1e-10);
        assert_eq!(lower.satisfied, Some(true));
        let lower = BoundReport::measured(BoundId::GrowthLower, json!({}), 0.5, 0.4);
        assert_eq!(lower.satisfied, Some(false));
        assert_eq!(BoundReport::strict_lower(BoundId::CloseToConvex, json!({}), 0.0, 0.0).satisfied, Some(false));
    }

    #[test]
    fn tail_bound_holds_on_extremals() {
        for k in 2..=6 {
            let h = extremal_h(k, 1.5, 64).unwrap();
            let f = couple_g(h, params(1.5, 0.5, 1)).unwrap();
            let reports = check_tail(&f, &[0.3, 0.6, 0.9], 64, &[1, 2, 3, 5], Exec::default());
            assert!(reports.iter().all(|r| r.is_satisfied()));
        }
    }
}
