//! Harmonic mappings `f = h + conj(g)` and the class of close-to-convex
//! quasiconformal mappings whose analytic part satisfies
//! `Re(1 + z h''/h') < alpha` and whose co-analytic part is tied to it by
//! `g' = lambda z^n h'`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::series::{check_disk, ComplexSeries};

/// Tolerance for the normalization `h(0) = 0`, `h'(0) = 1`, `g(0) = 0`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Smallest admissible step along the collision ray.
/// Rounding allowance, in ulps, on the caps `|w| <= 1` and `|lambda| <= 1/(n+1)`.
pub const SUP_BOUND_ULPS: f64 = 4.0;
pub const MIN_COLLISION_STEP: f64 = 1e-3;

/// Parameters `(alpha, lambda, n)` of the class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams {
    alpha: f64,
    lambda: Complex64,
    n: u32,
}

impl ClassParams {
    /// Checks `1 < alpha <= 3/2`, `n >= 1` and `|lambda| <= 1/(n+1)`.
    pub fn new(alpha: f64, lambda: Complex64, n: u32) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 1.5) {
            return Err(Error::InvalidParams(format!("alpha = {alpha} not in (1, 3/2]")));
        }
        if n == 0 {
            return Err(Error::InvalidParams("n must be a positive integer".into()));
        }
        let cap = 1.0 / (n as f64 + 1.0);
        if !(lambda.norm() <= cap * (1.0 + SUP_BOUND_ULPS * f64::EPSILON)) {
            return Err(Error::InvalidParams(format!(
                "|lambda| = {} exceeds 1/(n+1) = {cap}",
                lambda.norm()
            )));
        }
        Ok(Self { alpha, lambda, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Uniform bound `k = sup |lambda z^n| = |lambda|` on the dilatation.
    pub fn dilatation_bound(&self) -> f64 {
        self.lambda.norm()
    }

    /// `K = (1 + k)/(1 - k)`.
    pub fn qc_constant(&self) -> f64 {
        qc_constant(self)
    }
}

pub fn qc_constant(params: &ClassParams) -> f64 {
    let k = params.dilatation_bound();
    (1.0 + k) / (1.0 - k)
}

/// Analytic self-map of the disk fixing 0, carried with a certified bound
/// on its sup-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzFunction {
    series: ComplexSeries,
    sup_bound: f64,
}

impl SchwarzFunction {
    /// `c z^m`, whose sup-norm on the disk is `|c|`.
    pub fn monomial(c: Complex64, m: usize, order: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSchwarz("monomial power must be >= 1".into()));
        }
        if m > order {
            return Err(Error::InvalidSchwarz(format!("power {m} exceeds order {order}")));
        }
        Self::with_bound(ComplexSeries::monomial(c, m, order), c.norm())
    }

    /// Any polynomial with zero constant term; the certified bound is the sum
    /// of coefficient moduli.
    pub fn from_series(series: ComplexSeries) -> Result<Self> {
        let bound = series.coeffs().iter().map(|c| c.norm()).sum();
        Self::with_bound(series, bound)
    }

    fn with_bound(series: ComplexSeries, sup_bound: f64) -> Result<Self> {
        if series.coeff(0) != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidSchwarz("constant term must vanish".into()));
        }
        // |w(z)| <= sup_bound |z| < 1 on the open disk as long as sup_bound <= 1;
        // a few ulps over 1 come from unit coefficients built with from_polar
        if !(sup_bound <= 1.0 + SUP_BOUND_ULPS * f64::EPSILON) {
            return Err(Error::InvalidSchwarz(format!("sup bound {sup_bound} exceeds 1")));
        }
        Ok(Self { series, sup_bound })
    }

    pub fn series(&self) -> &ComplexSeries {
        &self.series
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }
}

/// `f = h + conj(g)`, optionally tagged with class parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicMapping {
    h: ComplexSeries,
    g: ComplexSeries,
    params: Option<ClassParams>,
}

impl HarmonicMapping {
    /// Checks the normalization of `h` and `g` (and, with parameters, that
    /// `g` has no terms of degree `<= n`). The coupling recurrence itself is
    /// not enforced; see [`HarmonicMapping::recurrence_defect`].
    pub fn new(h: ComplexSeries, g: ComplexSeries, params: Option<ClassParams>) -> Result<Self> {
        check_normalized(&h)?;
        if g.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized);
        }
        if let Some(p) = &params {
            let low = (1..=p.n as usize).map(|m| g.coeff(m).norm()).fold(0.0, f64::max);
            if low > NORMALIZATION_TOL {
                return Err(Error::InvalidParams(format!(
                    "g has terms of degree <= n = {} (max modulus {low})",
                    p.n
                )));
            }
        }
        Ok(Self { h, g, params })
    }

    /// Mapping with no co-analytic part and no class parameters.
    pub fn analytic(h: ComplexSeries) -> Result<Self> {
        let order = h.order();
        Self::new(h, ComplexSeries::zero(order), None)
    }

    pub fn h(&self) -> &ComplexSeries {
        &self.h
    }

    pub fn g(&self) -> &ComplexSeries {
        &self.g
    }

    pub fn params(&self) -> Option<&ClassParams> {
        self.params.as_ref()
    }

    /// `a_k`, the coefficients of `h`.
    pub fn a(&self, k: usize) -> Complex64 {
        self.h.coeff(k)
    }

    /// `b_k`, the coefficients of `g`.
    pub fn b(&self, k: usize) -> Complex64 {
        self.g.coeff(k)
    }

    /// Largest `|(k+n) b_{k+n} - lambda k a_k|` over the stored indices.
    /// Returns `None` without class parameters.
    pub fn recurrence_defect(&self) -> Option<f64> {
        let p = self.params?;
        let n = p.n as usize;
        let defect = (1..=self.g.order().saturating_sub(n))
            .map(|k| ((k + n) as f64 * self.b(k + n) - p.lambda * k as f64 * self.a(k)).norm())
            .fold(0.0, f64::max);
        Some(defect)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        eval_mapping(self, z)
    }
}

fn check_normalized(h: &ComplexSeries) -> Result<()> {
    let one = Complex64::new(1.0, 0.0);
    if h.order() < 1
        || h.coeff(0).norm() > NORMALIZATION_TOL
        || (h.coeff(1) - one).norm() > NORMALIZATION_TOL
    {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

/// Builds `g` from `g' = lambda z^n h'`.
pub fn couple_g(h: ComplexSeries, params: ClassParams) -> Result<HarmonicMapping> {
    check_normalized(&h)?;
    let params = ClassParams::new(params.alpha, params.lambda, params.n)?;
    let order = h.order();
    let g = h
        .derivative()
        .shift(params.n as usize)
        .scale(params.lambda)
        .antiderivative()
        .truncate(order);
    HarmonicMapping::new(h, g, Some(params))
}

/// Integral representation: `h' = exp(2(1-alpha) int_0^z w(t)/(t(1-w(t))) dt)`,
/// `h = int h'`, `g` from the coupling. The series order follows `w`.
pub fn from_schwarz(w: &SchwarzFunction, params: ClassParams) -> Result<HarmonicMapping> {
    let order = w.series.order();
    if order < 2 {
        return Err(Error::InvalidSchwarz("order must be at least 2".into()));
    }
    // w(t)/t is a genuine series because w(0) = 0
    let quotient = ComplexSeries::from_coeffs(w.series.coeffs()[1..].to_vec());
    let one_minus_w = &ComplexSeries::one(order) - &w.series;
    let integrand = quotient.div(&one_minus_w)?;
    let log_hp = integrand
        .antiderivative()
        .scale(Complex64::new(2.0 * (1.0 - params.alpha), 0.0));
    let h = log_hp.exp().truncate(order - 1).antiderivative();
    couple_g(h, params)
}

/// Extremal function for the `k`-th coefficient bound,
/// `h(z) = int_0^z (1 - t^(k-1))^(2(alpha-1)/(k-1)) dt`.
pub fn extremal_h(k: usize, alpha: f64, order: usize) -> Result<ComplexSeries> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("extremal index k = {k} < 2")));
    }
    if !(1.0..=1.5).contains(&alpha) {
        return Err(Error::InvalidParams(format!("alpha = {alpha} not in (1, 3/2]")));
    }
    if order < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let exponent = 2.0 * (alpha - 1.0) / (k - 1) as f64;
    let integrand = ComplexSeries::binomial(Complex64::new(-1.0, 0.0), k - 1, exponent, order - 1);
    Ok(integrand.antiderivative())
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 2.0 && beta < 3.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("beta = {beta} not in (2, 3)")))
    }
}

/// `h_beta(z) = (1 - (1 - z)^beta)/beta`, a normalized function with
/// `Re(1 + z h''/h') < (1 + beta)/2` that is not univalent.
pub fn counterexample_h(beta: f64, order: usize) -> Result<ComplexSeries> {
    check_beta(beta)?;
    if order < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let one_minus_z = &ComplexSeries::one(order) - &ComplexSeries::identity(order);
    let power = one_minus_z.powf(beta)?;
    Ok((&ComplexSeries::one(order) - &power).scale(Complex64::new(1.0 / beta, 0.0)))
}

/// Closed-form `h_beta(z)` on the principal branch.
pub fn counterexample_value(beta: f64, z: Complex64) -> Result<Complex64> {
    check_beta(beta)?;
    check_disk(z)?;
    let one = Complex64::new(1.0, 0.0);
    Ok((one - ((one - z).ln() * beta).exp()) / beta)
}

/// Default step along the collision ray, the midpoint of `(0, 2 cos(pi/beta))`.
pub fn default_collision_step(beta: f64) -> f64 {
    (PI / beta).cos()
}

/// Two conjugate points with `arg(1 - z) = -+pi/beta`, where `h_beta` is real
/// and therefore takes the same value: `z1 = 1 - s e^{-i pi/beta}`.
pub fn collision_pair(beta: f64, s: f64) -> Result<(Complex64, Complex64)> {
    check_beta(beta)?;
    let upper = 2.0 * (PI / beta).cos();
    if !(s >= MIN_COLLISION_STEP && s < upper) {
        return Err(Error::InvalidArgument(format!(
            "collision step s = {s} not in [{MIN_COLLISION_STEP}, {upper})"
        )));
    }
    let z1 = Complex64::new(1.0, 0.0) - Complex64::from_polar(s, -PI / beta);
    Ok((z1, z1.conj()))
}

/// Evidence that `h_beta` identifies two distinct points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollisionCertificate {
    pub beta: f64,
    pub s: f64,
    pub z1: Complex64,
    pub z2: Complex64,
    /// `|h_beta(z1) - h_beta(z2)|` from the closed form.
    pub value_gap: f64,
    /// Same gap from the truncated series of the given order.
    pub series_gap: f64,
    pub order: usize,
    pub point_distance: f64,
}

impl CollisionCertificate {
    pub const VALUE_TOL: f64 = 1e-10;
    pub const MIN_DISTANCE: f64 = 1e-2;

    pub fn new(beta: f64, s: f64, order: usize) -> Result<Self> {
        let (z1, z2) = collision_pair(beta, s)?;
        let series = counterexample_h(beta, order)?;
        Ok(Self {
            beta,
            s,
            z1,
            z2,
            value_gap: (counterexample_value(beta, z1)? - counterexample_value(beta, z2)?).norm(),
            series_gap: (series.eval(z1)? - series.eval(z2)?).norm(),
            order,
            point_distance: (z1 - z2).norm(),
        })
    }

    /// Closed-form gap below [`Self::VALUE_TOL`] and points at least
    /// [`Self::MIN_DISTANCE`] apart.
    pub fn holds(&self) -> bool {
        self.value_gap < Self::VALUE_TOL && self.point_distance > Self::MIN_DISTANCE
    }

    /// The same test using the truncated series.
    pub fn holds_for_series(&self) -> bool {
        self.series_gap < Self::VALUE_TOL && self.point_distance > Self::MIN_DISTANCE
    }
}

pub fn eval_mapping(f: &HarmonicMapping, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    Ok(f.h.horner(z) + f.g.horner(z).conj())
}

/// `omega = g'/h'` at `z`.
pub fn dilatation(f: &HarmonicMapping, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let hp = f.h.derivative().horner(z);
    if hp.norm() == 0.0 {
        return Err(Error::DegenerateDerivative { re: z.re, im: z.im });
    }
    Ok(f.g.derivative().horner(z) / hp)
}

/// `|h'|^2 - |g'|^2` at `z`.
pub fn jacobian(f: &HarmonicMapping, z: Complex64) -> Result<f64> {
    check_disk(z)?;
    let (_, hp) = f.h.horner_with_derivative(z);
    let (_, gp) = f.g.horner_with_derivative(z);
    Ok(hp.norm_sqr() - gp.norm_sqr())
}

/// Polar sampling grid: `angles` equispaced angles on each of `radii` circles
/// with radii `j r_max / radii`, `j = 1..=radii`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarGrid {
    pub angles: usize,
    pub radii: usize,
    pub r_max: f64,
}

impl PolarGrid {
    pub fn new(angles: usize, radii: usize, r_max: f64) -> Self {
        Self { angles, radii, r_max }
    }

    pub fn len(&self) -> usize {
        self.angles * self.radii
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> Complex64 {
        let (j, a) = (i / self.angles, i % self.angles);
        let r = self.r_max * (j + 1) as f64 / self.radii as f64;
        Complex64::from_polar(r, 2.0 * PI * a as f64 / self.angles as f64)
    }
}

/// Sampled `Re(1 + z h''/h')` over a polar grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipSample {
    pub alpha: f64,
    pub max_real_part: f64,
    pub argmax: Complex64,
    /// Every sample below `alpha`. A necessary condition only.
    pub satisfied: bool,
}

/// Default grid for [`sample_membership`]: 256 angles by 64 radii up to 0.99.
pub const MEMBERSHIP_GRID: PolarGrid = PolarGrid {
    angles: 256,
    radii: 64,
    r_max: 0.99,
};

pub fn sample_membership(h: &ComplexSeries, alpha: f64, grid: PolarGrid, exec: Exec) -> Result<MembershipSample> {
    if !(grid.r_max < 1.0) {
        return Err(Error::InvalidArgument(format!("grid radius {} >= 1", grid.r_max)));
    }
    let hp = h.derivative();
    let best = exec.argmin(grid.len(), |i| {
        let z = grid.point(i);
        let (d1, d2) = hp.horner_with_derivative(z);
        let value = (Complex64::new(1.0, 0.0) + z * d2 / d1).re;
        // NaN (h' = 0) must not pass as a maximum
        let value = if value.is_nan() { f64::INFINITY } else { value };
        (-value, z)
    });
    let (neg, argmax) = best.unwrap_or((-1.0, Complex64::new(0.0, 0.0)));
    let max_real_part = (-neg).max(1.0);
    Ok(MembershipSample {
        alpha,
        max_real_part,
        argmax,
        satisfied: max_real_part < alpha,
    })
}
