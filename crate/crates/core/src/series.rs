//! Truncated complex power series.
//!
//! A [`ComplexSeries`] of order `N` stores the coefficients of `z^0 ..= z^N`
//! of an analytic function on the unit disk. Binary operations truncate at
//! the smaller of the two operand orders; nothing ever grows silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncation order used when the caller has no reason to pick another.
pub const DEFAULT_ORDER: usize = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    /// An empty vector is read as the zero series of order 0.
    pub fn from_coeffs(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c z^m`, or zero when `m` exceeds the order.
    pub fn monomial(c: Complex64, m: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if m <= order {
            s.coeffs[m] = c;
        }
        s
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(ONE, 1, order)
    }

    /// `1 + z + z^2 + ... + z^N`.
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![ONE; order + 1],
        }
    }

    /// Binomial series of `(1 + c z^m)^p` for real `p`, principal branch.
    pub fn binomial(c: Complex64, m: usize, p: f64, order: usize) -> Self {
        assert!(m >= 1, "binomial series needs m >= 1");
        let mut s = Self::zero(order);
        let mut binom = 1.0;
        let mut cj = ONE;
        let mut j = 0usize;
        while j * m <= order {
            s.coeffs[j * m] = cj * binom;
            binom *= (p - j as f64) / (j + 1) as f64;
            cj *= c;
            j += 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^m`; zero past the truncation order.
    pub fn coeff(&self, m: usize) -> Complex64 {
        self.coeffs.get(m).copied().unwrap_or(ZERO)
    }

    /// Drops every term above `order`. Never raises the order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Multiplies by `z^n` at the same order.
    pub fn shift(&self, n: usize) -> Self {
        let mut s = Self::zero(self.order());
        for (m, &a) in self.coeffs.iter().enumerate() {
            if m + n > self.order() {
                break;
            }
            s.coeffs[m + n] = a;
        }
        s
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &a)| a * m as f64)
                .collect(),
        }
    }

    /// Term-wise integral from 0; the order grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, &a)| a / (m + 1) as f64),
        );
        Self { coeffs }
    }

    /// Formal quotient `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let d0 = other.coeffs[0];
        if d0 == ZERO {
            return Err(Error::DivisionByZeroConstant);
        }
        let order = self.order().min(other.order());
        let mut q = vec![ZERO; order + 1];
        for m in 0..=order {
            let mut acc = self.coeffs[m];
            for j in 1..=m {
                acc -= other.coeffs[j] * q[m - j];
            }
            q[m] = acc / d0;
        }
        Ok(Self { coeffs: q })
    }

    /// Formal exponential, from `(exp a)' = a' exp a`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut b = vec![ZERO; n + 1];
        b[0] = self.coeffs[0].exp();
        for m in 1..=n {
            let mut acc = ZERO;
            for j in 1..=m {
                acc += self.coeffs[j] * b[m - j] * j as f64;
            }
            b[m] = acc / m as f64;
        }
        Self { coeffs: b }
    }

    /// Formal logarithm with `log 1 = 0`; the constant term must be exactly 1.
    pub fn log(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0 != ONE {
            return Err(Error::LogConstantTerm {
                re: a0.re,
                im: a0.im,
            });
        }
        let n = self.order();
        let mut l = vec![ZERO; n + 1];
        for m in 1..=n {
            let mut acc = self.coeffs[m] * m as f64;
            for j in 1..m {
                acc -= l[j] * self.coeffs[m - j] * j as f64;
            }
            l[m] = acc / m as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// `self^p = exp(p log self)` on the principal branch.
    pub fn powf(&self, p: f64) -> Result<Self> {
        Ok(self.log()?.scale(Complex64::new(p, 0.0)).exp())
    }

    /// Evaluates the truncated polynomial at `z` inside the open unit disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(self.horner(z))
    }

    /// Horner evaluation without the disk check.
    pub fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }

    /// Evaluates the polynomial and its derivative in one pass.
    pub fn horner_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &a in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// Largest coefficient modulus difference, over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

pub(crate) fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk { re: z.re, im: z.im })
    }
}

impl Add for &ComplexSeries {
    type Output = ComplexSeries;
    fn add(self, rhs: Self) -> ComplexSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexSeries {
    type Output = ComplexSeries;
    fn sub(self, rhs: Self) -> ComplexSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexSeries {
    type Output = ComplexSeries;
    fn mul(self, rhs: Self) -> ComplexSeries {
        let order = self.order().min(rhs.order());
        let mut c = vec![ZERO; order + 1];
        for (i, &a) in self.coeffs[..=order].iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in rhs.coeffs[..=order - i].iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ComplexSeries { coeffs: c }
    }
}

impl Neg for &ComplexSeries {
    type Output = ComplexSeries;
    fn neg(self) -> ComplexSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexSeries {
            type Output = ComplexSeries;
            fn $m(self, rhs: Self) -> ComplexSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ComplexSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})z")?,
                _ => write!(f, "({a})z^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_series_eq(a: &ComplexSeries, b: &ComplexSeries, tol: f64) {
        assert_eq!(a.order(), b.order(), "orders differ: {a} vs {b}");
        assert!(a.max_abs_diff(b) <= tol, "{a}\n  !=\n{b}");
    }

    #[test]
    fn difference_of_squares() {
        let a = ComplexSeries::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        let b = ComplexSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]);
        assert_eq!(&a * &b, ComplexSeries::from_real(&[1.0, 0.0, -1.0, 0.0, 0.0]));
    }

    #[test]
    fn product_truncates() {
        let z = ComplexSeries::identity(1);
        assert_eq!(&z * &z, ComplexSeries::zero(1));
    }

    #[test]
    fn order_mismatch_takes_minimum() {
        let a = ComplexSeries::geometric(8);
        let b = ComplexSeries::geometric(3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn geometric_telescopes() {
        let g = ComplexSeries::geometric(8);
        let one_minus_z = ComplexSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        // brute-force convolution of the coefficient lists
        let a: Vec<f64> = vec![1.0; 9];
        let b: Vec<f64> = vec![1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut conv = vec![0.0; 9];
        for i in 0..9 {
            for j in 0..9 - i {
                conv[i + j] += a[i] * b[j];
            }
        }
        assert_eq!(conv, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(&g * &one_minus_z, ComplexSeries::from_real(&conv));
    }

    #[test]
    fn derivative_examples() {
        let h = ComplexSeries::from_real(&[0.0, 1.0, -0.5]);
        assert_eq!(h.derivative(), ComplexSeries::from_real(&[1.0, -1.0]));
        assert_eq!(ComplexSeries::one(0).derivative(), ComplexSeries::zero(0));
        let q = ComplexSeries::monomial(c(0.2), 5, 5);
        assert_eq!(q.derivative(), ComplexSeries::monomial(c(1.0), 4, 4));
    }

    #[test]
    fn antiderivative_examples() {
        let hp = ComplexSeries::from_real(&[1.0, -1.0]);
        assert_eq!(hp.antiderivative(), ComplexSeries::from_real(&[0.0, 1.0, -0.5]));
        assert_eq!(ComplexSeries::zero(3).antiderivative(), ComplexSeries::zero(4));
        // lambda * zeta * (1 - zeta) with lambda = 1/2
        let integrand = ComplexSeries::from_real(&[0.0, 0.5, -0.5]);
        let g = integrand.antiderivative();
        assert_series_eq(&g, &ComplexSeries::from_real(&[0.0, 0.0, 0.25, -1.0 / 6.0]), 1e-16);
    }

    #[test]
    fn log_matches_mercator() {
        let one_minus_z = ComplexSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]);
        let l = one_minus_z.log().unwrap();
        let mercator: Vec<f64> = (0..=4)
            .map(|m| if m == 0 { 0.0 } else { -1.0 / m as f64 })
            .collect();
        assert_series_eq(&l, &ComplexSeries::from_real(&mercator), 1e-15);
    }

    #[test]
    fn exp_log_round_trip() {
        let a = ComplexSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_series_eq(&a.log().unwrap().exp(), &a, 1e-15);
        assert_eq!(ComplexSeries::zero(5).exp(), ComplexSeries::one(5));
    }

    #[test]
    fn log_rejects_unnormalized() {
        let a = ComplexSeries::from_real(&[2.0, 1.0]);
        assert!(matches!(a.log(), Err(Error::LogConstantTerm { .. })));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = ComplexSeries::from_real(&[0.3, 1.0, -2.0, 0.5, 0.0, 1.0]);
        let b = ComplexSeries::from_real(&[1.0, -0.4, 0.1, 0.0, 0.7, 0.2]);
        let q = a.div(&b).unwrap();
        assert_series_eq(&(&q * &b), &a, 1e-14);
        assert_eq!(a.div(&ComplexSeries::identity(5)), Err(Error::DivisionByZeroConstant));
    }

    #[test]
    fn binomial_matches_exp_log_route() {
        let direct = ComplexSeries::binomial(c(-1.0), 1, 2.5, 20);
        let one_minus_z = &ComplexSeries::one(20) - &ComplexSeries::identity(20);
        let via_log = one_minus_z.powf(2.5).unwrap();
        assert_series_eq(&direct, &via_log, 1e-14);
    }

    #[test]
    fn eval_examples() {
        let h = ComplexSeries::from_real(&[0.0, 1.0, -0.5]);
        assert_abs_diff_eq!(h.eval(c(0.5)).unwrap().re, 0.375, epsilon = 1e-16);
        let a = ComplexSeries::from_real(&[0.7, 3.0, -1.0]);
        assert_eq!(a.eval(c(0.0)).unwrap(), c(0.7));
        let g = ComplexSeries::geometric(50);
        let v = g.eval(c(0.3)).unwrap();
        let tail = 0.3f64.powi(51) / 0.7;
        assert!((v - c(1.0 / 0.7)).norm() <= tail + 4.0 * f64::EPSILON / 0.7);
    }

    #[test]
    fn eval_rejects_closed_disk_complement() {
        let g = ComplexSeries::geometric(4);
        assert!(matches!(g.eval(c(1.0)), Err(Error::OutsideDisk { .. })));
        assert!(matches!(g.eval(Complex64::new(0.0, -1.2)), Err(Error::OutsideDisk { .. })));
    }

    #[test]
    fn horner_with_derivative_agrees() {
        let a = ComplexSeries::from_real(&[0.1, 1.0, -0.5, 0.25, 2.0]);
        let z = Complex64::new(0.3, -0.4);
        let (p, dp) = a.horner_with_derivative(z);
        assert_abs_diff_eq!((p - a.horner(z)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((dp - a.derivative().horner(z)).norm(), 0.0, epsilon = 1e-15);
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = ComplexSeries> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), order + 1).prop_map(|v| {
            ComplexSeries::from_coeffs(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
        })
    }

    fn rel_close(a: &ComplexSeries, b: &ComplexSeries, rel: f64) -> bool {
        let scale = a.coeffs().iter().chain(b.coeffs()).map(|x| x.norm()).fold(1.0, f64::max);
        a.max_abs_diff(b) <= rel * scale
    }

    proptest! {
        #[test]
        fn product_rule(a in series_strategy(16), b in series_strategy(16)) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b.truncate(15)) + &(&a.truncate(15) * &b.derivative());
            prop_assert!(rel_close(&lhs, &rhs, 1e-13));
        }

        #[test]
        fn derivative_inverts_antiderivative(a in series_strategy(20)) {
            let back = a.antiderivative().derivative();
            prop_assert_eq!(back.order(), a.order());
            prop_assert!(back.max_abs_diff(&a) <= 1e-15 * (1.0 + a.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)));
        }

        #[test]
        fn exp_turns_sums_into_products(a in series_strategy(12), b in series_strategy(12)) {
            let mut a = a.coeffs().to_vec();
            let mut b = b.coeffs().to_vec();
            a[0] = ZERO;
            b[0] = ZERO;
            let (a, b) = (ComplexSeries::from_coeffs(a), ComplexSeries::from_coeffs(b));
            let lhs = (&a + &b).exp();
            let rhs = &a.exp() * &b.exp();
            prop_assert!(rel_close(&lhs, &rhs, 1e-12));
        }

        #[test]
        fn eval_is_linear(a in series_strategy(10), b in series_strategy(10),
                          re in -0.7f64..0.7, im in -0.7f64..0.7) {
            let z = Complex64::new(re, im);
            let lhs = (&a + &b).eval(z).unwrap();
            let rhs = a.eval(z).unwrap() + b.eval(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-14);
        }
    }
}
