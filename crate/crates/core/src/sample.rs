//! Random class members built from monomial Schwarz functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::mapclass::{from_schwarz, ClassParams, HarmonicMapping, SchwarzFunction};

/// A random member together with the inputs that produced it.
#[derive(Clone, Debug)]
pub struct RandomMember {
    pub mapping: HarmonicMapping,
    pub params: ClassParams,
    /// `w(t) = schwarz_coeff * t^schwarz_power`.
    pub schwarz_coeff: Complex64,
    pub schwarz_power: usize,
}

/// Draws `alpha` in `(1, 3/2]`, `n` in `1..=max_n`, `lambda` uniformly in the
/// admissible disk, and `w(t) = c t^m` with `m` in `1..=3` and `|c| <= 1`
/// (on the unit circle one time in four).
pub fn random_member<R: Rng + ?Sized>(rng: &mut R, order: usize, max_n: u32) -> Result<RandomMember> {
    let alpha = 1.5 - 0.5 * rng.gen::<f64>();
    let n = rng.gen_range(1..=max_n.max(1));
    let lambda_cap = 1.0 / (n as f64 + 1.0);
    let lambda = Complex64::from_polar(lambda_cap * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>());
    let modulus = if rng.gen_bool(0.25) { 1.0 } else { rng.gen::<f64>() };
    let schwarz_coeff = Complex64::from_polar(modulus, 2.0 * PI * rng.gen::<f64>());
    let schwarz_power = rng.gen_range(1..=3usize);
    let params = ClassParams::new(alpha, lambda, n)?;
    let w = SchwarzFunction::monomial(schwarz_coeff, schwarz_power, order)?;
    Ok(RandomMember {
        mapping: from_schwarz(&w, params)?,
        params,
        schwarz_coeff,
        schwarz_power,
    })
}

/// `count` members from a seeded generator.
pub fn random_members<R: Rng + ?Sized>(rng: &mut R, count: usize, order: usize, max_n: u32) -> Result<Vec<RandomMember>> {
    (0..count).map(|_| random_member(rng, order, max_n)).collect()
}
