//! Quasiconformal close-to-convex harmonic mappings `f = h + conj(g)` with
//! `Re(1 + z h''/h') < alpha` (`1 < alpha <= 3/2`) and `g' = lambda z^n h'`
//! (`|lambda| <= 1/(n+1)`).
//!
//! * [`series`]: truncated complex power series.
//! * [`mapclass`]: class parameters, construction from Schwarz functions,
//!   extremal and non-univalent examples, dilatation and Jacobian.
//! * [`bounds`]: coefficient, Fekete–Szegő, distortion, growth and area
//!   bounds, and verifiers for concrete mappings.
//! * [`radii`]: radius equations and close-to-convexity of partial sums.
//! * [`numerics`]: bisection and adaptive Simpson quadrature.
//! * [`document`]: JSON form of a mapping.
//!
//! Grid sweeps run through [`exec::Exec`], which uses rayon when the
//! `parallel` feature (on by default) is enabled.

pub mod bounds;
pub mod document;
pub mod error;
pub mod exec;
pub mod mapclass;
pub mod numerics;
pub mod radii;
pub mod sample;
pub mod series;

pub use error::{Error, Result};
pub use exec::Exec;
pub use mapclass::{ClassParams, HarmonicMapping, SchwarzFunction};
pub use series::ComplexSeries;
