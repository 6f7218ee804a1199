//! JSON document for a harmonic mapping.
//!
//! ```json
//! {"alpha": 1.5, "lambda": [0.5, 0.0], "n": 1, "order": 64,
//!  "h": [[0.0, 0.0], [1.0, 0.0], ...], "g": [[0.0, 0.0], ...]}
//! ```
//!
//! Coefficients are listed from degree 0. Mappings without class parameters
//! write `null` for `alpha`, `lambda` and `n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapclass::{ClassParams, HarmonicMapping};
use crate::series::ComplexSeries;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MappingDocument {
    pub alpha: Option<f64>,
    pub lambda: Option<[f64; 2]>,
    pub n: Option<u32>,
    pub order: usize,
    pub h: Vec<[f64; 2]>,
    pub g: Vec<[f64; 2]>,
}

fn pairs(s: &ComplexSeries) -> Vec<[f64; 2]> {
    s.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

fn series(pairs: &[[f64; 2]]) -> ComplexSeries {
    ComplexSeries::from_coeffs(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

impl From<&HarmonicMapping> for MappingDocument {
    fn from(f: &HarmonicMapping) -> Self {
        let p = f.params();
        Self {
            alpha: p.map(|p| p.alpha()),
            lambda: p.map(|p| [p.lambda().re, p.lambda().im]),
            n: p.map(|p| p.n()),
            order: f.h().order(),
            h: pairs(f.h()),
            g: pairs(f.g()),
        }
    }
}

impl MappingDocument {
    pub fn to_mapping(&self) -> Result<HarmonicMapping> {
        if self.h.len() != self.order + 1 {
            return Err(Error::Document(format!(
                "order {} but {} coefficients in h",
                self.order,
                self.h.len()
            )));
        }
        if self.g.is_empty() || self.g.len() > self.order + 1 {
            return Err(Error::Document(format!("{} coefficients in g", self.g.len())));
        }
        let params = match (self.alpha, self.lambda, self.n) {
            (Some(alpha), Some([re, im]), Some(n)) => Some(ClassParams::new(alpha, Complex64::new(re, im), n)?),
            (None, None, None) => None,
            _ => {
                return Err(Error::Document(
                    "alpha, lambda and n must be given together or not at all".into(),
                ))
            }
        };
        HarmonicMapping::new(series(&self.h), series(&self.g), params)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("mapping document serializes")
    }
}

/// Reads a bare coefficient list `[[re, im], ...]` from degree 0.
pub fn series_from_json(text: &str) -> Result<ComplexSeries> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    if pairs.is_empty() {
        return Err(Error::Document("empty coefficient list".into()));
    }
    Ok(series(&pairs))
}
