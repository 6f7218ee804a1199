//! Images of polar grids under a harmonic mapping, as SVG or binary PPM.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use qcharm::mapclass::eval_mapping;
use qcharm::{Error, Exec, HarmonicMapping, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Svg,
    Ppm,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderSpec {
    /// Concentric circles `|z| = j max_radius / rings`.
    pub rings: usize,
    /// Radial segments from 0 to `max_radius`.
    pub spokes: usize,
    pub max_radius: f64,
    pub samples_per_curve: usize,
    pub format: Format,
}

pub const MIN_SAMPLES: usize = 64;

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.rings == 0 || self.spokes == 0 {
            return Err(Error::InvalidArgument("rings and spokes must be at least 1".into()));
        }
        if self.samples_per_curve < MIN_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "samples per curve {} < {MIN_SAMPLES}",
                self.samples_per_curve
            )));
        }
        if !(self.max_radius > 0.0 && self.max_radius < 1.0) {
            return Err(Error::InvalidArgument(format!("max radius {} not in (0, 1)", self.max_radius)));
        }
        Ok(())
    }
}

/// Domain polylines: rings first, then spokes.
pub fn grid_curves(spec: &RenderSpec) -> Vec<Vec<Complex64>> {
    let n = spec.samples_per_curve;
    let rings = (1..=spec.rings).map(|j| {
        let r = spec.max_radius * j as f64 / spec.rings as f64;
        (0..=n)
            .map(|i| Complex64::from_polar(r, 2.0 * PI * i as f64 / n as f64))
            .collect()
    });
    let spokes = (0..spec.spokes).map(|j| {
        let theta = 2.0 * PI * j as f64 / spec.spokes as f64;
        (0..=n)
            .map(|i| Complex64::from_polar(spec.max_radius * i as f64 / n as f64, theta))
            .collect()
    });
    rings.chain(spokes).collect()
}

/// Image polylines `f(curve)`.
pub fn image_curves(f: &HarmonicMapping, spec: &RenderSpec, exec: Exec) -> Result<Vec<Vec<Complex64>>> {
    spec.validate()?;
    let domain = grid_curves(spec);
    exec.map(domain.len(), |c| domain[c].iter().map(|&z| eval_mapping(f, z)).collect::<Result<Vec<_>>>())
        .into_iter()
        .collect()
}

/// Maps the curves' bounding box (with a margin) into a `width x height`
/// pixel frame, same scale on both axes, `y` pointing down.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    scale: f64,
    cx: f64,
    cy: f64,
    width: usize,
    height: usize,
}

const MARGIN: f64 = 0.05;

impl Viewport {
    pub fn fit(curves: &[Vec<Complex64>], width: usize, height: usize) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for w in curves.iter().flatten() {
            x0 = x0.min(w.re);
            x1 = x1.max(w.re);
            y0 = y0.min(w.im);
            y1 = y1.max(w.im);
        }
        if !(x0 <= x1) {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span_x = (x1 - x0).max(f64::MIN_POSITIVE);
        let span_y = (y1 - y0).max(f64::MIN_POSITIVE);
        let usable = 1.0 - 2.0 * MARGIN;
        let scale = (usable * width as f64 / span_x).min(usable * height as f64 / span_y);
        Self {
            scale,
            cx: 0.5 * (x0 + x1),
            cy: 0.5 * (y0 + y1),
            width,
            height,
        }
    }

    pub fn project(&self, w: Complex64) -> (f64, f64) {
        (
            0.5 * self.width as f64 + self.scale * (w.re - self.cx),
            0.5 * self.height as f64 - self.scale * (w.im - self.cy),
        )
    }
}

pub fn to_svg(curves: &[Vec<Complex64>], width: usize, height: usize) -> String {
    let view = Viewport::fit(curves, width, height);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for curve in curves {
        let mut d = String::new();
        for (i, &w) in curve.iter().enumerate() {
            let (x, y) = view.project(w);
            let _ = write!(d, "{}{x:.3} {y:.3}", if i == 0 { "M" } else { " L" });
        }
        let _ = writeln!(out, r#"<path d="{d}" fill="none" stroke="black" stroke-width="0.75"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// Black-on-white raster.
pub struct Canvas {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl Canvas {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            pixels: vec![false; width * height],
        }
    }

    #[cfg(test)]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    fn plot(&mut self, x: i64, y: i64) {
        if x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height {
            self.pixels[y as usize * self.width + x as usize] = true;
        }
    }

    /// Bresenham segment, endpoints included.
    pub fn line(&mut self, (mut x0, mut y0): (i64, i64), (x1, y1): (i64, i64)) {
        let dx = (x1 - x0).abs();
        let dy = -(y1 - y0).abs();
        let sx = if x0 < x1 { 1 } else { -1 };
        let sy = if y0 < y1 { 1 } else { -1 };
        let mut err = dx + dy;
        loop {
            self.plot(x0, y0);
            if x0 == x1 && y0 == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x0 += sx;
            }
            if e2 <= dx {
                err += dx;
                y0 += sy;
            }
        }
    }

    #[cfg(test)]
    pub fn count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// `P6` encoding.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        for &p in &self.pixels {
            out.extend_from_slice(if p { &[0, 0, 0] } else { &[255, 255, 255] });
        }
        out
    }
}

pub fn rasterize(curves: &[Vec<Complex64>], width: usize, height: usize) -> Canvas {
    let view = Viewport::fit(curves, width, height);
    let mut canvas = Canvas::new(width, height);
    let pixel = |w| {
        let (x, y) = view.project(w);
        (x.round() as i64, y.round() as i64)
    };
    for curve in curves {
        for pair in curve.windows(2) {
            canvas.line(pixel(pair[0]), pixel(pair[1]));
        }
    }
    canvas
}

pub fn render(curves: &[Vec<Complex64>], format: Format, width: usize, height: usize) -> Vec<u8> {
    match format {
        Format::Svg => to_svg(curves, width, height).into_bytes(),
        Format::Ppm => rasterize(curves, width, height).to_ppm(),
    }
}
