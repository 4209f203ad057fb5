//! Deterministic raster images of limit sets in affine charts.
//!
//! A chart fixes one homogeneous coordinate to 1, leaving two affine
//! complex coordinates (w1, w2). Two axis selectors pick a real 2-plane
//! slice (e.g. Re w1 horizontal, Re w2 vertical; unselected components
//! are 0), and a pixel is marked when the slice point is within a pixel
//! of a limit line or point. Output is binary PPM (P6): no external
//! dependencies and byte-identical across runs.

use crate::projective::{cr, CVec3, ProjLine, ProjPoint, C};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Z1,
    Z2,
    Z3,
}

impl Chart {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "z1" => Ok(Chart::Z1),
            "z2" => Ok(Chart::Z2),
            "z3" => Ok(Chart::Z3),
            _ => Err(Error::BadChart),
        }
    }

    /// Homogeneous coordinates of the affine point (w1, w2).
    fn lift(&self, w1: C, w2: C) -> CVec3 {
        match self {
            Chart::Z1 => CVec3::new(cr(1.0), w1, w2),
            Chart::Z2 => CVec3::new(w1, cr(1.0), w2),
            Chart::Z3 => CVec3::new(w1, w2, cr(1.0)),
        }
    }
}

/// One real component of (w1, w2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Re1,
    Im1,
    Re2,
    Im2,
}

impl Axis {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "re1" => Ok(Axis::Re1),
            "im1" => Ok(Axis::Im1),
            "re2" => Ok(Axis::Re2),
            "im2" => Ok(Axis::Im2),
            _ => Err(Error::BadChart),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub chart: Chart,
    pub axes: (Axis, Axis),
    /// Half-width: the window is [-R, R]^2.
    pub window: f64,
    /// Pixels per side.
    pub px: usize,
}

impl RenderOptions {
    /// Parse e.g. chart "z3", axes "re1,re2".
    pub fn parse(chart: &str, axes: &str, window: f64, px: usize) -> Result<Self> {
        let (a, b) = axes.split_once(',').ok_or(Error::BadChart)?;
        let axes = (Axis::parse(a.trim())?, Axis::parse(b.trim())?);
        if axes.0 == axes.1 || window <= 0.0 || px == 0 {
            return Err(Error::BadChart);
        }
        Ok(Self {
            chart: Chart::parse(chart)?,
            axes,
            window,
            px,
        })
    }

    fn slice_point(&self, x: f64, y: f64) -> (C, C) {
        let mut w1 = C::new(0.0, 0.0);
        let mut w2 = C::new(0.0, 0.0);
        for (axis, v) in [(self.axes.0, x), (self.axes.1, y)] {
            match axis {
                Axis::Re1 => w1.re = v,
                Axis::Im1 => w1.im = v,
                Axis::Re2 => w2.re = v,
                Axis::Im2 => w2.im = v,
            }
        }
        (w1, w2)
    }
}

/// Render lines and points into an 8-bit grayscale-as-RGB PPM: white
/// background, black marks.
pub fn render_chart(lines: &[ProjLine], points: &[ProjPoint], opts: &RenderOptions) -> Vec<u8> {
    let n = opts.px;
    let step = 2.0 * opts.window / n as f64;
    let thickness = step; // one pixel
    // Precompute the affine line data: a w1 + b w2 + c = 0 in this chart.
    let line_data: Vec<(C, C, C)> = lines
        .iter()
        .map(|l| {
            let d = l.rep();
            match opts.chart {
                Chart::Z1 => (d[1], d[2], d[0]),
                Chart::Z2 => (d[0], d[2], d[1]),
                Chart::Z3 => (d[0], d[1], d[2]),
            }
        })
        .collect();
    let point_data: Vec<CVec3> = points.iter().map(|p| p.rep().normalize()).collect();

    let mut img = vec![255u8; 3 * n * n];
    for row in 0..n {
        // image rows run top-down; the vertical axis points up
        let y = opts.window - (row as f64 + 0.5) * step;
        for col in 0..n {
            let x = -opts.window + (col as f64 + 0.5) * step;
            let (w1, w2) = opts.slice_point(x, y);
            let mut hit = false;
            for (a, b, c) in &line_data {
                let denom = (a.norm_sqr() + b.norm_sqr()).sqrt();
                if denom < 1e-14 {
                    continue; // the line at infinity of this chart
                }
                if (a * w1 + b * w2 + c).norm() / denom < thickness {
                    hit = true;
                    break;
                }
            }
            if !hit {
                let h = opts.chart.lift(w1, w2);
                let hn = h.norm();
                for p in &point_data {
                    // sine of the angle between the representative rays
                    let dot: C = h.dotc(p);
                    let d2 = 1.0 - (dot.norm() / hn).powi(2).min(1.0);
                    if d2.max(0.0).sqrt() < thickness {
                        hit = true;
                        break;
                    }
                }
            }
            if hit {
                let idx = 3 * (row * n + col);
                img[idx] = 0;
                img[idx + 1] = 0;
                img[idx + 2] = 0;
            }
        }
    }
    let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
    out.extend_from_slice(&img);
    out
}
