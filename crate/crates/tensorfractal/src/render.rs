//! Real-valued RGB fractal construction and small rendering helpers.
//!
//! An RGB fractal is three independent Kronecker powers, one per channel,
//! of a small defining matrix with entries in \[0,1\]. The built-in presets
//! use only the values 1/4, 1/2, 3/4, and 1; products of those are exact in
//! binary floating point, so rendered images are bit-reproducible.

use std::str::FromStr;

use tensorfractal_core::tensor::element_budget;
use tensorfractal_core::{DenseTensor, Shape};

use crate::{Error, Result};

/// Name of a built-in channel-matrix triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgbPresetId {
    A,
    B,
    C,
}

impl FromStr for RgbPresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(RgbPresetId::A),
            "b" | "B" => Ok(RgbPresetId::B),
            "c" | "C" => Ok(RgbPresetId::C),
            other => Err(Error::Format(format!(
                "unknown rgb preset '{other}', expected a, b, or c"
            ))),
        }
    }
}

/// Three square defining matrices of equal size, one per color channel,
/// entries in \[0,1\], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbPreset {
    m: usize,
    red: Vec<f64>,
    green: Vec<f64>,
    blue: Vec<f64>,
}

impl RgbPreset {
    pub fn new(m: usize, red: Vec<f64>, green: Vec<f64>, blue: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Format("preset size must be positive".into()));
        }
        for (name, channel) in [("red", &red), ("green", &green), ("blue", &blue)] {
            if channel.len() != m * m {
                return Err(Error::Format(format!(
                    "{name} matrix has {} entries, expected {}",
                    channel.len(),
                    m * m
                )));
            }
            if let Some(v) = channel
                .iter()
                .find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0)
            {
                return Err(Error::Format(format!(
                    "{name} matrix entry {v} is outside [0, 1]"
                )));
            }
        }
        Ok(RgbPreset {
            m,
            red,
            green,
            blue,
        })
    }

    /// Side length of the defining matrices.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn red(&self) -> &[f64] {
        &self.red
    }

    pub fn green(&self) -> &[f64] {
        &self.green
    }

    pub fn blue(&self) -> &[f64] {
        &self.blue
    }
}

/// Built-in defining matrices. Preset sizes: a is 3x3, b is 4x4, c is 5x5.
pub fn rgb_preset(id: RgbPresetId) -> RgbPreset {
    const Q: f64 = 0.25;
    const H: f64 = 0.5;
    const T: f64 = 0.75;
    let (m, red, green, blue) = match id {
        RgbPresetId::A => (
            3,
            vec![
                H, 1., H, //
                1., H, 1., //
                H, 1., H,
            ],
            vec![
                T, 1., T, //
                1., 1., 1., //
                T, 1., T,
            ],
            vec![
                1., T, 1., //
                T, 1., T, //
                1., T, 1.,
            ],
        ),
        RgbPresetId::B => (
            4,
            vec![
                H, T, T, H, //
                T, 1., 1., T, //
                T, 1., 1., T, //
                H, T, T, H,
            ],
            vec![
                1., H, H, 1., //
                H, T, T, H, //
                H, T, T, H, //
                1., H, H, 1.,
            ],
            vec![
                T, 1., 1., T, //
                1., H, H, 1., //
                1., H, H, 1., //
                T, 1., 1., T,
            ],
        ),
        RgbPresetId::C => (
            5,
            vec![
                Q, H, 1., H, Q, //
                H, 1., 1., 1., H, //
                1., 1., H, 1., 1., //
                H, H, Q, H, H, //
                H, Q, Q, Q, H,
            ],
            vec![
                Q, Q, H, Q, Q, //
                Q, H, 1., H, Q, //
                H, 1., 1., 1., H, //
                1., 1., H, 1., 1., //
                H, H, Q, H, H,
            ],
            vec![
                Q, Q, Q, Q, Q, //
                Q, Q, H, Q, Q, //
                Q, H, 1., H, Q, //
                H, 1., 1., 1., H, //
                1., 1., H, 1., 1.,
            ],
        ),
    };
    RgbPreset::new(m, red, green, blue).expect("built-in presets are well formed")
}

/// Square image with an RGB triple per pixel, channel values in \[0,1\],
/// stored row-major as (row, column, channel).
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    side: usize,
    data: Vec<f64>,
}

impl RgbImage {
    pub fn new(side: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != side * side * 3 {
            return Err(Error::Format(format!(
                "image data has {} values, expected {} for side {side}",
                data.len(),
                side * side * 3
            )));
        }
        if let Some(v) = data
            .iter()
            .find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0)
        {
            return Err(Error::Format(format!(
                "channel value {v} is outside [0, 1]"
            )));
        }
        Ok(RgbImage { side, data })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// RGB triple at (row, col).
    pub fn pixel(&self, row: usize, col: usize) -> [f64; 3] {
        let base = (row * self.side + col) * 3;
        [self.data[base], self.data[base + 1], self.data[base + 2]]
    }

    /// One channel as a flat row-major layer.
    pub fn layer(&self, channel: usize) -> Vec<f64> {
        self.data.iter().skip(channel).step_by(3).copied().collect()
    }
}

/// depth-fold real Kronecker power of a square matrix, built step by step:
/// entry ((m*x + u), (m*y + v)) of the next step is cur[x,y] * matrix[u,v].
fn kron_power_f64(matrix: &[f64], m: usize, depth: u32) -> Vec<f64> {
    let mut current = vec![1.0f64];
    let mut side = 1usize;
    for _ in 0..depth {
        let next_side = side * m;
        let mut next = vec![0.0f64; next_side * next_side];
        for x in 0..side {
            for y in 0..side {
                let cv = current[x * side + y];
                for u in 0..m {
                    for v in 0..m {
                        next[(x * m + u) * next_side + (y * m + v)] = cv * matrix[u * m + v];
                    }
                }
            }
        }
        current = next;
        side = next_side;
    }
    current
}

/// RGB fractal of the given depth: channel l of the output is the depth-fold
/// Kronecker power of the preset's l-th matrix; the image side is m^depth.
pub fn rgb_fractal(preset: &RgbPreset, depth: u32) -> Result<RgbImage> {
    if depth < 1 {
        return Err(Error::Core(tensorfractal_core::Error::InvalidOrder {
            order: 0,
            min: 1,
        }));
    }
    let budget = element_budget();
    let mut pixels: u128 = 1;
    for _ in 0..2 * depth {
        pixels = pixels.saturating_mul(preset.m as u128);
    }
    if pixels > budget as u128 {
        return Err(Error::Core(tensorfractal_core::Error::BudgetExceeded {
            elements: pixels,
            budget,
        }));
    }
    let side = (preset.m as u64).pow(depth) as usize;
    let red = kron_power_f64(&preset.red, preset.m, depth);
    let green = kron_power_f64(&preset.green, preset.m, depth);
    let blue = kron_power_f64(&preset.blue, preset.m, depth);
    let mut data = Vec::with_capacity(side * side * 3);
    for ((r, g), b) in red.iter().zip(&green).zip(&blue) {
        data.push(*r);
        data.push(*g);
        data.push(*b);
    }
    RgbImage::new(side, data)
}

/// Repeats an order-1 tensor as `bar_height` identical rows, turning a
/// Cantor-style vector into a printable bitmap strip.
pub fn render_1d_strip(t: &DenseTensor, bar_height: usize) -> Result<DenseTensor> {
    if t.order() != 1 {
        return Err(Error::Format(format!(
            "strip rendering needs an order-1 tensor, got order {}",
            t.order()
        )));
    }
    if bar_height == 0 {
        return Err(Error::Format("bar height must be at least 1".into()));
    }
    let width = t.shape().dims()[0];
    let shape = Shape::new(vec![bar_height, width]).map_err(Error::Core)?;
    let mut data = Vec::with_capacity(bar_height * width);
    for _ in 0..bar_height {
        data.extend_from_slice(t.data());
    }
    DenseTensor::new(shape, data).map_err(Error::Core)
}
