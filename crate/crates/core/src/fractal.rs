//! Fractal constructions as Kronecker powers of small defining tensors.
//!
//! Each classical construction (Cantor set, Sierpinski carpet, Menger
//! sponge, Cantor dust, 3D Vicsek fractal, d-dimensional multisponge) is
//! captured by a binary defining tensor with every axis extent equal to the
//! base `n`. The k-th construction step is the k-fold generalized Kronecker
//! power of that tensor; its fractal dimension is `ln m / ln n` where `m`
//! counts the ones.
//!
//! [`FractalSpec::lazy_entry`] answers point queries on step `k` without
//! materializing it, so grids far beyond addressable memory (say `3^36`
//! cells per axis) stay reachable.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::tensor::{DenseTensor, MultiIndex, Shape};
use crate::tt::multisponge_tt;
use crate::{Error, Result};

/// Name of a built-in construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FractalKind {
    Cantor,
    Sierpinski,
    Menger,
    CantorDust,
    Vicsek3d,
    /// d-dimensional generalization of the Menger sponge, d >= 2.
    Multisponge(usize),
}

impl FractalKind {
    /// All kinds with a fixed dimension, in catalog order.
    pub fn builtin() -> [FractalKind; 5] {
        [
            FractalKind::Cantor,
            FractalKind::Sierpinski,
            FractalKind::Menger,
            FractalKind::CantorDust,
            FractalKind::Vicsek3d,
        ]
    }
}

impl core::fmt::Display for FractalKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FractalKind::Cantor => f.write_str("cantor"),
            FractalKind::Sierpinski => f.write_str("sierpinski"),
            FractalKind::Menger => f.write_str("menger"),
            FractalKind::CantorDust => f.write_str("cantor_dust"),
            FractalKind::Vicsek3d => f.write_str("vicsek3d"),
            FractalKind::Multisponge(d) => write!(f, "multisponge({d})"),
        }
    }
}

impl core::str::FromStr for FractalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cantor" => Ok(FractalKind::Cantor),
            "sierpinski" => Ok(FractalKind::Sierpinski),
            "menger" => Ok(FractalKind::Menger),
            "cantor_dust" => Ok(FractalKind::CantorDust),
            "vicsek3d" => Ok(FractalKind::Vicsek3d),
            other => {
                let inner = other
                    .strip_prefix("multisponge(")
                    .and_then(|rest| rest.strip_suffix(')'));
                match inner.and_then(|digits| digits.parse::<usize>().ok()) {
                    Some(d) => Ok(FractalKind::Multisponge(d)),
                    None => Err(Error::UnknownName(other.to_string())),
                }
            }
        }
    }
}

/// A named defining tensor together with its base scale.
///
/// Invariants enforced on construction: every axis extent equals `base`,
/// the tensor is binary, and it has at least one 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalSpec {
    name: String,
    defining: DenseTensor,
    base: usize,
    order: usize,
}

impl FractalSpec {
    pub fn new(name: impl Into<String>, defining: DenseTensor) -> Result<Self> {
        let name = name.into();
        let dims = defining.shape().dims();
        let base = dims[0];
        if dims.iter().any(|&d| d != base) {
            return Err(Error::DegenerateSpec(format!(
                "defining tensor of '{name}' has unequal axis extents"
            )));
        }
        defining.require_binary()?;
        if defining.data().iter().all(|&v| v == 0) {
            return Err(Error::DegenerateSpec(format!(
                "defining tensor of '{name}' has no ones"
            )));
        }
        let order = defining.order();
        Ok(FractalSpec {
            name,
            defining,
            base,
            order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn defining(&self) -> &DenseTensor {
        &self.defining
    }

    /// Side length denominator: each construction step divides cells by this.
    pub fn base(&self) -> usize {
        self.base
    }

    /// Spatial dimension of the construction.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of ones of the defining tensor (sub-cells kept per step).
    pub fn kept_cells(&self) -> u64 {
        self.defining.data().iter().filter(|&&v| v == 1).count() as u64
    }

    /// k-th construction step: the k-fold Kronecker power of the defining
    /// tensor, a binary grid of extent `base^k` per axis.
    pub fn iterate(&self, k: u32) -> Result<DenseTensor> {
        self.defining.kronecker_power(k)
    }

    /// Entry of `iterate(k)` at `idx` without materializing the grid.
    ///
    /// Each coordinate is split into k base-n digits, most significant
    /// first; digit j selects the coordinate of the j-th Kronecker factor,
    /// so the entry is the product of k defining-tensor lookups.
    pub fn lazy_entry(&self, k: u32, idx: &MultiIndex) -> Result<u64> {
        if idx.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: idx.order(),
            });
        }
        let n = self.base as u64;
        let mut rest: Vec<u64> = idx.coords().to_vec();
        let mut digits = vec![0u64; self.order];
        let mut product = 1u64;
        for _ in 0..k {
            for (slot, coord) in digits.iter_mut().zip(rest.iter_mut()) {
                *slot = *coord % n;
                *coord /= n;
            }
            product *= self.defining.get(&digits)?;
        }
        // Any remainder means the coordinate was >= n^k.
        for (axis, &left_over) in rest.iter().enumerate() {
            if left_over != 0 {
                return Err(Error::IndexOutOfRange {
                    axis,
                    index: idx.coords()[axis],
                    extent: n.checked_pow(k).unwrap_or(u64::MAX),
                });
            }
        }
        Ok(product)
    }

    /// Box-counting dimension `ln m / ln n` of the limit set.
    pub fn fractal_dimension(&self) -> Result<f64> {
        if self.base < 2 {
            return Err(Error::DegenerateSpec(format!(
                "fractal dimension of '{}' needs base >= 2, got {}",
                self.name, self.base
            )));
        }
        let m = self.kept_cells() as f64;
        let n = self.base as f64;
        Ok(libm::log(m) / libm::log(n))
    }

    /// Exact volumes V_0..V_k of the construction steps: each step keeps m
    /// of the n^d sub-cells, so V_j = (m / n^d)^j.
    pub fn volume_sequence(&self, k: u32) -> VolumeSequence {
        let m = BigInt::from(self.kept_cells());
        let cells = BigInt::from(self.base).pow(self.order as u32);
        let ratio = BigRational::new(m, cells);
        let mut values = Vec::with_capacity(k as usize + 1);
        let mut current = BigRational::one();
        values.push(current.clone());
        for _ in 0..k {
            current *= &ratio;
            values.push(current.clone());
        }
        VolumeSequence { values }
    }
}

/// Exact step volumes V_0..V_k; V_0 = 1 and consecutive ratios are all
/// m/n^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeSequence {
    values: Vec<BigRational>,
}

impl VolumeSequence {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] < w[0])
    }
}

/// Defining tensor of a built-in construction.
pub fn catalog(kind: &FractalKind) -> Result<FractalSpec> {
    let defining = match kind {
        FractalKind::Cantor => DenseTensor::from_vec(vec![1, 0, 1])?,
        FractalKind::Sierpinski => {
            DenseTensor::new(Shape::new(vec![3, 3])?, vec![1, 1, 1, 1, 0, 1, 1, 1, 1])?
        }
        FractalKind::Menger => DenseTensor::new(
            Shape::new(vec![3, 3, 3])?,
            vec![
                1, 1, 1, 1, 0, 1, 1, 1, 1, //
                1, 0, 1, 0, 0, 0, 1, 0, 1, //
                1, 1, 1, 1, 0, 1, 1, 1, 1,
            ],
        )?,
        FractalKind::CantorDust => DenseTensor::new(
            Shape::new(vec![3, 3, 3])?,
            vec![
                1, 0, 1, 0, 0, 0, 1, 0, 1, //
                0, 0, 0, 0, 0, 0, 0, 0, 0, //
                1, 0, 1, 0, 0, 0, 1, 0, 1,
            ],
        )?,
        FractalKind::Vicsek3d => DenseTensor::new(
            Shape::new(vec![3, 3, 3])?,
            vec![
                0, 0, 0, 0, 1, 0, 0, 0, 0, //
                0, 1, 0, 1, 1, 1, 0, 1, 0, //
                0, 0, 0, 0, 1, 0, 0, 0, 0,
            ],
        )?,
        FractalKind::Multisponge(d) => multisponge_tt(*d)?.contract()?,
    };
    FractalSpec::new(kind.to_string(), defining)
}
