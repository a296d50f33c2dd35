//! Iterated function systems on the unit hypercube, discretized to exact
//! grid cells.
//!
//! Every built-in system contracts by 1/3 and translates by multiples of
//! 1/3, so each map sends grid cells exactly onto grid cells and the
//! Hutchinson operator (the union of all map images) becomes integer index
//! arithmetic with no rounding. Iterating from the full hypercube and
//! rasterizing yields, bit for bit, the same grids as the Kronecker-power
//! construction, which makes this module an independent oracle for it.
//!
//! Systems whose scale is not 1/b for integer b, or whose offsets are not
//! multiples of the scale, are rejected rather than approximated.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::fractal::FractalKind;
use crate::tensor::{DenseTensor, Shape};
use crate::{Error, Result};

/// Contraction `x -> scale * x + offset` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    scale: Rational64,
    offset: Vec<Rational64>,
}

impl AffineMap {
    /// Requires `0 < scale < 1` (contractivity) and every offset component
    /// in `[0, 1 - scale]` (the image stays inside the unit hypercube).
    pub fn new(scale: Rational64, offset: Vec<Rational64>) -> Result<Self> {
        if scale <= Rational64::zero() || scale >= Rational64::one() {
            return Err(Error::InvalidMap(format!(
                "scale {scale} is not contractive"
            )));
        }
        if offset.is_empty() {
            return Err(Error::InvalidMap("offset has no components".to_string()));
        }
        let max = Rational64::one() - scale;
        for (axis, &o) in offset.iter().enumerate() {
            if o < Rational64::zero() || o > max {
                return Err(Error::InvalidMap(format!(
                    "offset component {o} at axis {axis} leaves the unit hypercube"
                )));
            }
        }
        Ok(AffineMap { scale, offset })
    }

    pub fn scale(&self) -> Rational64 {
        self.scale
    }

    pub fn offset(&self) -> &[Rational64] {
        &self.offset
    }

    pub fn dimension(&self) -> usize {
        self.offset.len()
    }

    /// Image of a point.
    pub fn apply(&self, point: &[Rational64]) -> Result<Vec<Rational64>> {
        if point.len() != self.dimension() {
            return Err(Error::OrderMismatch {
                left: self.dimension(),
                right: point.len(),
            });
        }
        Ok(point
            .iter()
            .zip(self.offset.iter())
            .map(|(&x, &o)| self.scale * x + o)
            .collect())
    }
}

/// Nonempty list of contractions sharing one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IfsSystem {
    dimension: usize,
    maps: Vec<AffineMap>,
}

impl IfsSystem {
    pub fn new(maps: Vec<AffineMap>) -> Result<Self> {
        let dimension = match maps.first() {
            None => return Err(Error::InvalidMap("system has no maps".to_string())),
            Some(map) => map.dimension(),
        };
        for map in &maps {
            if map.dimension() != dimension {
                return Err(Error::OrderMismatch {
                    left: dimension,
                    right: map.dimension(),
                });
            }
        }
        Ok(IfsSystem { dimension, maps })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    /// Common grid base `b` and per-map integer offsets (in units of 1/b).
    ///
    /// Exists iff every map scales by exactly 1/b and every offset is a
    /// multiple of 1/b; those are the systems whose Hutchinson steps stay
    /// on the cell grid.
    fn aligned_base(&self) -> Result<(u64, Vec<Vec<u64>>)> {
        let scale = self.maps[0].scale;
        if !scale.numer().is_one() {
            return Err(Error::NonAlignedIfs(format!(
                "scale {scale} is not the reciprocal of an integer"
            )));
        }
        let base = *scale.denom() as u64;
        let mut steps = Vec::with_capacity(self.maps.len());
        for map in &self.maps {
            if map.scale != scale {
                return Err(Error::NonAlignedIfs(format!(
                    "maps mix scales {scale} and {}",
                    map.scale
                )));
            }
            let mut cells = Vec::with_capacity(self.dimension);
            for &o in &map.offset {
                let scaled = o * Rational64::from_integer(base as i64);
                if !scaled.is_integer() {
                    return Err(Error::NonAlignedIfs(format!(
                        "offset {o} is not a multiple of {scale}"
                    )));
                }
                cells.push(scaled.to_integer() as u64);
            }
            steps.push(cells);
        }
        Ok((base, steps))
    }
}

/// Built-in system matching a catalog construction. Supported: the Cantor
/// set (2 maps), the Sierpinski carpet (8 maps), the Menger sponge
/// (20 maps); all scales are 1/3.
pub fn builtin_ifs(kind: &FractalKind) -> Result<IfsSystem> {
    let third = Rational64::new(1, 3);
    let offsets: Vec<Vec<i64>> = match kind {
        FractalKind::Cantor => vec![vec![0], vec![2]],
        FractalKind::Sierpinski => vec![
            vec![0, 0],
            vec![1, 0],
            vec![2, 0],
            vec![0, 1],
            vec![2, 1],
            vec![0, 2],
            vec![1, 2],
            vec![2, 2],
        ],
        FractalKind::Menger => vec![
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![2, 0, 0],
            vec![0, 1, 0],
            vec![2, 1, 0],
            vec![0, 2, 0],
            vec![1, 2, 0],
            vec![2, 2, 0],
            vec![0, 0, 1],
            vec![2, 0, 1],
            vec![0, 2, 1],
            vec![2, 2, 1],
            vec![0, 0, 2],
            vec![1, 0, 2],
            vec![2, 0, 2],
            vec![0, 1, 2],
            vec![2, 1, 2],
            vec![0, 2, 2],
            vec![1, 2, 2],
            vec![2, 2, 2],
        ],
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let maps = offsets
        .into_iter()
        .map(|cells| {
            AffineMap::new(
                third,
                cells.into_iter().map(|t| Rational64::new(t, 3)).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    IfsSystem::new(maps)
}

/// Occupied cells of a `side^dimension` grid over the unit hypercube,
/// `level` Hutchinson steps deep (`side = b^level`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    level: u32,
    side: u64,
    dimension: usize,
    occupied: BTreeSet<Vec<u64>>,
}

impl CellSet {
    /// Validates that every index tuple has the right arity and fits the
    /// grid.
    pub fn new(
        level: u32,
        side: u64,
        dimension: usize,
        occupied: BTreeSet<Vec<u64>>,
    ) -> Result<Self> {
        for cell in &occupied {
            if cell.len() != dimension {
                return Err(Error::OrderMismatch {
                    left: dimension,
                    right: cell.len(),
                });
            }
            for (axis, &c) in cell.iter().enumerate() {
                if c >= side {
                    return Err(Error::IndexOutOfRange {
                        axis,
                        index: c,
                        extent: side,
                    });
                }
            }
        }
        Ok(CellSet {
            level,
            side,
            dimension,
            occupied,
        })
    }

    /// The whole unit hypercube: the single cell of the level-0 grid.
    pub fn full(dimension: usize) -> Self {
        let mut occupied = BTreeSet::new();
        occupied.insert(vec![0; dimension]);
        CellSet {
            level: 0,
            side: 1,
            dimension,
            occupied,
        }
    }

    pub fn empty(dimension: usize) -> Self {
        CellSet {
            level: 0,
            side: 1,
            dimension,
            occupied: BTreeSet::new(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Cells per axis.
    pub fn side(&self) -> u64 {
        self.side
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn occupied(&self) -> &BTreeSet<Vec<u64>> {
        &self.occupied
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    /// Rasterizes to a binary tensor of shape `side^dimension`.
    pub fn to_tensor(&self) -> Result<DenseTensor> {
        let shape = Shape::new(vec![self.side as usize; self.dimension])?;
        let mut data = vec![0u64; shape.element_count()];
        for cell in &self.occupied {
            data[shape.flat_index(cell)?] = 1;
        }
        DenseTensor::new(shape, data)
    }
}

/// One application of the Hutchinson operator: the union of all map images.
///
/// Each occupied cell `c` of the level-k grid maps, under the map with
/// integer offset `t`, to the level-(k+1) cell `t * b^k + c`; the map
/// images tile sub-blocks exactly, so no geometry is approximated.
pub fn hutchinson_step(cells: &CellSet, ifs: &IfsSystem) -> Result<CellSet> {
    if cells.dimension != ifs.dimension() {
        return Err(Error::OrderMismatch {
            left: cells.dimension,
            right: ifs.dimension(),
        });
    }
    let (base, steps) = ifs.aligned_base()?;
    let mut occupied = BTreeSet::new();
    for cell in &cells.occupied {
        for step in &steps {
            let image: Vec<u64> = cell
                .iter()
                .zip(step.iter())
                .map(|(&c, &t)| t * cells.side + c)
                .collect();
            occupied.insert(image);
        }
    }
    Ok(CellSet {
        level: cells.level + 1,
        side: cells.side * base,
        dimension: cells.dimension,
        occupied,
    })
}

/// k Hutchinson steps from the full hypercube, rasterized.
pub fn iterate_ifs(ifs: &IfsSystem, k: u32) -> Result<DenseTensor> {
    let (base, _) = ifs.aligned_base()?;
    // Bound the final grid before growing any cell sets.
    let budget = crate::tensor::element_budget();
    let mut elements: u128 = 1;
    for _ in 0..k as usize * ifs.dimension() {
        elements = elements.saturating_mul(base as u128);
    }
    if elements > budget as u128 {
        return Err(Error::BudgetExceeded { elements, budget });
    }
    let mut cells = CellSet::full(ifs.dimension());
    for _ in 0..k {
        cells = hutchinson_step(&cells, ifs)?;
    }
    cells.to_tensor()
}
