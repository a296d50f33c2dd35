//! Dense integer tensors of arbitrary order.
//!
//! A [`DenseTensor`] stores nonnegative integers in row-major order (first
//! index slowest, last index fastest), so the last index of a printed vector
//! varies fastest. Indices are 0-based throughout; [`MultiIndex`] carries
//! 1-based conversion helpers for interop with the usual mathematical
//! convention.
//!
//! Tensor shapes are validated against a process-wide element budget so that
//! an over-eager Kronecker power fails with [`Error::BudgetExceeded`] instead
//! of exhausting memory.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::{Error, Result};

/// Default cap on the number of elements a single tensor may hold.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 28;

static ELEMENT_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_ELEMENT_BUDGET);

/// Current process-wide element budget.
pub fn element_budget() -> u64 {
    ELEMENT_BUDGET.load(Ordering::Relaxed)
}

/// Overrides the process-wide element budget.
///
/// Intended to be called once at startup (the CLI wires its `--budget` flag
/// and the `TENSORFRACTAL_BUDGET` environment variable through here). Shapes
/// validated before the call keep their allocation.
pub fn set_element_budget(budget: u64) {
    ELEMENT_BUDGET.store(budget, Ordering::Relaxed);
}

/// Validated tensor shape: a nonempty list of positive axis extents whose
/// product stays within the element budget.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    /// Validates `dims` against the process-wide element budget.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_budget(dims, element_budget())
    }

    /// Validates `dims` against an explicit element budget.
    pub fn with_budget(dims: Vec<usize>, budget: u64) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyShape);
        }
        let mut elements: u128 = 1;
        for (axis, &dim) in dims.iter().enumerate() {
            if dim == 0 {
                return Err(Error::ZeroExtent { axis });
            }
            elements = elements.saturating_mul(dim as u128);
        }
        if elements > budget as u128 {
            return Err(Error::BudgetExceeded { elements, budget });
        }
        Ok(Shape { dims })
    }

    /// Number of axes.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Axis extents.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total number of elements.
    pub fn element_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides (last axis has stride 1).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.dims.len()];
        for axis in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * self.dims[axis + 1];
        }
        strides
    }

    /// Row-major flat position of `coords`, checking every axis.
    pub fn flat_index(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: coords.len(),
            });
        }
        let mut flat = 0usize;
        for (axis, (&coord, &dim)) in coords.iter().zip(self.dims.iter()).enumerate() {
            if coord >= dim as u64 {
                return Err(Error::IndexOutOfRange {
                    axis,
                    index: coord,
                    extent: dim as u64,
                });
            }
            flat = flat * dim + coord as usize;
        }
        Ok(flat)
    }

    /// Coordinates of the row-major flat position `flat`.
    pub fn coords_of(&self, flat: usize) -> Vec<u64> {
        let mut coords = vec![0u64; self.order()];
        let mut rest = flat;
        for axis in (0..self.order()).rev() {
            coords[axis] = (rest % self.dims[axis]) as u64;
            rest /= self.dims[axis];
        }
        coords
    }
}

/// Coordinate tuple addressing one tensor entry, 0-based.
///
/// Human-facing text uses 1-based coordinates; [`MultiIndex::from_one_based`]
/// and [`MultiIndex::to_one_based`] perform the shift of exactly one per
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    coords: Vec<u64>,
}

impl MultiIndex {
    /// Wraps 0-based coordinates.
    pub fn new(coords: Vec<u64>) -> Self {
        MultiIndex { coords }
    }

    /// Converts 1-based coordinates to the internal 0-based form.
    pub fn from_one_based(coords: &[u64]) -> Result<Self> {
        let mut shifted = Vec::with_capacity(coords.len());
        for (axis, &coord) in coords.iter().enumerate() {
            if coord == 0 {
                return Err(Error::IndexOutOfRange {
                    axis,
                    index: 0,
                    extent: 0,
                });
            }
            shifted.push(coord - 1);
        }
        Ok(MultiIndex { coords: shifted })
    }

    /// 1-based view of the coordinates.
    pub fn to_one_based(&self) -> Vec<u64> {
        self.coords.iter().map(|&c| c + 1).collect()
    }

    /// 0-based coordinates.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Number of coordinates.
    pub fn order(&self) -> usize {
        self.coords.len()
    }
}

impl From<Vec<u64>> for MultiIndex {
    fn from(coords: Vec<u64>) -> Self {
        MultiIndex::new(coords)
    }
}

/// Dense tensor of nonnegative integers in row-major layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseTensor {
    shape: Shape,
    data: Vec<u64>,
}

impl DenseTensor {
    /// Builds a tensor from a shape and row-major data.
    pub fn new(shape: Shape, data: Vec<u64>) -> Result<Self> {
        if data.len() != shape.element_count() {
            return Err(Error::DataLengthMismatch {
                expected: shape.element_count(),
                found: data.len(),
            });
        }
        Ok(DenseTensor { shape, data })
    }

    /// All-zero tensor of the given shape.
    pub fn zeros(shape: Shape) -> Self {
        let len = shape.element_count();
        DenseTensor {
            shape,
            data: vec![0; len],
        }
    }

    /// Tensor of the given order with every axis extent 1, holding `value`.
    /// This is the identity of the generalized Kronecker product.
    pub fn kronecker_identity(order: usize, value: u64) -> Result<Self> {
        let shape = Shape::new(vec![1; order])?;
        DenseTensor::new(shape, vec![value])
    }

    /// Order-1 tensor from a vector.
    pub fn from_vec(data: Vec<u64>) -> Result<Self> {
        let shape = Shape::new(vec![data.len()])?;
        DenseTensor::new(shape, data)
    }

    /// Order-2 tensor from equally long rows.
    pub fn from_rows(rows: &[&[u64]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyShape);
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DataLengthMismatch {
                    expected: cols,
                    found: rows[i].len(),
                });
            }
            data.extend_from_slice(row);
        }
        let shape = Shape::new(vec![rows.len(), cols])?;
        DenseTensor::new(shape, data)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    /// Entry at a checked multi-index.
    pub fn entry(&self, idx: &MultiIndex) -> Result<u64> {
        Ok(self.data[self.shape.flat_index(idx.coords())?])
    }

    /// Entry at checked 0-based coordinates.
    pub fn get(&self, coords: &[u64]) -> Result<u64> {
        Ok(self.data[self.shape.flat_index(coords)?])
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v <= 1)
    }

    /// Errors with the first offending entry unless the tensor is binary.
    pub fn require_binary(&self) -> Result<()> {
        match self.data.iter().position(|&v| v > 1) {
            None => Ok(()),
            Some(flat_index) => Err(Error::NotBinary {
                flat_index,
                value: self.data[flat_index],
            }),
        }
    }

    /// Number of one-entries of a binary tensor.
    pub fn count_nonzeros(&self) -> Result<u64> {
        self.require_binary()?;
        Ok(self.data.iter().filter(|&&v| v == 1).count() as u64)
    }

    /// Sub-tensor with the listed `(axis, coordinate)` pairs fixed and the
    /// free axes preserved in order. At least one axis must stay free; use
    /// [`DenseTensor::entry`] to read a single element.
    pub fn slice(&self, fixed: &[(usize, u64)]) -> Result<DenseTensor> {
        let order = self.order();
        let mut fixed_at: Vec<Option<u64>> = vec![None; order];
        for &(axis, coord) in fixed {
            if axis >= order {
                return Err(Error::AxisOutOfRange { axis, order });
            }
            if fixed_at[axis].is_some() {
                return Err(Error::DuplicateAxis { axis });
            }
            let extent = self.shape.dims()[axis] as u64;
            if coord >= extent {
                return Err(Error::IndexOutOfRange {
                    axis,
                    index: coord,
                    extent,
                });
            }
            fixed_at[axis] = Some(coord);
        }
        let free_axes: Vec<usize> = (0..order).filter(|a| fixed_at[*a].is_none()).collect();
        if free_axes.is_empty() {
            return Err(Error::EmptyShape);
        }
        let free_dims: Vec<usize> = free_axes.iter().map(|&a| self.shape.dims()[a]).collect();
        let out_shape = Shape::new(free_dims)?;
        let mut out = DenseTensor::zeros(out_shape);

        let mut coords: Vec<u64> = fixed_at.iter().map(|c| c.unwrap_or(0)).collect();
        let out_len = out.data.len();
        for out_flat in 0..out_len {
            let free_coords = out.shape.coords_of(out_flat);
            for (slot, &axis) in free_axes.iter().enumerate() {
                coords[axis] = free_coords[slot];
            }
            out.data[out_flat] = self.data[self.shape.flat_index(&coords)?];
        }
        Ok(out)
    }

    /// Tensor product: the orders concatenate and every entry is the product
    /// of one entry of each factor.
    pub fn tensor_product(&self, other: &DenseTensor) -> Result<DenseTensor> {
        let mut dims = Vec::with_capacity(self.order() + other.order());
        dims.extend_from_slice(self.shape.dims());
        dims.extend_from_slice(other.shape.dims());
        let shape = Shape::new(dims)?;
        let mut data = Vec::with_capacity(shape.element_count());
        for &tv in &self.data {
            if tv == 0 {
                data.resize(data.len() + other.data.len(), 0);
            } else {
                data.extend(other.data.iter().map(|&uv| tv * uv));
            }
        }
        DenseTensor::new(shape, data)
    }

    /// Generalized Kronecker product of two tensors of equal order `d`: the
    /// result has extents `m_k * n_k`, and the entry at `(n_k*x_k + y_k)_k`
    /// is `self[x] * other[y]` (0-based form; the 1-based convention reads
    /// `n_k*(x_k - 1) + y_k`).
    pub fn kronecker_product(&self, other: &DenseTensor) -> Result<DenseTensor> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let out_dims = combined_dims(self.shape.dims(), other.shape.dims())?;
        let out_shape = Shape::new(out_dims)?;
        let out_strides = out_shape.strides();
        let mut out = DenseTensor::zeros(out_shape);

        // Offset of each factor entry inside one block of the output.
        let other_dims = other.shape.dims();
        let mut y_offsets = vec![0usize; other.data.len()];
        for_each_index(other_dims, |flat, coords| {
            y_offsets[flat] = coords
                .iter()
                .zip(out_strides.iter())
                .map(|(&y, &s)| y as usize * s)
                .sum();
        });

        // Stride of each block along every axis.
        let block_strides: Vec<usize> = other_dims
            .iter()
            .zip(out_strides.iter())
            .map(|(&n, &s)| n * s)
            .collect();

        for_each_index(self.shape.dims(), |t_flat, x| {
            let tv = self.data[t_flat];
            if tv == 0 {
                return;
            }
            let base: usize = x
                .iter()
                .zip(block_strides.iter())
                .map(|(&xc, &bs)| xc as usize * bs)
                .sum();
            for (u_flat, &off) in y_offsets.iter().enumerate() {
                let uv = other.data[u_flat];
                if uv != 0 {
                    out.data[base + off] = tv * uv;
                }
            }
        });
        Ok(out)
    }

    /// k-fold generalized Kronecker power. `k = 0` yields the Kronecker
    /// identity of matching order (all extents 1, single entry 1).
    pub fn kronecker_power(&self, k: u32) -> Result<DenseTensor> {
        // Validate the final shape first so an oversized request fails with
        // the true element count instead of midway through the build-up.
        let budget = element_budget();
        let mut final_elements: u128 = 1;
        for &dim in self.shape.dims() {
            let mut axis: u128 = 1;
            for _ in 0..k {
                axis = axis.saturating_mul(dim as u128);
            }
            final_elements = final_elements.saturating_mul(axis);
        }
        if final_elements > budget as u128 {
            return Err(Error::BudgetExceeded {
                elements: final_elements,
                budget,
            });
        }
        let mut result = DenseTensor::kronecker_identity(self.order(), 1)?;
        for _ in 0..k {
            result = result.kronecker_product(self)?;
        }
        Ok(result)
    }
}

fn combined_dims(left: &[usize], right: &[usize]) -> Result<Vec<usize>> {
    let budget = element_budget();
    let mut elements: u128 = 1;
    let mut dims = Vec::with_capacity(left.len());
    for (&m, &n) in left.iter().zip(right.iter()) {
        let dim = (m as u128) * (n as u128);
        elements = elements.saturating_mul(dim);
        if elements > budget as u128 {
            return Err(Error::BudgetExceeded { elements, budget });
        }
        dims.push(dim as usize);
    }
    Ok(dims)
}

/// Calls `f(flat, coords)` for every multi-index of `dims` in row-major
/// order, maintaining the coordinates incrementally.
pub(crate) fn for_each_index(dims: &[usize], mut f: impl FnMut(usize, &[u64])) {
    let len: usize = dims.iter().product();
    let mut coords = vec![0u64; dims.len()];
    for flat in 0..len {
        f(flat, &coords);
        for axis in (0..dims.len()).rev() {
            coords[axis] += 1;
            if coords[axis] < dims[axis] as u64 {
                break;
            }
            coords[axis] = 0;
        }
    }
}
