//! Structural analyses of binary grids: connectivity, occupancy counting,
//! and box-counting dimension estimation.
//!
//! Counting results use arbitrary-precision integers so the closed forms
//! stay exact at any dimension; the box-counting estimator is the only
//! floating-point computation here.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// Connectivity summary of a binary grid under face adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub component_count: usize,
    pub is_connected: bool,
    pub largest_component_size: usize,
}

/// Connected components under face adjacency: two occupied cells are
/// neighbors iff their multi-indices differ by exactly 1 in exactly one
/// coordinate. Breadth-first search; an empty grid counts as connected
/// (zero components).
pub fn connected_components(t: &DenseTensor) -> Result<ComponentReport> {
    t.require_binary()?;
    let dims = t.shape().dims();
    let strides = t.shape().strides();
    let data = t.data();
    let mut visited = vec![false; data.len()];
    let mut component_count = 0usize;
    let mut largest = 0usize;
    let mut queue = VecDeque::new();

    for start in 0..data.len() {
        if data[start] == 0 || visited[start] {
            continue;
        }
        component_count += 1;
        let mut size = 0usize;
        visited[start] = true;
        queue.push_back(start);
        while let Some(flat) = queue.pop_front() {
            size += 1;
            for (&dim, &stride) in dims.iter().zip(strides.iter()) {
                let coord = (flat / stride) % dim;
                if coord > 0 {
                    let down = flat - stride;
                    if data[down] == 1 && !visited[down] {
                        visited[down] = true;
                        queue.push_back(down);
                    }
                }
                if coord + 1 < dim {
                    let up = flat + stride;
                    if data[up] == 1 && !visited[up] {
                        visited[up] = true;
                        queue.push_back(up);
                    }
                }
            }
        }
        largest = largest.max(size);
    }

    Ok(ComponentReport {
        component_count,
        is_connected: component_count <= 1,
        largest_component_size: largest,
    })
}

/// Number of ones of the d-dimensional multisponge defining tensor:
/// `(d + 2) * 2^(d-1)`, exactly.
pub fn multisponge_nnz(d: usize) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::InvalidOrder { order: d, min: 2 });
    }
    Ok(BigUint::from(d + 2) * BigUint::from(2u32).pow(d as u32 - 1))
}

/// Whether the multisponge's step volumes converge to zero: true iff
/// `(d + 2) * 2^(d-1) < 3^d` in exact integer arithmetic. True for every
/// d >= 2, though only d >= 3 is usually of interest (the d = 2 pattern
/// already has zero area).
pub fn volume_vanishes(d: usize) -> Result<bool> {
    Ok(multisponge_nnz(d)? < BigUint::from(3u32).pow(d as u32))
}

/// Occupied-box counts N(n^-j) for j = 1..k, where the grid has extent n^k
/// per axis: level j coarsens the grid to n^j boxes per axis and counts the
/// boxes containing at least one 1.
pub fn box_counts(t: &DenseTensor, base: usize) -> Result<Vec<u64>> {
    t.require_binary()?;
    let levels = grid_levels(t, base)?;
    let dims = t.shape().dims();
    let order = dims.len();

    // Boolean occupancy at the finest level, then repeated n-fold
    // block-reduction; counts are gathered coarsest-first at the end.
    let mut counts_fine_first = Vec::with_capacity(levels as usize);
    let mut occupancy: Vec<bool> = t.data().iter().map(|&v| v == 1).collect();
    let mut side = dims[0];
    counts_fine_first.push(occupancy.iter().filter(|&&b| b).count() as u64);
    for _ in 1..levels {
        let coarse_side = side / base;
        let mut coarse = vec![false; coarse_side.pow(order as u32)];
        for (flat, &occ) in occupancy.iter().enumerate() {
            if !occ {
                continue;
            }
            let mut parent = 0usize;
            let mut rest = flat;
            for axis in (0..order).rev() {
                let coord = rest % side;
                rest /= side;
                parent += (coord / base) * coarse_side.pow((order - 1 - axis) as u32);
            }
            coarse[parent] = true;
        }
        counts_fine_first.push(coarse.iter().filter(|&&b| b).count() as u64);
        occupancy = coarse;
        side = coarse_side;
    }
    counts_fine_first.reverse();
    Ok(counts_fine_first)
}

/// Box-counting dimension estimate: least-squares slope of ln N(n^-j)
/// against j ln n over all levels j = 1..k. A single-level grid (k = 1)
/// degenerates to the one-point fit through the origin, ln N(1/n) / ln n.
pub fn box_count_dimension(t: &DenseTensor, base: usize) -> Result<f64> {
    let counts = box_counts(t, base)?;
    if counts.contains(&0) {
        return Err(Error::DegenerateSpec(format!(
            "box counting needs at least one occupied cell, grid of shape {:?} has none",
            t.shape().dims()
        )));
    }
    let ln = |x: f64| libm::log(x);
    let ln_n = ln(base as f64);
    if counts.len() == 1 {
        return Ok(ln(counts[0] as f64) / ln_n);
    }
    let k = counts.len() as f64;
    let xs = (1..=counts.len()).map(|j| j as f64 * ln_n);
    let ys = counts.iter().map(|&c| ln(c as f64));
    let x_mean = xs.clone().sum::<f64>() / k;
    let y_mean = ys.clone().sum::<f64>() / k;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.zip(ys) {
        cov += (x - x_mean) * (y - y_mean);
        var += (x - x_mean) * (x - x_mean);
    }
    Ok(cov / var)
}

/// Checks that every axis extent is the same power `base^k`, k >= 1, and
/// returns k.
fn grid_levels(t: &DenseTensor, base: usize) -> Result<u32> {
    if base < 2 {
        return Err(Error::DegenerateSpec(format!(
            "box counting needs base >= 2, got {base}"
        )));
    }
    let dims = t.shape().dims();
    let extent = dims[0];
    for (axis, &dim) in dims.iter().enumerate() {
        if dim != extent {
            return Err(Error::ShapeNotPower {
                axis,
                extent: dim,
                base,
            });
        }
    }
    let mut rest = extent;
    let mut levels = 0u32;
    while rest > 1 {
        if !rest.is_multiple_of(base) {
            return Err(Error::ShapeNotPower {
                axis: 0,
                extent,
                base,
            });
        }
        rest /= base;
        levels += 1;
    }
    if levels == 0 {
        return Err(Error::InvalidOrder { order: 0, min: 1 });
    }
    Ok(levels)
}
