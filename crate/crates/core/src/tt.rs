//! Tensor-train representation and contraction.
//!
//! An order-d tensor is stored as a chain of order-3 cores. Core `i` has
//! dimensions `r_{i-1} x n_i x r_i`; the boundary ranks `r_0` and `r_d` are
//! 1, and the entry at `(x_1, ..., x_d)` is the sum over all rank paths of
//! the product of one core entry per position.
//!
//! [`multisponge_tt`] builds the chain whose contraction is the defining
//! tensor of the d-dimensional generalization of the Menger sponge: a fixed
//! first core, `d - 2` copies of one middle core, and a fixed last core, all
//! with mode size 3.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::tensor::{DenseTensor, Shape};
use crate::{Error, Result};

/// One order-3 core of a tensor train, laid out as `data[l][x][r]` with `l`
/// the left rank index, `x` the mode index, and `r` the right rank index
/// (row-major, `r` fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TtCore {
    left_rank: usize,
    mode_size: usize,
    right_rank: usize,
    data: Vec<u64>,
}

impl TtCore {
    pub fn new(
        left_rank: usize,
        mode_size: usize,
        right_rank: usize,
        data: Vec<u64>,
    ) -> Result<Self> {
        for (axis, dim) in [left_rank, mode_size, right_rank].into_iter().enumerate() {
            if dim == 0 {
                return Err(Error::ZeroExtent { axis });
            }
        }
        let expected = left_rank * mode_size * right_rank;
        if data.len() != expected {
            return Err(Error::DataLengthMismatch {
                expected,
                found: data.len(),
            });
        }
        Ok(TtCore {
            left_rank,
            mode_size,
            right_rank,
            data,
        })
    }

    pub fn left_rank(&self) -> usize {
        self.left_rank
    }

    pub fn mode_size(&self) -> usize {
        self.mode_size
    }

    pub fn right_rank(&self) -> usize {
        self.right_rank
    }

    /// Entry at (left rank, mode, right rank), bounds-checked.
    pub fn get(&self, l: usize, x: usize, r: usize) -> Result<u64> {
        for (axis, (idx, dim)) in [
            (l, self.left_rank),
            (x, self.mode_size),
            (r, self.right_rank),
        ]
        .into_iter()
        .enumerate()
        {
            if idx >= dim {
                return Err(Error::IndexOutOfRange {
                    axis,
                    index: idx as u64,
                    extent: dim as u64,
                });
            }
        }
        Ok(self.data[(l * self.mode_size + x) * self.right_rank + r])
    }

    /// Sums the core over its mode index: a `left_rank x right_rank` matrix,
    /// row-major, in arbitrary precision.
    pub fn mode_sum_matrix(&self) -> Vec<BigUint> {
        let mut sums = vec![BigUint::zero(); self.left_rank * self.right_rank];
        for l in 0..self.left_rank {
            for x in 0..self.mode_size {
                for r in 0..self.right_rank {
                    let v = self.data[(l * self.mode_size + x) * self.right_rank + r];
                    sums[l * self.right_rank + r] += v;
                }
            }
        }
        sums
    }
}

/// A tensor in TT format: a rank-consistent chain of cores with boundary
/// ranks 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TtTensor {
    cores: Vec<TtCore>,
}

impl TtTensor {
    /// Validates the rank chain: `r_0 = 1`, each `r_i` links consecutive
    /// cores, and `r_d = 1`.
    pub fn new(cores: Vec<TtCore>) -> Result<Self> {
        if cores.is_empty() {
            return Err(Error::InvalidOrder { order: 0, min: 1 });
        }
        if cores[0].left_rank != 1 {
            return Err(Error::RankChainBroken {
                position: 0,
                expected: 1,
                found: cores[0].left_rank,
            });
        }
        for i in 0..cores.len() - 1 {
            if cores[i].right_rank != cores[i + 1].left_rank {
                return Err(Error::RankChainBroken {
                    position: i + 1,
                    expected: cores[i].right_rank,
                    found: cores[i + 1].left_rank,
                });
            }
        }
        let last = cores.len() - 1;
        if cores[last].right_rank != 1 {
            return Err(Error::RankChainBroken {
                position: last + 1,
                expected: 1,
                found: cores[last].right_rank,
            });
        }
        Ok(TtTensor { cores })
    }

    /// Number of cores, i.e. the order of the represented tensor.
    pub fn order(&self) -> usize {
        self.cores.len()
    }

    pub fn cores(&self) -> &[TtCore] {
        &self.cores
    }

    /// Extents of the represented tensor.
    pub fn mode_sizes(&self) -> Vec<usize> {
        self.cores.iter().map(|c| c.mode_size).collect()
    }

    /// Contracts the chain into a dense tensor.
    ///
    /// Folds left to right: the partial state after core `i` is a
    /// `(n_1 * ... * n_i) x r_i` table of row vectors, one per prefix of
    /// mode indices. Row-major output falls out of the fold order because
    /// earlier modes vary slowest.
    pub fn contract(&self) -> Result<DenseTensor> {
        let shape = Shape::new(self.mode_sizes())?;
        let mut state: Vec<u64> = vec![1];
        let mut width = 1usize;
        for core in &self.cores {
            let rows = state.len() / width;
            let mut next = vec![0u64; rows * core.mode_size * core.right_rank];
            for row in 0..rows {
                let prefix = &state[row * width..(row + 1) * width];
                for x in 0..core.mode_size {
                    let out_base = (row * core.mode_size + x) * core.right_rank;
                    for (l, &pv) in prefix.iter().enumerate() {
                        if pv == 0 {
                            continue;
                        }
                        let core_base = (l * core.mode_size + x) * core.right_rank;
                        for r in 0..core.right_rank {
                            next[out_base + r] += pv * core.data[core_base + r];
                        }
                    }
                }
            }
            state = next;
            width = core.right_rank;
        }
        DenseTensor::new(shape, state)
    }

    /// Chained mode sums collapsed to a scalar: the product of the per-core
    /// mode-sum matrices. For a binary contracted tensor this equals its
    /// number of ones, without contracting.
    pub fn mode_sums(&self) -> BigUint {
        let mut vector: Vec<BigUint> = vec![BigUint::from(1u32)];
        for core in &self.cores {
            let matrix = core.mode_sum_matrix();
            let mut next = vec![BigUint::zero(); core.right_rank];
            for (l, v) in vector.iter().enumerate() {
                for (r, slot) in next.iter_mut().enumerate() {
                    *slot += v * &matrix[l * core.right_rank + r];
                }
            }
            vector = next;
        }
        vector.pop().unwrap_or_else(BigUint::zero)
    }
}

/// TT chain of the d-dimensional multisponge defining tensor: first core
/// `[(1,1,1) (1,0,1)]`, `d - 2` middle cores `[[(1,0,1), 0], [(0,1,0),
/// (1,0,1)]]`, last core `[(1,0,1); (0,1,0)]`, every mode size 3. `d = 2`
/// contracts to the Sierpinski carpet pattern, `d = 3` to the Menger sponge
/// pattern.
pub fn multisponge_tt(d: usize) -> Result<TtTensor> {
    if d < 2 {
        return Err(Error::InvalidOrder { order: d, min: 2 });
    }
    let first = TtCore::new(1, 3, 2, vec![1, 1, 1, 0, 1, 1])?;
    let middle = TtCore::new(2, 3, 2, vec![1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1])?;
    let last = TtCore::new(2, 3, 1, vec![1, 0, 1, 0, 1, 0])?;
    let mut cores = Vec::with_capacity(d);
    cores.push(first);
    for _ in 0..d - 2 {
        cores.push(middle.clone());
    }
    cores.push(last);
    TtTensor::new(cores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::for_each_index;

    /// A fixed order-3 train with ranks 1-2-2-1 and mode sizes 3-3-3 whose
    /// contraction is small enough to expand by hand.
    fn three_core_train() -> TtTensor {
        let g1 = TtCore::new(1, 3, 2, vec![1, 0, 0, 1, 1, 0]).unwrap();
        let g2 = TtCore::new(2, 3, 2, vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0]).unwrap();
        let g3 = TtCore::new(2, 3, 1, vec![1, 0, 1, 0, 1, 0]).unwrap();
        TtTensor::new(vec![g1, g2, g3]).unwrap()
    }

    /// Explicit sum over all rank paths, the definition written out.
    fn contract_by_nested_sums(tt: &TtTensor) -> DenseTensor {
        let dims = tt.mode_sizes();
        let shape = Shape::new(dims.clone()).unwrap();
        let mut data = vec![0u64; shape.element_count()];
        for_each_index(&dims, |flat, coords| {
            let mut paths: Vec<(Vec<usize>, u64)> = vec![(vec![0], 1)];
            for (i, core) in tt.cores().iter().enumerate() {
                let mut next = Vec::new();
                for (path, value) in &paths {
                    let l = *path.last().unwrap();
                    for r in 0..core.right_rank() {
                        let v = core.get(l, coords[i] as usize, r).unwrap();
                        if v != 0 {
                            let mut extended = path.clone();
                            extended.push(r);
                            next.push((extended, value * v));
                        }
                    }
                }
                paths = next;
            }
            data[flat] = paths.iter().map(|(_, v)| v).sum();
        });
        DenseTensor::new(shape, data).unwrap()
    }

    #[test]
    fn contract_matches_hand_expansion() {
        let t = three_core_train().contract().unwrap();
        assert_eq!(t.shape().dims(), &[3, 3, 3]);
        assert_eq!(
            t.data(),
            &[
                1, 0, 1, 0, 0, 0, 1, 0, 1, //
                0, 0, 0, 0, 1, 0, 0, 0, 0, //
                1, 0, 1, 0, 0, 0, 1, 0, 1,
            ]
        );
    }

    #[test]
    fn contract_matches_nested_sum_oracle() {
        let tt = three_core_train();
        assert_eq!(tt.contract().unwrap(), contract_by_nested_sums(&tt));
        let sponge = multisponge_tt(4).unwrap();
        assert_eq!(sponge.contract().unwrap(), contract_by_nested_sums(&sponge));
    }

    #[test]
    fn single_core_contracts_to_its_mode_vector() {
        let core = TtCore::new(1, 4, 1, vec![3, 1, 4, 1]).unwrap();
        let tt = TtTensor::new(vec![core]).unwrap();
        let t = tt.contract().unwrap();
        assert_eq!(t.shape().dims(), &[4]);
        assert_eq!(t.data(), &[3, 1, 4, 1]);
    }

    #[test]
    fn rank_chain_validation() {
        let ok = TtCore::new(1, 3, 2, vec![0; 6]).unwrap();
        let bad_left = TtCore::new(2, 3, 1, vec![0; 6]).unwrap();
        assert_eq!(
            TtTensor::new(vec![bad_left.clone()]),
            Err(Error::RankChainBroken {
                position: 0,
                expected: 1,
                found: 2,
            })
        );
        // Interior mismatch: 2 -> 3.
        let wide = TtCore::new(3, 3, 1, vec![0; 9]).unwrap();
        assert_eq!(
            TtTensor::new(vec![ok.clone(), wide]),
            Err(Error::RankChainBroken {
                position: 1,
                expected: 2,
                found: 3,
            })
        );
        // Dangling right rank at the end.
        assert_eq!(
            TtTensor::new(vec![ok.clone()]),
            Err(Error::RankChainBroken {
                position: 1,
                expected: 1,
                found: 2,
            })
        );
        assert_eq!(
            TtTensor::new(vec![]),
            Err(Error::InvalidOrder { order: 0, min: 1 })
        );
        assert!(TtTensor::new(vec![ok, bad_left]).is_ok());
    }

    #[test]
    fn core_rejects_wrong_data_length() {
        assert_eq!(
            TtCore::new(1, 3, 2, vec![0; 5]),
            Err(Error::DataLengthMismatch {
                expected: 6,
                found: 5,
            })
        );
        assert_eq!(
            TtCore::new(1, 0, 2, vec![]),
            Err(Error::ZeroExtent { axis: 1 })
        );
    }

    #[test]
    fn multisponge_d2_is_sierpinski_pattern() {
        let t = multisponge_tt(2).unwrap().contract().unwrap();
        assert_eq!(t.shape().dims(), &[3, 3]);
        assert_eq!(t.data(), &[1, 1, 1, 1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn multisponge_d3_is_menger_pattern() {
        let t = multisponge_tt(3).unwrap().contract().unwrap();
        assert_eq!(t.shape().dims(), &[3, 3, 3]);
        assert_eq!(
            t.data(),
            &[
                1, 1, 1, 1, 0, 1, 1, 1, 1, //
                1, 0, 1, 0, 0, 0, 1, 0, 1, //
                1, 1, 1, 1, 0, 1, 1, 1, 1,
            ]
        );
    }

    #[test]
    fn multisponge_rejects_low_order() {
        assert_eq!(
            multisponge_tt(1),
            Err(Error::InvalidOrder { order: 1, min: 2 })
        );
        assert_eq!(
            multisponge_tt(0),
            Err(Error::InvalidOrder { order: 0, min: 2 })
        );
    }

    #[test]
    fn mode_sums_count_ones_of_binary_contractions() {
        // By hand: (2 1) * [[2,0],[0,1]] * (2;1) = 9 ones.
        assert_eq!(three_core_train().mode_sums(), BigUint::from(9u32));
        for d in 2..=8 {
            let tt = multisponge_tt(d).unwrap();
            let contracted = tt.contract().unwrap();
            assert!(contracted.is_binary());
            assert_eq!(
                tt.mode_sums(),
                BigUint::from(contracted.count_nonzeros().unwrap()),
                "mode sums vs direct count at d = {d}"
            );
        }
    }

    #[test]
    fn mode_sums_multisponge_closed_form() {
        // (d + 2) * 2^(d-1) ones for the d-dimensional pattern.
        assert_eq!(multisponge_tt(3).unwrap().mode_sums(), BigUint::from(20u32));
        assert_eq!(multisponge_tt(2).unwrap().mode_sums(), BigUint::from(8u32));
        for d in 2u32..=16 {
            let formula = BigUint::from(d + 2) * BigUint::from(2u32).pow(d - 1);
            assert_eq!(multisponge_tt(d as usize).unwrap().mode_sums(), formula);
        }
    }
}
