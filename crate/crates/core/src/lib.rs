//! Construction and analysis of self-similar binary tensors.
//!
//! Geometric fractals such as the Cantor set, the Sierpinski carpet, and the
//! Menger sponge admit an exact description as iterated generalized Kronecker
//! powers of a small binary *defining tensor*: the k-th construction step of
//! the fractal is the k-fold Kronecker power, with a one-entry marking an
//! occupied grid cell. This crate provides
//!
//! * dense integer tensors of arbitrary order with tensor products,
//!   generalized Kronecker products, and Kronecker powers ([`tensor`]),
//! * tensor-train representations, their contraction, and the tensor-train
//!   construction of the d-dimensional multisponge family ([`tt`]),
//! * a catalog of defining tensors together with iteration, implicit entry
//!   evaluation, fractal dimensions, and exact volume sequences ([`fractal`]),
//! * grid-aligned iterated function systems acting as an independent route to
//!   the same grids ([`ifs`]),
//! * connectivity, counting, and box-counting dimension estimation
//!   ([`analysis`]).
//!
//! The crate is `no_std` (with `alloc`); all file formats and the command
//! line tool live in the companion `tensorfractal` crate.
//!
//! All fractal grids are carried as exact integers, so equality checks across
//! the different construction routes are bit-exact rather than approximate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
pub mod fractal;
pub mod ifs;
pub mod tensor;
pub mod tt;

pub use error::Error;
pub use tensor::{DenseTensor, MultiIndex, Shape};

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
