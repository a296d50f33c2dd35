//! File formats, RGB rendering, and the command-line front end for the
//! fractal constructions of `tensorfractal-core`.

pub mod cli;
pub mod error;
pub mod netpbm;
pub mod render;
pub mod text;
pub mod voxel;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
