use alloc::string::String;

/// Errors reported by tensor construction and fractal analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A shape had no axes at all.
    EmptyShape,
    /// An axis extent was zero.
    ZeroExtent { axis: usize },
    /// The element count of a shape exceeds the configured budget.
    /// `elements` saturates at `u128::MAX` when even the count overflows.
    BudgetExceeded { elements: u128, budget: u64 },
    /// Flat data length does not match the shape's element count.
    DataLengthMismatch { expected: usize, found: usize },
    /// Two tensors were expected to have the same order.
    OrderMismatch { left: usize, right: usize },
    /// A coordinate lies outside its axis extent.
    IndexOutOfRange {
        axis: usize,
        index: u64,
        extent: u64,
    },
    /// An axis number lies outside the tensor order.
    AxisOutOfRange { axis: usize, order: usize },
    /// The same axis was fixed twice in a slice.
    DuplicateAxis { axis: usize },
    /// An operation requiring a binary tensor saw an entry other than 0 or 1.
    NotBinary { flat_index: usize, value: u64 },
    /// Consecutive tensor-train cores disagree on the linking rank, or a
    /// boundary rank differs from 1.
    RankChainBroken {
        position: usize,
        expected: usize,
        found: usize,
    },
    /// An order below the supported minimum was requested.
    InvalidOrder { order: usize, min: usize },
    /// No catalog entry or built-in iterated function system has this name.
    UnknownName(String),
    /// An iterated function system cannot be discretized onto a grid: the
    /// scale is not a unit fraction or an offset is not a multiple of it.
    NonAlignedIfs(String),
    /// A map violates the contraction or offset bounds.
    InvalidMap(String),
    /// A fractal specification does not support the requested quantity,
    /// e.g. a base of 1 has no fractal dimension.
    DegenerateSpec(String),
    /// Box counting requires every axis extent to be the same power of the
    /// base.
    ShapeNotPower {
        axis: usize,
        extent: usize,
        base: usize,
    },
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::EmptyShape => write!(f, "shape must have at least one axis"),
            Error::ZeroExtent { axis } => write!(f, "axis {axis} has extent 0"),
            Error::BudgetExceeded { elements, budget } => write!(
                f,
                "tensor with {elements} elements exceeds the element budget of {budget}"
            ),
            Error::DataLengthMismatch { expected, found } => {
                write!(
                    f,
                    "data length {found} does not match shape size {expected}"
                )
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "tensor orders differ: {left} vs {right}")
            }
            Error::IndexOutOfRange {
                axis,
                index,
                extent,
            } => {
                write!(
                    f,
                    "index {index} out of range for axis {axis} of extent {extent}"
                )
            }
            Error::AxisOutOfRange { axis, order } => {
                write!(f, "axis {axis} out of range for tensor of order {order}")
            }
            Error::DuplicateAxis { axis } => write!(f, "axis {axis} fixed more than once"),
            Error::NotBinary { flat_index, value } => {
                write!(f, "entry {value} at flat index {flat_index} is not 0 or 1")
            }
            Error::RankChainBroken {
                position,
                expected,
                found,
            } => write!(
                f,
                "rank chain broken at core {position}: expected rank {expected}, found {found}"
            ),
            Error::InvalidOrder { order, min } => {
                write!(f, "order {order} is not supported (minimum {min})")
            }
            Error::UnknownName(name) => write!(f, "unknown name: {name}"),
            Error::NonAlignedIfs(msg) => write!(f, "IFS is not grid aligned: {msg}"),
            Error::InvalidMap(msg) => write!(f, "invalid affine map: {msg}"),
            Error::DegenerateSpec(msg) => write!(f, "degenerate fractal spec: {msg}"),
            Error::ShapeNotPower { axis, extent, base } => write!(
                f,
                "axis {axis} extent {extent} is not a positive power of base {base}"
            ),
        }
    }
}

impl core::error::Error for Error {}
