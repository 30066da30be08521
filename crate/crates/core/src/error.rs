use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("data length {len} does not match shape {shape:?}")]
    DataLength { shape: Vec<usize>, len: usize },
    #[error("axis {axis} out of range for rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("axis {0} repeated in contraction pairs")]
    RepeatedAxis(usize),
    #[error("paired axes have extents {left} and {right}")]
    ExtentMismatch { left: usize, right: usize },
    #[error("not a permutation of {rank} axes: {perm:?}")]
    InvalidPermutation { perm: Vec<usize>, rank: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("basis is not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("rank {rank} out of range 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("Kraus family is empty")]
    EmptyKraus,
    #[error("imaginary residue {0:e} above tolerance")]
    ImaginaryResidue(f64),
    #[error("negative value {0:e} beyond tolerance")]
    Negative(f64),
    #[error("slit subset is empty")]
    EmptySubset,
    #[error("slit label {label} invalid for {dim} slits")]
    InvalidSlit { label: usize, dim: usize },
    #[error("slit label {0} repeated")]
    RepeatedSlit(usize),
    #[error("order {order} exceeds dimension {dim}")]
    OrderTooLarge { order: usize, dim: usize },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
