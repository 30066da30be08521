//! Dense complex tensors, orthonormal bases and the small amount of matrix
//! analysis (positivity, Choi matrices, seeded sampling) the rest of the crate
//! builds on.

mod kraus;
mod linalg;
pub mod rng;
mod structure;
mod tensor;

pub use kraus::{apply_choi, KrausMap};
pub use linalg::{
    hermitian_eigen, is_psd, random_density_matrix, random_psd, random_unitary, DensityMatrix,
};
pub use structure::ClassicalStructure;
pub use tensor::{contract, rearrange, Tensor};

pub use num_complex::Complex64;

pub(crate) fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
