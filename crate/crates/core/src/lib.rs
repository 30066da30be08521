//! Density hypercubes: the double-dilated probabilistic theory over finite
//! dimensional Hilbert spaces, with decoherence and hyper-decoherence
//! idempotents and a multi-slit interference harness.
//!
//! Every object is a dense complex tensor. States are rank-4 tensors indexed
//! `(x00, x01, x10, x11)`, maps are rank-8 tensors with the four output axes
//! first. The crate is `no_std` and only needs an allocator.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod hypercube;
pub mod interference;
pub mod karoubi;
pub mod kernel;
pub mod verify;

pub use error::{Error, Result};
pub use hypercube::{DHMap, DHState, EffectTensor};
pub use kernel::{ClassicalStructure, DensityMatrix, KrausMap, Tensor};

/// Default tolerance for Hermiticity, orthonormality and symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-10;
