//! States, maps and effects of the double-dilated theory.
//!
//! Component order is `(x00, x01, x10, x11)`. A certified state is
//! `rho_abcd = sum_g M^g_ab conj(M^g_cd)` for PSD matrices `M^g`, which gives
//! the Z2 x Z2 symmetry
//!
//! * `tau(0,1)`: `conj(rho_abcd) = rho_badc`
//! * `tau(1,0)`: `conj(rho_abcd) = rho_cdab`
//! * `tau(1,1)`: `rho_abcd = rho_dcba`

mod census;
mod effect;
mod map;
mod shape;
mod state;
mod symmetry;

pub use census::{orbit_census, span_rank, ClassRecord, OrbitCensus, StabilizerKind};
pub use effect::{
    effect_of_state, extension_effect, forest_effect, pair, tree_on_bridge_effect, EffectKind,
    EffectTensor,
};
pub use map::{dh_compose, dh_tensor, DHMap, Generator};
pub use shape::ComponentClass;
pub use state::{random_dh_state, DHState};
pub use symmetry::{check_symmetry, SymmetryReport};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernel::{contract, ClassicalStructure, Tensor};

/// Replaces index `old` of leg `i` by `sum_old mats[i][old, new] * t[.., old, ..]`
/// for every leg in turn. Axis order is preserved.
pub(crate) fn transform_legs(t: &Tensor, mats: &[Tensor]) -> Tensor {
    debug_assert_eq!(t.rank(), mats.len());
    mats.iter().fold(t.clone(), |acc, m| {
        contract(&acc, m, &[(0, 0)]).expect("leg transform shapes are checked by callers")
    })
}

/// Leg matrices taking computational components into `z` coordinates,
/// pattern (plain, conj, conj, plain).
pub(crate) fn to_basis_mats(z: &ClassicalStructure) -> Vec<Tensor> {
    let psi = Tensor::from_matrix(z.basis());
    let psi_c = psi.conj();
    alloc::vec![psi.clone(), psi_c.clone(), psi_c, psi]
}

/// Inverse of [`to_basis_mats`].
pub(crate) fn from_basis_mats(z: &ClassicalStructure) -> Vec<Tensor> {
    let adj = Tensor::from_matrix(&z.basis().adjoint());
    let tr = Tensor::from_matrix(&z.basis().transpose());
    alloc::vec![adj.clone(), tr.clone(), tr, adj]
}

fn check_rank4(t: &Tensor, d: usize) -> Result<()> {
    if t.shape() != [d; 4] {
        return Err(Error::ShapeMismatch("expected a rank-4 tensor matching the basis"));
    }
    Ok(())
}

/// Components of a rank-4 tensor in `z` coordinates.
pub fn to_basis(t: &Tensor, z: &ClassicalStructure) -> Result<Tensor> {
    check_rank4(t, z.dim())?;
    if z.is_computational() {
        return Ok(t.clone());
    }
    Ok(transform_legs(t, &to_basis_mats(z)))
}

/// Computational components of a rank-4 tensor given in `z` coordinates.
pub fn from_basis(t: &Tensor, z: &ClassicalStructure) -> Result<Tensor> {
    check_rank4(t, z.dim())?;
    if z.is_computational() {
        return Ok(t.clone());
    }
    Ok(transform_legs(t, &from_basis_mats(z)))
}
