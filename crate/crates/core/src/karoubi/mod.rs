//! Decoherence and hyper-decoherence, the systems they split off, and the
//! extraction functors to stochastic matrices and to density matrices.
//!
//! In the coordinates of a classical structure `Z`:
//!
//! * `decoh`: `rho_abcd -> [a=b=c=d] rho_aaaa`
//! * `hypdecoh`: `rho_abcd -> [a=d][b=c] rho_abba`

mod causality;
mod classical;
mod quantum;

pub use causality::{causality_witness, CausalityReport, WITNESS_GAP};
pub use classical::{classical_embed, classical_extract, StochasticExtract};
pub use quantum::{
    inject, quantum_extract_map, quantum_extract_state, quantum_extract_state_in,
    lift_with_weight, quantum_lift_state, sandwich,
};

use crate::error::{Error, Result};
use crate::hypercube::{DHMap, EffectTensor};
use crate::kernel::{c64, ClassicalStructure, Tensor};

fn check_dim(z: &ClassicalStructure, d: usize) -> Result<()> {
    if z.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: z.dim(),
        });
    }
    Ok(())
}

/// Generated by `f_{g,k,h} = psi_g(k) conj(psi_g(h))`, so it carries certificates.
pub fn decoh_map(z: &ClassicalStructure, d: usize) -> Result<DHMap> {
    check_dim(z, d)?;
    let f = Tensor::from_fn(&[d, d, 1, d], |i| z.entry(i[1], i[0]) * z.entry(i[3], i[0]).conj());
    DHMap::generated(f, d, 1, ClassicalStructure::computational(d)?)
}

pub fn hypdecoh_map(z: &ClassicalStructure, d: usize) -> Result<DHMap> {
    check_dim(z, d)?;
    let local = Tensor::from_fn(&[d; 8], |i| {
        let keep = i[0] == i[4] && i[3] == i[4] && i[7] == i[4] && i[1] == i[5] && i[2] == i[5] && i[6] == i[5];
        c64(f64::from(u8::from(keep)))
    });
    DHMap::from_local(&local, z, z)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Idempotent {
    Identity,
    Decoh(ClassicalStructure),
    HypDecoh(ClassicalStructure),
}

/// A system: a carrier dimension split by one of the three idempotents.
#[derive(Debug, Clone, PartialEq)]
pub struct KaroubiObject {
    dim: usize,
    idem: Idempotent,
}

impl KaroubiObject {
    pub fn new(dim: usize, idem: Idempotent) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        match &idem {
            Idempotent::Identity => {}
            Idempotent::Decoh(z) | Idempotent::HypDecoh(z) => check_dim(z, dim)?,
        }
        Ok(Self { dim, idem })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn idempotent(&self) -> &Idempotent {
        &self.idem
    }

    pub fn map(&self) -> Result<DHMap> {
        match &self.idem {
            Idempotent::Identity => DHMap::identity(self.dim),
            Idempotent::Decoh(z) => decoh_map(z, self.dim),
            Idempotent::HypDecoh(z) => hypdecoh_map(z, self.dim),
        }
    }
}

/// Forest for plain hypercubes, tree-on-bridge for both split kinds.
pub fn object_discard(obj: &KaroubiObject) -> Result<EffectTensor> {
    match &obj.idem {
        Idempotent::Identity => EffectTensor::forest(obj.dim),
        Idempotent::Decoh(z) | Idempotent::HypDecoh(z) => EffectTensor::tree_on_bridge(z),
    }
}
