use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use super::symmetry::{check_symmetry, SymmetryReport};
use super::{from_basis, to_basis};
use crate::error::{Error, Result};
use crate::kernel::{c64, contract, is_psd, random_psd, rng, ClassicalStructure, Tensor};
use crate::DEFAULT_TOL;

/// Tolerance used when validating members of a PSD family.
const FAMILY_PSD_TOL: f64 = 1e-8;

/// A density hypercube: a rank-4 tensor of shape `(d, d, d, d)`, optionally
/// carrying the PSD family that generates it.
#[derive(Debug, Clone, PartialEq)]
pub struct DHState {
    dim: usize,
    tensor: Tensor,
    certificate: Option<Vec<DMatrix<Complex64>>>,
}

fn doubled(m: &DMatrix<Complex64>) -> Tensor {
    let t = Tensor::from_matrix(m);
    contract(&t, &t.conj(), &[]).expect("outer product never fails")
}

impl DHState {
    /// `rho_abcd = sum_g M^g_ab conj(M^g_cd)`.
    pub fn from_psd_family(ms: &[DMatrix<Complex64>]) -> Result<Self> {
        let d = ms.first().ok_or(Error::ShapeMismatch("empty PSD family"))?.nrows();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        for m in ms {
            if m.shape() != (d, d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: m.nrows().max(m.ncols()),
                });
            }
            if !is_psd(m, FAMILY_PSD_TOL)? {
                return Err(Error::NotPsd);
            }
        }
        Ok(Self::from_family_unchecked(ms.to_vec()))
    }

    pub(crate) fn from_family_unchecked(ms: Vec<DMatrix<Complex64>>) -> Self {
        let d = ms[0].nrows();
        let mut tensor = Tensor::zeros(&[d; 4]);
        for m in &ms {
            tensor.add_assign_scaled(&doubled(m), c64(1.0));
        }
        Self {
            dim: d,
            tensor,
            certificate: Some(ms),
        }
    }

    /// Wraps a bare tensor, requiring the Z2 x Z2 symmetry within the default tolerance.
    pub fn from_tensor(tensor: Tensor) -> Result<Self> {
        let state = Self::from_tensor_unchecked(tensor)?;
        let report = state.symmetry();
        if !report.passes(DEFAULT_TOL) {
            return Err(Error::ShapeMismatch("tensor violates the Z2 x Z2 symmetry"));
        }
        Ok(state)
    }

    /// Wraps a bare rank-4 tensor, checking only its shape.
    pub fn from_tensor_unchecked(tensor: Tensor) -> Result<Self> {
        let d = tensor.shape().first().copied().unwrap_or(0);
        if tensor.shape() != [d; 4] || d == 0 {
            return Err(Error::ShapeMismatch("a state is a (d, d, d, d) tensor"));
        }
        Ok(Self {
            dim: d,
            tensor,
            certificate: None,
        })
    }

    pub(crate) fn with_certificate(
        tensor: Tensor,
        certificate: Option<Vec<DMatrix<Complex64>>>,
    ) -> Self {
        Self {
            dim: tensor.shape()[0],
            tensor,
            certificate,
        }
    }

    /// Classical point state at `x` in the basis of `z`.
    pub fn point_in(z: &ClassicalStructure, x: usize) -> Result<Self> {
        let d = z.dim();
        if x >= d {
            return Err(Error::DimensionMismatch { expected: d, found: x });
        }
        let mut e = DMatrix::zeros(d, d);
        e[(x, x)] = c64(1.0);
        let m = z.basis().conjugate() * e * z.basis().transpose();
        Ok(Self::from_family_unchecked(alloc::vec![m]))
    }

    /// Point state at computational index `x`.
    pub fn point(d: usize, x: usize) -> Result<Self> {
        Self::point_in(&ClassicalStructure::computational(d)?, x)
    }

    pub fn zero(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim: d,
            tensor: Tensor::zeros(&[d; 4]),
            certificate: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> Tensor {
        self.tensor
    }

    pub fn certificate(&self) -> Option<&[DMatrix<Complex64>]> {
        self.certificate.as_deref()
    }

    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> Complex64 {
        self.tensor.get(&[a, b, c, d])
    }

    pub fn symmetry(&self) -> SymmetryReport {
        check_symmetry(&self.tensor).expect("states are rank 4")
    }

    /// Components in the coordinates of `z`.
    pub fn in_basis(&self, z: &ClassicalStructure) -> Result<Tensor> {
        to_basis(&self.tensor, z)
    }

    /// Builds a certified state from a family given in `z` coordinates.
    pub fn from_family_in(ms: &[DMatrix<Complex64>], z: &ClassicalStructure) -> Result<Self> {
        let local = Self::from_psd_family(ms)?;
        if local.dim != z.dim() {
            return Err(Error::DimensionMismatch {
                expected: z.dim(),
                found: local.dim,
            });
        }
        let rotated: Vec<_> = ms
            .iter()
            .map(|m| z.basis().conjugate() * m * z.basis().transpose())
            .collect();
        let tensor = from_basis(&local.tensor, z)?;
        Ok(Self::with_certificate(tensor, Some(rotated)))
    }

    /// Tensor product of states, slot index `i1 * d2 + i2`. Certificates
    /// combine as the pairwise Kronecker family.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let tensor = self.tensor.kron_slots(&other.tensor).expect("both rank 4");
        let certificate = match (&self.certificate, &other.certificate) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .flat_map(|m| b.iter().map(move |n| m.kronecker(n)))
                    .collect(),
            ),
            _ => None,
        };
        Self::with_certificate(tensor, certificate)
    }

    /// Multiplies the state by a non-negative weight.
    pub fn scaled(&self, weight: f64) -> Result<Self> {
        if weight < 0.0 || !weight.is_finite() {
            return Err(Error::Negative(weight));
        }
        let root = Float::sqrt(weight);
        Ok(Self {
            dim: self.dim,
            tensor: self.tensor.scale(c64(weight)),
            certificate: self
                .certificate
                .as_ref()
                .map(|ms| ms.iter().map(|m| m * c64(root)).collect()),
        })
    }
}

/// Certified random state built from `members` Gaussian PSD matrices and
/// scaled so the forest effect equals one.
pub fn random_dh_state(d: usize, members: usize, seed: u64) -> Result<DHState> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if members == 0 {
        return Err(Error::ShapeMismatch("need at least one family member"));
    }
    let mut g = rng::from_seed(seed);
    let ms: Vec<_> = (0..members).map(|_| random_psd(&mut g, d, d)).collect();
    // forest value of the family is sum_g (tr M^g)^2
    let forest: f64 = ms.iter().map(|m| Float::powi(m.trace().re, 2)).sum();
    let s = c64(1.0 / Float::sqrt(forest));
    Ok(DHState::from_family_unchecked(ms.into_iter().map(|m| m * s).collect()))
}
