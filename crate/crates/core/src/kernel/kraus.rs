use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A completely positive map `rho -> sum_k K_k rho K_k^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausMap {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<DMatrix<Complex64>>,
}

impl KrausMap {
    pub fn new(kraus: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let (out_dim, in_dim) = first.shape();
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if kraus.iter().any(|k| k.shape() != (out_dim, in_dim)) {
            return Err(Error::ShapeMismatch("Kraus operators differ in shape"));
        }
        Ok(Self {
            in_dim,
            out_dim,
            kraus,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[DMatrix<Complex64>] {
        &self.kraus
    }

    /// Choi matrix `sum_k vec(K_k) vec(K_k)^dagger`, with row-major `vec`:
    /// entry `((o, i), (o', i'))` is indexed `o * in_dim + i`.
    pub fn choi(&self) -> DMatrix<Complex64> {
        let n = self.in_dim * self.out_dim;
        let mut j = DMatrix::zeros(n, n);
        for k in &self.kraus {
            let v = DMatrix::from_fn(n, 1, |r, _| k[(r / self.in_dim, r % self.in_dim)]);
            j += &v * v.adjoint();
        }
        j
    }

    pub fn apply(&self, rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        self.kraus
            .iter()
            .fold(DMatrix::zeros(self.out_dim, self.out_dim), |acc, k| {
                acc + k * rho * k.adjoint()
            })
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        let s = self
            .kraus
            .iter()
            .fold(DMatrix::zeros(self.in_dim, self.in_dim), |acc, k| acc + k.adjoint() * k);
        (s - DMatrix::identity(self.in_dim, self.in_dim))
            .iter()
            .all(|z| z.norm() <= tol)
    }
}

/// Applies the superoperator with Choi matrix `choi` (convention of
/// [`KrausMap::choi`]) to `rho`.
pub fn apply_choi(
    choi: &DMatrix<Complex64>,
    in_dim: usize,
    out_dim: usize,
    rho: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    if choi.shape() != (in_dim * out_dim, in_dim * out_dim) {
        return Err(Error::ShapeMismatch("Choi matrix does not match dimensions"));
    }
    if rho.shape() != (in_dim, in_dim) {
        return Err(Error::DimensionMismatch {
            expected: in_dim,
            found: rho.nrows(),
        });
    }
    Ok(DMatrix::from_fn(out_dim, out_dim, |o, p| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..in_dim {
            for q in 0..in_dim {
                acc += choi[(o * in_dim + i, p * in_dim + q)] * rho[(i, q)];
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{is_psd, random_density_matrix, rng};
    use std::vec;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn identity_channel_choi_is_twice_bell_projector() {
        let id = KrausMap::new(vec![DMatrix::identity(2, 2)]).unwrap();
        let j = id.choi();
        let phi = DMatrix::from_column_slice(4, 1, &[r(1.0), r(0.0), r(0.0), r(1.0)]);
        let expect = &phi * phi.adjoint();
        assert_eq!(j, expect);
        assert!(id.is_trace_preserving(1e-12));
    }

    #[test]
    fn flip_choi_is_rank_one_psd() {
        let x = DMatrix::from_row_slice(2, 2, &[r(0.0), r(1.0), r(1.0), r(0.0)]);
        let j = KrausMap::new(vec![x]).unwrap().choi();
        assert!(is_psd(&j, 1e-10).unwrap());
        let (vals, _) = crate::kernel::hermitian_eigen(&j).unwrap();
        assert_eq!(vals.iter().filter(|v| v.abs() > 1e-10).count(), 1);
    }

    #[test]
    fn random_choi_matrices_are_psd() {
        let mut g = rng::from_seed(17);
        for trial in 0..200 {
            let din = 1 + trial % 4;
            let dout = 1 + (trial / 4) % 4;
            let ks = (0..2).map(|_| rng::complex_gaussian(&mut g, dout, din)).collect();
            let j = KrausMap::new(ks).unwrap().choi();
            assert!(is_psd(&j, 1e-10).unwrap());
        }
    }

    #[test]
    fn choi_application_matches_kraus_application() {
        let mut g = rng::from_seed(4);
        let ks = (0..3).map(|_| rng::complex_gaussian(&mut g, 3, 2)).collect();
        let map = KrausMap::new(ks).unwrap();
        let rho = random_density_matrix(2, 2, 8).unwrap();
        let direct = map.apply(rho.matrix());
        let via = apply_choi(&map.choi(), 2, 3, rho.matrix()).unwrap();
        assert!((direct - via).norm() < 1e-12);
    }

    #[test]
    fn malformed_families() {
        assert_eq!(KrausMap::new(vec![]), Err(Error::EmptyKraus));
        let bad = vec![DMatrix::identity(2, 2), DMatrix::identity(3, 3)];
        assert!(KrausMap::new(bad).is_err());
    }
}
