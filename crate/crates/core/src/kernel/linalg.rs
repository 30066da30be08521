use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::rng::{self, DhRng};
use crate::error::{Error, Result};

fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// True iff `m` is Hermitian within `tol` and its smallest eigenvalue is `>= -tol`.
pub fn is_psd(m: &DMatrix<Complex64>, tol: f64) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Ok(true);
    }
    if hermiticity_defect(m) > tol {
        return Ok(false);
    }
    let (values, _) = hermitian_eigen(m)?;
    Ok(values[0] >= -tol)
}

/// Positive semidefinite matrix; the trace is not required to be one.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(mat: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if !is_psd(&mat, tol)? {
            return Err(Error::NotPsd);
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }
}

/// Returns `G G^dagger / tr(G G^dagger)` for a complex Gaussian `G` of shape `d x rank`.
pub fn random_density_matrix(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if rank == 0 || rank > d {
        return Err(Error::RankOutOfRange { rank, dim: d });
    }
    let mut rng = rng::from_seed(seed);
    let g = rng::complex_gaussian(&mut rng, d, rank);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    Ok(DensityMatrix {
        mat: m.unscale(tr),
    })
}

/// Unnormalised PSD matrix `G G^dagger` with `G` complex Gaussian `d x rank`.
pub fn random_psd(rng: &mut DhRng, d: usize, rank: usize) -> DMatrix<Complex64> {
    let g = rng::complex_gaussian(rng, d, rank);
    &g * g.adjoint()
}

/// Haar-distributed unitary via QR of a complex Gaussian with phase correction.
pub fn random_unitary(rng: &mut DhRng, d: usize) -> DMatrix<Complex64> {
    let g = rng::complex_gaussian(rng, d, d);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..d {
        let diag = r[(c, c)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..d {
            q[(row, c)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: [[Complex64; 2]; 2]) -> DMatrix<Complex64> {
        DMatrix::from_fn(2, 2, |i, j| a[i][j])
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&m2([[r(2.0), r(1.0)], [r(1.0), r(2.0)]]), 1e-10).unwrap());
        assert!(!is_psd(&m2([[r(0.0), r(1.0)], [r(0.0), r(0.0)]]), 1e-10).unwrap());
        let i = Complex64::new(0.0, 1.0);
        assert!(is_psd(&m2([[r(1.0), i], [-i, r(1.0)]]), 1e-10).unwrap());
        assert!(!is_psd(&m2([[r(1.0), r(0.0)], [r(0.0), r(-1.0)]]), 1e-10).unwrap());
        let rect = DMatrix::<Complex64>::zeros(2, 3);
        assert!(matches!(is_psd(&rect, 1e-10), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn eigenvalues_of_off_diagonal_imaginary() {
        let i = Complex64::new(0.0, 1.0);
        let (vals, _) = hermitian_eigen(&m2([[r(1.0), i], [-i, r(1.0)]])).unwrap();
        assert!(vals[0].abs() < 1e-12 && (vals[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn random_density_matrices() {
        let one = random_density_matrix(1, 1, 5).unwrap();
        assert!((one.matrix()[(0, 0)] - r(1.0)).norm() < 1e-15);

        let pure = random_density_matrix(3, 1, 11).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-10);
        assert!((pure.trace() - 1.0).abs() < 1e-12);

        let a = random_density_matrix(4, 3, 99).unwrap();
        let b = random_density_matrix(4, 3, 99).unwrap();
        assert_eq!(a, b);
        assert!(is_psd(a.matrix(), 1e-10).unwrap());

        assert!(matches!(
            random_density_matrix(3, 4, 0),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(random_density_matrix(3, 0, 0).is_err());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut g = rng::from_seed(3);
        for d in 1..=5 {
            let u = random_unitary(&mut g, d);
            let defect = (u.adjoint() * &u - DMatrix::identity(d, d)).norm();
            assert!(defect < 1e-12);
        }
    }
}
