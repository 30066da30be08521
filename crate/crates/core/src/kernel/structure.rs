use alloc::format;
use alloc::string::String;

use core::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// An orthonormal basis of `C^d`, standing in for the special commutative
/// dagger-Frobenius algebra it determines. Column `x` is the basis vector `psi_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalStructure {
    basis: DMatrix<Complex64>,
    label: String,
}

impl ClassicalStructure {
    pub fn new(basis: DMatrix<Complex64>, label: impl Into<String>) -> Result<Self> {
        Self::with_tol(basis, label, DEFAULT_TOL)
    }

    pub fn with_tol(basis: DMatrix<Complex64>, label: impl Into<String>, tol: f64) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NotSquare {
                rows: basis.nrows(),
                cols: basis.ncols(),
            });
        }
        if basis.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let dev = orthonormality_defect(&basis);
        if dev > tol {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(Self {
            basis,
            label: label.into(),
        })
    }

    /// The computational basis `|0>, ..., |d-1>`.
    pub fn computational(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            basis: DMatrix::identity(d, d),
            label: String::from("computational"),
        })
    }

    /// Fourier basis of `Z_d`: column `k` (1-based) has entry
    /// `exp(2 pi i j k / d) / sqrt(d)` in row `j` (1-based), so the last
    /// column is the uniform vector.
    pub fn fourier(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let n = d as f64;
        let basis = DMatrix::from_fn(d, d, |row, col| {
            let j = (row + 1) as f64;
            let k = (col + 1) as f64;
            Complex64::from_polar(1.0 / Float::sqrt(n), 2.0 * PI * j * k / n)
        });
        Ok(Self {
            basis,
            label: format!("fourier{d}"),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_computational(&self) -> bool {
        self.basis == DMatrix::identity(self.dim(), self.dim())
    }

    /// Entry `<row | psi_x>`.
    pub fn entry(&self, row: usize, x: usize) -> Complex64 {
        self.basis[(row, x)]
    }
}

fn orthonormality_defect(b: &DMatrix<Complex64>) -> f64 {
    let gram = b.adjoint() * b;
    let id = DMatrix::<Complex64>::identity(b.nrows(), b.ncols());
    (gram - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
