use alloc::borrow::Cow;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex tensor with row-major storage.
///
/// A rank-0 tensor (empty shape) holds a single scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<Complex64>,
}

fn volume(shape: &[usize]) -> usize {
    shape.iter().product()
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut out = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * shape[i + 1];
    }
    out
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<Complex64>) -> Result<Self> {
        if shape.contains(&0) {
            return Err(Error::ZeroDimension);
        }
        if data.len() != volume(&shape) {
            return Err(Error::DataLength {
                shape,
                len: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { shape, data })
    }

    pub(crate) fn from_raw(shape: Vec<usize>, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), volume(&shape));
        Self { shape, data }
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self::from_raw(shape.to_vec(), vec![Complex64::new(0.0, 0.0); volume(shape)])
    }

    pub fn scalar(value: Complex64) -> Self {
        Self::from_raw(Vec::new(), vec![value])
    }

    /// Builds a tensor by evaluating `f` at every multi-index in row-major order.
    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(volume(shape));
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..volume(shape) {
            data.push(f(&idx));
            for ax in (0..shape.len()).rev() {
                idx[ax] += 1;
                if idx[ax] < shape[ax] {
                    break;
                }
                idx[ax] = 0;
            }
        }
        Self::from_raw(shape.to_vec(), data)
    }

    /// Rank-2 tensor from a matrix, axes `(row, column)`.
    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(&[m.nrows(), m.ncols()], |i| m[(i[0], i[1])])
    }

    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.rank() != 2 {
            return Err(Error::ShapeMismatch("matrix view needs a rank-2 tensor"));
        }
        let (r, c) = (self.shape[0], self.shape[1]);
        Ok(DMatrix::from_fn(r, c, |i, j| self.data[i * c + j]))
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.shape.len());
        index
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &s)| acc * s + i)
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex64) {
        let o = self.offset(index);
        self.data[o] = value;
    }

    pub fn reshape(&self, shape: &[usize]) -> Result<Self> {
        if volume(shape) != self.len() || shape.contains(&0) {
            return Err(Error::ShapeMismatch("reshape must preserve volume"));
        }
        Ok(Self::from_raw(shape.to_vec(), self.data.clone()))
    }

    pub fn conj(&self) -> Self {
        Self::from_raw(self.shape.clone(), self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_raw(self.shape.clone(), self.data.iter().map(|z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch("elementwise operands differ in shape"));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_raw(self.shape.clone(), data))
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &Self, s: Complex64) {
        debug_assert_eq!(self.shape, other.shape);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    /// Largest entrywise modulus of `self - other`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.shape != other.shape {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product taken slot by slot: both tensors must have the same
    /// rank, and slot `i` of the result carries the composite index
    /// `i1 * n2 + i2` where `n2` is the extent of `other` at that slot.
    pub fn kron_slots(&self, other: &Self) -> Result<Self> {
        let r = self.rank();
        if other.rank() != r {
            return Err(Error::ShapeMismatch("slotwise Kronecker needs equal ranks"));
        }
        let outer = contract(self, other, &[])?;
        let perm: Vec<usize> = (0..r).flat_map(|i| [i, r + i]).collect();
        let interleaved = rearrange(&outer, &perm, false)?;
        let shape: Vec<usize> = self.shape.iter().zip(&other.shape).map(|(a, b)| a * b).collect();
        interleaved.reshape(&shape)
    }
}

fn permuted<'a>(t: &'a Tensor, perm: &[usize]) -> Cow<'a, [Complex64]> {
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return Cow::Borrowed(&t.data);
    }
    Cow::Owned(permute_data(t, perm))
}

fn permute_data(t: &Tensor, perm: &[usize]) -> Vec<Complex64> {
    let in_strides = strides(&t.shape);
    let out_shape: Vec<usize> = perm.iter().map(|&p| t.shape[p]).collect();
    let step: Vec<usize> = perm.iter().map(|&p| in_strides[p]).collect();
    let n = t.len();
    let mut out = Vec::with_capacity(n);
    let mut idx = vec![0usize; perm.len()];
    let mut src = 0usize;
    for _ in 0..n {
        out.push(t.data[src]);
        for ax in (0..perm.len()).rev() {
            idx[ax] += 1;
            src += step[ax];
            if idx[ax] < out_shape[ax] {
                break;
            }
            src -= step[ax] * out_shape[ax];
            idx[ax] = 0;
        }
    }
    out
}

/// Sums over each `(axis_of_a, axis_of_b)` pair. Free axes of `a` come first
/// in the result, then the free axes of `b`, each in their original order.
pub fn contract(a: &Tensor, b: &Tensor, pairs: &[(usize, usize)]) -> Result<Tensor> {
    let mut used_a = vec![false; a.rank()];
    let mut used_b = vec![false; b.rank()];
    for &(i, j) in pairs {
        if i >= a.rank() {
            return Err(Error::AxisOutOfRange { axis: i, rank: a.rank() });
        }
        if j >= b.rank() {
            return Err(Error::AxisOutOfRange { axis: j, rank: b.rank() });
        }
        if used_a[i] {
            return Err(Error::RepeatedAxis(i));
        }
        if used_b[j] {
            return Err(Error::RepeatedAxis(j));
        }
        used_a[i] = true;
        used_b[j] = true;
        if a.shape[i] != b.shape[j] {
            return Err(Error::ExtentMismatch {
                left: a.shape[i],
                right: b.shape[j],
            });
        }
    }
    let free_a: Vec<usize> = (0..a.rank()).filter(|&i| !used_a[i]).collect();
    let free_b: Vec<usize> = (0..b.rank()).filter(|&j| !used_b[j]).collect();

    let perm_a: Vec<usize> = free_a.iter().copied().chain(pairs.iter().map(|p| p.0)).collect();
    let perm_b: Vec<usize> = pairs.iter().map(|p| p.1).chain(free_b.iter().copied()).collect();
    let lhs = permuted(a, &perm_a);
    let rhs = permuted(b, &perm_b);

    let m: usize = free_a.iter().map(|&i| a.shape[i]).product();
    let k: usize = pairs.iter().map(|p| a.shape[p.0]).product();
    let n: usize = free_b.iter().map(|&j| b.shape[j]).product();

    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; m * n];
    for i in 0..m {
        let row = &mut out[i * n..(i + 1) * n];
        for l in 0..k {
            let x = lhs[i * k + l];
            if x == zero {
                continue;
            }
            let brow = &rhs[l * n..(l + 1) * n];
            for (o, &y) in row.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    }
    let shape = free_a
        .iter()
        .map(|&i| a.shape[i])
        .chain(free_b.iter().map(|&j| b.shape[j]))
        .collect();
    Ok(Tensor::from_raw(shape, out))
}

/// Permutes axes so that output axis `i` is input axis `perm[i]`, optionally
/// conjugating every entry.
pub fn rearrange(t: &Tensor, perm: &[usize], conjugate: bool) -> Result<Tensor> {
    let mut seen = vec![false; t.rank()];
    let valid = perm.len() == t.rank()
        && perm.iter().all(|&p| p < t.rank() && !core::mem::replace(&mut seen[p], true));
    if !valid {
        return Err(Error::InvalidPermutation {
            perm: perm.to_vec(),
            rank: t.rank(),
        });
    }
    let shape = perm.iter().map(|&p| t.shape[p]).collect();
    let mut data = permuted(t, perm).into_owned();
    if conjugate {
        data.iter_mut().for_each(|z| *z = z.conj());
    }
    Ok(Tensor::from_raw(shape, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(shape: &[usize], vals: &[f64]) -> Tensor {
        Tensor::new(shape.to_vec(), vals.iter().map(|&v| c(v)).collect()).unwrap()
    }

    #[test]
    fn identity_contraction() {
        let id = real(&[2, 2], &[1.0, 0.0, 0.0, 1.0]);
        let v = real(&[2], &[3.0, 4.0]);
        let out = contract(&id, &v, &[(1, 0)]).unwrap();
        assert_eq!(out, v);
    }

    #[test]
    fn dot_product() {
        let v = real(&[2], &[1.0, 2.0]);
        let w = real(&[2], &[3.0, 4.0]);
        let out = contract(&v, &w, &[(0, 0)]).unwrap();
        assert_eq!(out.shape(), &[] as &[usize]);
        assert_eq!(out.data()[0], c(11.0));
    }

    #[test]
    fn contraction_errors() {
        let a = Tensor::zeros(&[2, 3]);
        let b = Tensor::zeros(&[2, 2]);
        assert!(matches!(contract(&a, &b, &[(1, 0)]), Err(Error::ExtentMismatch { .. })));
        assert!(matches!(
            contract(&a, &b, &[(0, 0), (0, 1)]),
            Err(Error::RepeatedAxis(0))
        ));
        assert!(matches!(contract(&a, &b, &[(2, 0)]), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn transpose_and_adjoint() {
        let m = Tensor::new(
            vec![2, 2],
            vec![c(1.0), Complex64::new(0.0, 2.0), c(3.0), Complex64::new(4.0, -1.0)],
        )
        .unwrap();
        let t = rearrange(&m, &[1, 0], false).unwrap();
        let h = rearrange(&m, &[1, 0], true).unwrap();
        let mm = m.to_matrix().unwrap();
        assert_eq!(t.to_matrix().unwrap(), mm.transpose());
        assert_eq!(h.to_matrix().unwrap(), mm.adjoint());
        assert!(rearrange(&m, &[0, 0], false).is_err());
        assert!(rearrange(&m, &[0], false).is_err());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(Tensor::new(vec![2, 2], vec![c(0.0); 3]).is_err());
        assert!(Tensor::new(vec![1], vec![c(f64::NAN)]).is_err());
        assert!(Tensor::new(vec![0], vec![]).is_err());
    }

    #[test]
    fn kron_slots_of_matrices_is_kronecker_product() {
        let a = real(&[2, 2], &[1.0, 2.0, 3.0, 4.0]);
        let b = real(&[2, 2], &[0.0, 5.0, 6.0, 7.0]);
        let k = a.kron_slots(&b).unwrap().to_matrix().unwrap();
        let expect = a.to_matrix().unwrap().kronecker(&b.to_matrix().unwrap());
        assert_eq!(k, expect);
    }
}
