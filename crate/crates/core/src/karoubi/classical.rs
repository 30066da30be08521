use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hypercube::DHMap;
use crate::kernel::{c64, ClassicalStructure, Tensor};
use crate::DEFAULT_TOL;

/// Matrix of non-negative reals, `mat[(y, x)]` the weight from input `x` to output `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticExtract {
    mat: DMatrix<f64>,
}

impl StochasticExtract {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() == 0 || mat.ncols() == 0 {
            return Err(Error::ZeroDimension);
        }
        if mat.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(v) = mat.iter().copied().find(|&v| v < -DEFAULT_TOL) {
            return Err(Error::Negative(v));
        }
        Ok(Self { mat })
    }

    pub fn rows(&self) -> usize {
        self.mat.nrows()
    }

    pub fn cols(&self) -> usize {
        self.mat.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.mat
    }
}

/// `M_yx`: weight of the point `y` of `z_out` in the image of the point `x` of `z_in`.
pub fn classical_extract(
    phi: &DHMap,
    z_in: &ClassicalStructure,
    z_out: &ClassicalStructure,
) -> Result<StochasticExtract> {
    let local = phi.in_bases(z_in, z_out)?;
    let mut worst_imag = 0.0f64;
    let mat = DMatrix::from_fn(z_out.dim(), z_in.dim(), |y, x| {
        let v = local.get(&[y, y, y, y, x, x, x, x]);
        worst_imag = worst_imag.max(v.im.abs());
        v.re
    });
    if worst_imag > DEFAULT_TOL {
        return Err(Error::ImaginaryResidue(worst_imag));
    }
    StochasticExtract::new(mat)
}

/// `sum_{x,y} M_yx |y><y| (x) <x|` between the points of `z_in` and `z_out`.
pub fn classical_embed(
    m: &StochasticExtract,
    z_in: &ClassicalStructure,
    z_out: &ClassicalStructure,
) -> Result<DHMap> {
    if m.rows() != z_out.dim() || m.cols() != z_in.dim() {
        return Err(Error::DimensionMismatch {
            expected: z_out.dim(),
            found: m.rows(),
        });
    }
    let (o, i) = (z_out.dim(), z_in.dim());
    let local = Tensor::from_fn(&[o, o, o, o, i, i, i, i], |k| {
        let out_point = k[1..4].iter().all(|&v| v == k[0]);
        let in_point = k[5..8].iter().all(|&v| v == k[4]);
        if out_point && in_point {
            c64(m.mat[(k[0], k[4])])
        } else {
            c64(0.0)
        }
    });
    DHMap::from_local(&local, z_in, z_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{dh_compose, DHState, EffectTensor};
    use crate::karoubi::decoh_map;
    use crate::kernel::{random_unitary, rng};

    fn random_nonneg(seed: u64, rows: usize, cols: usize) -> StochasticExtract {
        let mut g = rng::from_seed(seed);
        StochasticExtract::new(DMatrix::from_fn(rows, cols, |_, _| rng::uniform(&mut g))).unwrap()
    }

    #[test]
    fn identity_extracts_to_identity() {
        let z = ClassicalStructure::fourier(3).unwrap();
        let m = classical_extract(&DHMap::identity(3).unwrap(), &z, &z).unwrap();
        assert!((m.matrix() - DMatrix::identity(3, 3)).abs().max() < 1e-12);
    }

    #[test]
    fn doubled_unitary_gives_fourth_powers() {
        let mut g = rng::from_seed(2);
        let u = random_unitary(&mut g, 3);
        let z = ClassicalStructure::computational(3).unwrap();
        let m = classical_extract(&DHMap::doubled(&u).unwrap(), &z, &z).unwrap();
        for y in 0..3 {
            for x in 0..3 {
                assert!((m.matrix()[(y, x)] - u[(y, x)].norm().powi(4)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn extraction_reads_point_to_point_pairings() {
        let z = ClassicalStructure::fourier(2).unwrap();
        let mut g = rng::from_seed(5);
        let phi = DHMap::doubled(&random_unitary(&mut g, 2)).unwrap();
        let m = classical_extract(&phi, &z, &z).unwrap();
        for x in 0..2 {
            let img = phi.apply(&DHState::point_in(&z, x).unwrap()).unwrap();
            for y in 0..2 {
                let v = EffectTensor::point(&z, y).unwrap().evaluate(&img, 1e-12).unwrap();
                assert!((v - m.matrix()[(y, x)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn embed_round_trips_and_is_functorial() {
        for seed in 0..10u64 {
            let d = 2 + (seed as usize % 3);
            let zs = [ClassicalStructure::computational(d).unwrap(), ClassicalStructure::fourier(d).unwrap()];
            let (zi, zo) = (&zs[(seed % 2) as usize], &zs[((seed / 2) % 2) as usize]);
            let m1 = random_nonneg(seed, d, d);
            let m2 = random_nonneg(seed + 100, d, d);
            let e1 = classical_embed(&m1, zi, zo).unwrap();
            let back = classical_extract(&e1, zi, zo).unwrap();
            assert!((back.matrix() - m1.matrix()).abs().max() < 1e-12);
            let e2 = classical_embed(&m2, zo, zi).unwrap();
            let both = classical_extract(&dh_compose(&e2, &e1).unwrap(), zi, zi).unwrap();
            assert!((both.matrix() - m2.matrix() * m1.matrix()).abs().max() < 1e-10);
        }
    }

    #[test]
    fn embedding_identity_is_decoherence() {
        let z = ClassicalStructure::fourier(3).unwrap();
        let id = StochasticExtract::new(DMatrix::identity(3, 3)).unwrap();
        let e = classical_embed(&id, &z, &z).unwrap();
        assert!(e.tensor().max_abs_diff(decoh_map(&z, 3).unwrap().tensor()) < 1e-12);
    }

    #[test]
    fn negative_weights_rejected() {
        let m = DMatrix::from_row_slice(1, 2, &[0.5, -0.1]);
        assert!(matches!(StochasticExtract::new(m), Err(Error::Negative(_))));
    }
}
