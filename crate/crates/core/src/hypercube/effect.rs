use num_complex::Complex64;

use super::state::DHState;
use crate::error::{Error, Result};
use crate::kernel::{c64, ClassicalStructure, Tensor};
use crate::DEFAULT_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffectKind {
    /// Doubled trace, `delta_ab delta_cd`.
    Forest,
    /// Discard through a classical structure, `sum_x rho~_xxxx`.
    TreeOnBridge,
    /// Forest minus tree-on-bridge for the same structure.
    Extension,
    /// Entrywise conjugate of a state.
    DaggerOfState,
    /// Anything else: pull-backs along maps, signed sums.
    Composite,
}

/// A rank-4 covector, evaluated on states by full contraction without conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectTensor {
    dim: usize,
    tensor: Tensor,
    kind: EffectKind,
}

impl EffectTensor {
    pub fn new(tensor: Tensor, kind: EffectKind) -> Result<Self> {
        let d = tensor.shape().first().copied().unwrap_or(0);
        if d == 0 || tensor.shape() != [d; 4] {
            return Err(Error::ShapeMismatch("an effect is a (d, d, d, d) tensor"));
        }
        Ok(Self {
            dim: d,
            tensor,
            kind,
        })
    }

    pub fn forest(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let t = Tensor::from_fn(&[d; 4], |i| c64(f64::from(u8::from(i[0] == i[1] && i[2] == i[3]))));
        Self::new(t, EffectKind::Forest)
    }

    /// `E_abcd = psi_x(a) conj(psi_x(b)) conj(psi_x(c)) psi_x(d)`, reading `rho~_xxxx`.
    pub fn point(z: &ClassicalStructure, x: usize) -> Result<Self> {
        if x >= z.dim() {
            return Err(Error::DimensionMismatch {
                expected: z.dim(),
                found: x,
            });
        }
        let t = Tensor::from_fn(&[z.dim(); 4], |i| {
            z.entry(i[0], x) * z.entry(i[1], x).conj() * z.entry(i[2], x).conj() * z.entry(i[3], x)
        });
        Self::new(t, EffectKind::Composite)
    }

    pub fn tree_on_bridge(z: &ClassicalStructure) -> Result<Self> {
        let d = z.dim();
        let mut t = Tensor::zeros(&[d; 4]);
        for x in 0..d {
            t.add_assign_scaled(Self::point(z, x)?.tensor(), c64(1.0));
        }
        Self::new(t, EffectKind::TreeOnBridge)
    }

    pub fn extension(z: &ClassicalStructure) -> Result<Self> {
        let forest = Self::forest(z.dim())?;
        let tree = Self::tree_on_bridge(z)?;
        Self::new(forest.tensor.sub(&tree.tensor)?, EffectKind::Extension)
    }

    pub fn of_state(rho: &DHState) -> Self {
        Self {
            dim: rho.dim(),
            tensor: rho.tensor().conj(),
            kind: EffectKind::DaggerOfState,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn kind(&self) -> EffectKind {
        self.kind
    }

    /// `sum_abcd E_abcd rho_abcd`.
    pub fn pair(&self, rho: &DHState) -> Result<Complex64> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(self
            .tensor
            .data()
            .iter()
            .zip(rho.tensor().data())
            .map(|(e, r)| e * r)
            .sum())
    }

    /// Real value of the pairing; fails if the imaginary part exceeds `tol`.
    pub fn evaluate(&self, rho: &DHState, tol: f64) -> Result<f64> {
        let z = self.pair(rho)?;
        if z.im.abs() > tol {
            return Err(Error::ImaginaryResidue(z.im.abs()));
        }
        Ok(z.re)
    }
}

pub fn pair(effect: &EffectTensor, rho: &DHState) -> Result<Complex64> {
    effect.pair(rho)
}

pub fn effect_of_state(rho: &DHState) -> EffectTensor {
    EffectTensor::of_state(rho)
}

/// `sum_{x,y} rho_xxyy`.
pub fn forest_effect(rho: &DHState) -> Result<f64> {
    EffectTensor::forest(rho.dim())?.evaluate(rho, DEFAULT_TOL)
}

/// `sum_x rho~_xxxx` with `rho~` the components in `z` coordinates.
pub fn tree_on_bridge_effect(rho: &DHState, z: &ClassicalStructure) -> Result<f64> {
    check_dim(rho, z)?;
    EffectTensor::tree_on_bridge(z)?.evaluate(rho, DEFAULT_TOL)
}

/// Forest minus tree-on-bridge; negative values beyond tolerance are an error.
pub fn extension_effect(rho: &DHState, z: &ClassicalStructure) -> Result<f64> {
    check_dim(rho, z)?;
    let v = EffectTensor::extension(z)?.evaluate(rho, DEFAULT_TOL)?;
    if v < -DEFAULT_TOL {
        return Err(Error::Negative(v));
    }
    Ok(v)
}

fn check_dim(rho: &DHState, z: &ClassicalStructure) -> Result<()> {
    if rho.dim() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: z.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::random_dh_state;
    use crate::interference::uniform_state;
    use nalgebra::DMatrix;

    fn brute_forest(rho: &DHState) -> Complex64 {
        let d = rho.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for x in 0..d {
            for y in 0..d {
                acc += rho.component(x, x, y, y);
            }
        }
        acc
    }

    fn brute_tree(rho: &DHState) -> Complex64 {
        (0..rho.dim()).map(|x| rho.component(x, x, x, x)).sum()
    }

    #[test]
    fn effects_agree_with_component_sums() {
        let comp = |d| ClassicalStructure::computational(d).unwrap();
        for seed in 0..40u64 {
            let d = 1 + (seed as usize % 4);
            let rho = random_dh_state(d, 2, seed).unwrap();
            let f = forest_effect(&rho).unwrap();
            let t = tree_on_bridge_effect(&rho, &comp(d)).unwrap();
            assert!((c64(f) - brute_forest(&rho)).norm() < 1e-12);
            assert!((c64(t) - brute_tree(&rho)).norm() < 1e-12);
        }
    }

    #[test]
    fn uniform_state_values() {
        for d in 1..=5 {
            let rho = uniform_state(d).unwrap();
            let comp = ClassicalStructure::computational(d).unwrap();
            let four = ClassicalStructure::fourier(d).unwrap();
            let n = d as f64;
            assert!((forest_effect(&rho).unwrap() - 1.0).abs() < 1e-12);
            assert!((tree_on_bridge_effect(&rho, &comp).unwrap() - 1.0 / n).abs() < 1e-12);
            assert!((tree_on_bridge_effect(&rho, &four).unwrap() - 1.0).abs() < 1e-12);
            assert!((extension_effect(&rho, &comp).unwrap() - (1.0 - 1.0 / n)).abs() < 1e-12);
            let self_pair = EffectTensor::of_state(&rho).evaluate(&rho, 1e-12).unwrap();
            assert!((self_pair - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_member_forest_is_squared_trace() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c64(2.0), Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5), c64(1.0)],
        );
        let rho = DHState::from_psd_family(&[m]).unwrap();
        assert!((forest_effect(&rho).unwrap() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn point_state_effects() {
        let comp = ClassicalStructure::computational(3).unwrap();
        let p = DHState::point(3, 2).unwrap();
        assert_eq!(tree_on_bridge_effect(&p, &comp).unwrap(), 1.0);
        assert_eq!(extension_effect(&p, &comp).unwrap(), 0.0);
    }

    #[test]
    fn zero_state_and_definitional_agreement() {
        let z = DHState::zero(3).unwrap();
        assert_eq!(forest_effect(&z).unwrap(), 0.0);
        assert_eq!(EffectTensor::of_state(&uniform_state(3).unwrap()).pair(&z).unwrap(), c64(0.0));
        let rho = random_dh_state(3, 2, 9).unwrap();
        let forest = EffectTensor::forest(3).unwrap();
        assert_eq!(forest.evaluate(&rho, 1e-10).unwrap(), forest_effect(&rho).unwrap());
    }

    #[test]
    fn dimension_checks() {
        let rho = random_dh_state(2, 1, 0).unwrap();
        let z3 = ClassicalStructure::computational(3).unwrap();
        assert!(tree_on_bridge_effect(&rho, &z3).is_err());
        assert!(EffectTensor::forest(3).unwrap().pair(&rho).is_err());
    }

    #[test]
    fn extension_rejects_broken_states() {
        let mut t = Tensor::zeros(&[2; 4]);
        t.set(&[0, 0, 0, 0], c64(1.0));
        t.set(&[0, 0, 1, 1], c64(-1.0));
        t.set(&[1, 1, 0, 0], c64(-1.0));
        let broken = DHState::from_tensor_unchecked(t).unwrap();
        let comp = ClassicalStructure::computational(2).unwrap();
        assert!(matches!(extension_effect(&broken, &comp), Err(Error::Negative(_))));
    }
}
