use nalgebra::DMatrix;

use super::experiment::{projector, uniform_state, SlitConfig};
use super::sorkin::inclusion_exclusion;
use crate::error::Result;
use crate::hypercube::EffectTensor;
use crate::karoubi::{
    classical_extract, decoh_map, hypdecoh_map, quantum_extract_map, quantum_extract_state, sandwich,
};
use crate::kernel::{apply_choi, ClassicalStructure};

/// The experiment run on the quantum system split off by hyper-decoherence:
/// `tr(sigma+^dagger S_U(sigma+))` with `S_U` the extracted projector channel.
pub fn quantum_slit_probability(cfg: &SlitConfig) -> Result<f64> {
    let d = cfg.dim();
    let z = ClassicalStructure::computational(d)?;
    let plus = hypdecoh_map(&z, d)?.apply(&uniform_state(d)?)?;
    let sigma = quantum_extract_state(&plus)?;
    let channel = quantum_extract_map(&sandwich(&projector(cfg)?, &z, &z)?, &z, &z)?;
    let out = apply_choi(&channel, d, d, sigma.matrix())?;
    Ok(sigma.matrix().dotc(&out).re)
}

/// The experiment on the decohered classical system: `v^T M_U v` with `v`
/// the point weights of the decohered uniform state.
pub fn classical_slit_probability(cfg: &SlitConfig) -> Result<f64> {
    let d = cfg.dim();
    let z = ClassicalStructure::computational(d)?;
    let plus = decoh_map(&z, d)?.apply(&uniform_state(d)?)?;
    let mut weights = DMatrix::zeros(d, 1);
    for x in 0..d {
        weights[(x, 0)] = EffectTensor::point(&z, x)?.evaluate(&plus, 1e-12)?;
    }
    let m = classical_extract(&projector(cfg)?, &z, &z)?;
    Ok(weights.dot(&(m.matrix() * &weights)))
}

pub fn quantum_sorkin(cfg: &SlitConfig) -> Result<f64> {
    inclusion_exclusion(cfg, quantum_slit_probability)
}

pub fn classical_sorkin(cfg: &SlitConfig) -> Result<f64> {
    inclusion_exclusion(cfg, classical_slit_probability)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_probabilities_are_quadratic() {
        for k in 1..=3 {
            let p = quantum_slit_probability(&SlitConfig::first(3, k).unwrap()).unwrap();
            assert!((p - (k * k) as f64 / 81.0).abs() < 1e-14);
        }
    }

    #[test]
    fn classical_probabilities_are_linear() {
        for k in 1..=3 {
            let p = classical_slit_probability(&SlitConfig::first(3, k).unwrap()).unwrap();
            assert!((p - k as f64 / 81.0).abs() < 1e-14);
        }
    }

    #[test]
    fn hierarchy_across_theories() {
        assert!(quantum_sorkin(&SlitConfig::full(3).unwrap()).unwrap().abs() < 1e-12);
        assert!(quantum_sorkin(&SlitConfig::full(2).unwrap()).unwrap().abs() > 1e-3);
        assert!(classical_sorkin(&SlitConfig::full(2).unwrap()).unwrap().abs() < 1e-12);
    }
}
