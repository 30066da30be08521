//! Property suites behind the `verify` command. Each suite samples its inputs
//! from a master seed and reports one line per property.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::hypercube::{dh_compose, random_dh_state, DHMap, DHState, EffectTensor};
use crate::interference::uniform_state;
use crate::karoubi::{
    causality_witness, classical_embed, classical_extract, decoh_map, hypdecoh_map,
    quantum_extract_map, quantum_extract_state_in, quantum_lift_state, sandwich,
    StochasticExtract, WITNESS_GAP,
};
use crate::kernel::rng::{self, derive_seed};
use crate::kernel::{
    apply_choi, hermitian_eigen, random_density_matrix, random_unitary, ClassicalStructure,
    Tensor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Causality,
    Classical,
    Quantum,
    Idempotence,
    Symmetry,
    Extension,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Causality,
        Suite::Classical,
        Suite::Quantum,
        Suite::Idempotence,
        Suite::Symmetry,
        Suite::Extension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Causality => "causality",
            Suite::Classical => "classical",
            Suite::Quantum => "quantum",
            Suite::Idempotence => "idempotence",
            Suite::Symmetry => "symmetry",
            Suite::Extension => "extension",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub pass: bool,
    /// Measured quantity, for checks that report a value rather than an error.
    pub value: Option<f64>,
}

impl Check {
    fn within(name: &str, max_error: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            max_error,
            pass: max_error <= tol,
            value: None,
        }
    }

    fn with_value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub dim: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Tolerance for checks whose natural scale is the default one.
    pub tol: f64,
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Causality => causality(cfg)?,
        Suite::Classical => classical(cfg)?,
        Suite::Quantum => quantum(cfg)?,
        Suite::Idempotence => idempotence(cfg)?,
        Suite::Symmetry => symmetry(cfg)?,
        Suite::Extension => extension(cfg)?,
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                for mut c in run_suite(s, cfg)?.checks {
                    c.name = alloc::format!("{}.{}", s.name(), c.name);
                    all.push(c);
                }
            }
            all
        }
    };
    Ok(VerifyReport {
        suite,
        dim: cfg.dim,
        checks,
    })
}

fn structure(d: usize, i: usize) -> Result<ClassicalStructure> {
    if i.is_multiple_of(2) {
        ClassicalStructure::computational(d)
    } else {
        ClassicalStructure::fourier(d)
    }
}

fn sample_state(cfg: &VerifyConfig, stream: u64, t: usize) -> Result<DHState> {
    random_dh_state(cfg.dim, 1 + t % 3, derive_seed(cfg.seed ^ stream, t as u64))
}

fn max_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn causality(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let r = causality_witness(cfg.dim, cfg.trials, cfg.seed)?;
    let gap = |v: f64| (WITNESS_GAP - (v - 1.0).abs()).max(0.0);
    Ok(alloc::vec![
        Check::within("forest_normalisation", r.max_forest_error, cfg.tol),
        Check::within("tree_on_bridge_witness", gap(r.tree_witness), 0.0).with_value(r.tree_witness),
        Check::within("extension_witness", gap(r.extension_witness), 0.0).with_value(r.extension_witness),
    ])
}

fn random_nonneg(g: &mut rng::DhRng, d: usize) -> Result<StochasticExtract> {
    StochasticExtract::new(DMatrix::from_fn(d, d, |_, _| rng::uniform(g)))
}

fn classical(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let d = cfg.dim;
    let mut g = rng::from_seed(derive_seed(cfg.seed, 0xC1A5));
    let mut round_trip = 0.0f64;
    let mut functorial = 0.0f64;
    for t in 0..cfg.trials {
        let (zi, zo) = (structure(d, t)?, structure(d, t / 2)?);
        let m1 = random_nonneg(&mut g, d)?;
        let e1 = classical_embed(&m1, &zi, &zo)?;
        let back = classical_extract(&e1, &zi, &zo)?;
        round_trip = round_trip.max((back.matrix() - m1.matrix()).abs().max());
        if t < 8 {
            let m2 = random_nonneg(&mut g, d)?;
            let e2 = classical_embed(&m2, &zo, &zi)?;
            let both = classical_extract(&dh_compose(&e2, &e1)?, &zi, &zi)?;
            functorial = functorial.max((both.matrix() - m2.matrix() * m1.matrix()).abs().max());
        }
    }
    let z = structure(d, 1)?;
    let id = classical_extract(&DHMap::identity(d)?, &z, &z)?;
    let id_err = (id.matrix() - DMatrix::identity(d, d)).abs().max();
    Ok(alloc::vec![
        Check::within("embed_extract_round_trip", round_trip, 1e-12),
        Check::within("extract_of_composite", functorial, cfg.tol),
        Check::within("identity_extracts_to_identity", id_err, 1e-12),
    ])
}

fn random_generator(g: &mut rng::DhRng, d: usize) -> Result<DHMap> {
    let raw = rng::complex_gaussian(g, 2 * d * 2 * d, 1);
    let f = Tensor::new(alloc::vec![2, d, 2, d], raw.iter().copied().collect())?;
    let norm = f.max_abs();
    DHMap::generated(f.scale(Complex64::new(1.0 / norm, 0.0)), 2, 2, ClassicalStructure::computational(2)?)
}

fn quantum(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let d = cfg.dim;
    let mut round_trip = 0.0f64;
    for t in 0..cfg.trials {
        let z = structure(d, t)?;
        let sigma = random_density_matrix(d, 1 + t % d, derive_seed(cfg.seed, t as u64))?;
        let fixed = hypdecoh_map(&z, d)?.apply(&quantum_lift_state(&sigma, &z)?)?;
        let back = quantum_extract_state_in(&fixed, &z)?;
        round_trip = round_trip.max(max_entry(&(back.matrix() - sigma.matrix())));
    }

    let mut negativity = 0.0f64;
    let mut trace_err = 0.0f64;
    for t in 0..cfg.trials {
        let z = structure(d, t)?;
        let rho = sample_state(cfg, 0x9A, t)?;
        let local = rho.in_basis(&z)?;
        let s = DMatrix::from_fn(d, d, |x, y| local.get(&[y, x, x, y]));
        let (vals, _) = hermitian_eigen(&s)?;
        negativity = negativity.max(-vals[0]);
        let tree = EffectTensor::tree_on_bridge(&z)?.evaluate(&rho, 1e-9)?;
        trace_err = trace_err.max((s.trace().re - tree).abs());
    }

    let mut g = rng::from_seed(derive_seed(cfg.seed, 0x0F));
    let mut functorial = 0.0f64;
    let mut choi_negativity = 0.0f64;
    for t in 0..cfg.trials.min(3) {
        let z = structure(d, t)?;
        let a = sandwich(&random_generator(&mut g, d)?, &z, &z)?;
        let b = sandwich(&random_generator(&mut g, d)?, &z, &z)?;
        let ja = quantum_extract_map(&a, &z, &z)?;
        let jb = quantum_extract_map(&b, &z, &z)?;
        let jab = quantum_extract_map(&dh_compose(&b, &a)?, &z, &z)?;
        let (vals, _) = hermitian_eigen(&ja)?;
        choi_negativity = choi_negativity.max(-vals[0]);
        let sigma = random_density_matrix(d, d, derive_seed(cfg.seed, 1000 + t as u64))?;
        let seq = apply_choi(&jb, d, d, &apply_choi(&ja, d, d, sigma.matrix())?)?;
        let once = apply_choi(&jab, d, d, sigma.matrix())?;
        functorial = functorial.max(max_entry(&(seq - once)));
    }

    let sigma = random_density_matrix(d, d, cfg.seed)?;
    let z = ClassicalStructure::computational(d)?;
    let alt = crate::karoubi::lift_with_weight(&sigma, &z, 1.0)?;
    let alt_err = max_entry(&(quantum_extract_state_in(&alt, &z)?.into_matrix() - sigma.matrix()));

    Ok(alloc::vec![
        Check::within("lift_extract_round_trip", round_trip, 1e-8),
        Check::within("extracted_states_psd", negativity, 1e-9),
        Check::within("extracted_trace_is_tree_on_bridge", trace_err, 1e-9),
        Check::within("sandwiched_choi_psd", choi_negativity, 1e-9),
        Check::within("sandwiched_extraction_functorial", functorial, 1e-9),
        // informational: the family weight p (instead of sqrt p) misses the round trip
        Check {
            name: "lift_weight_p_instead_of_sqrt_p_deviation".to_string(),
            max_error: alt_err,
            pass: true,
            value: Some(alt_err),
        },
    ])
}

fn idempotence(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let d = cfg.dim;
    let mut checks = Vec::new();
    for i in 0..2 {
        let z = structure(d, i)?;
        let tag = if i == 0 { "computational" } else { "fourier" };
        let dec = decoh_map(&z, d)?;
        let hyp = hypdecoh_map(&z, d)?;
        let dd = dh_compose(&dec, &dec)?.tensor().max_abs_diff(dec.tensor());
        let hh = dh_compose(&hyp, &hyp)?.tensor().max_abs_diff(hyp.tensor());
        let dh = dh_compose(&dec, &hyp)?.tensor().max_abs_diff(dec.tensor());
        let back = hyp.pull_back(&EffectTensor::forest(d)?)?;
        let ft = back.tensor().max_abs_diff(EffectTensor::tree_on_bridge(&z)?.tensor());
        checks.push(Check::within(&alloc::format!("decoh_idempotent_{tag}"), dd, 1e-12));
        checks.push(Check::within(&alloc::format!("hypdecoh_idempotent_{tag}"), hh, 1e-12));
        checks.push(Check::within(&alloc::format!("decoh_factors_through_hypdecoh_{tag}"), dh, 1e-12));
        checks.push(Check::within(&alloc::format!("forest_after_hypdecoh_is_tree_{tag}"), ft, 1e-12));
    }
    Ok(checks)
}

fn symmetry(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let d = cfg.dim;
    let mut g = rng::from_seed(derive_seed(cfg.seed, 0x5E));
    let mut family = 0.0f64;
    let mut mapped = 0.0f64;
    let mut product = 0.0f64;
    for t in 0..cfg.trials {
        let rho = sample_state(cfg, 0x51, t)?;
        family = family.max(rho.symmetry().max_deviation());
        if t % 4 == 0 {
            let u = random_unitary(&mut g, d);
            mapped = mapped.max(DHMap::doubled(&u)?.apply(&rho)?.symmetry().max_deviation());
            let other = random_dh_state(2, 2, derive_seed(cfg.seed, t as u64))?;
            product = product.max(rho.tensor_product(&other).symmetry().max_deviation());
        }
    }
    Ok(alloc::vec![
        Check::within("generated_states", family, 1e-9),
        Check::within("mapped_states", mapped, 1e-9),
        Check::within("tensor_products", product, 1e-9),
    ])
}

fn extension(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let d = cfg.dim;
    let mut lowest = f64::INFINITY;
    for t in 0..cfg.trials {
        let z = structure(d, t)?;
        let rho = sample_state(cfg, 0xE7, t)?;
        lowest = lowest.min(EffectTensor::extension(&z)?.evaluate(&rho, 1e-9)?);
    }
    let z = ClassicalStructure::computational(d)?;
    let plus = EffectTensor::extension(&z)?.evaluate(&uniform_state(d)?, 1e-12)?;
    let expect = 1.0 - 1.0 / d as f64;
    Ok(alloc::vec![
        Check::within("extension_nonnegative", (-lowest).max(0.0), cfg.tol).with_value(lowest),
        Check::within("extension_on_uniform_state", (plus - expect).abs(), 1e-12).with_value(plus),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_small_inputs() {
        let cfg = VerifyConfig {
            dim: 2,
            trials: 20,
            seed: 7,
            tol: 1e-10,
        };
        let report = run_suite(Suite::All, &cfg).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{} failed with {}", c.name, c.max_error);
        }
        assert!(report.checks.iter().any(|c| c.name == "quantum.lift_extract_round_trip"));
    }

    #[test]
    fn qubit_causality_witnesses() {
        let cfg = VerifyConfig {
            dim: 2,
            trials: 10,
            seed: 0,
            tol: 1e-10,
        };
        let r = run_suite(Suite::Causality, &cfg).unwrap();
        assert_eq!(r.checks[1].value, Some(0.5));
        assert!(r.passed());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let cfg = VerifyConfig {
            dim: 3,
            trials: 5,
            seed: 11,
            tol: 1e-10,
        };
        assert_eq!(run_suite(Suite::Quantum, &cfg).unwrap(), run_suite(Suite::Quantum, &cfg).unwrap());
    }
}
