use crate::error::{Error, Result};
use crate::hypercube::{extension_effect, forest_effect, random_dh_state, tree_on_bridge_effect};
use crate::interference::uniform_state;
use crate::kernel::{rng::derive_seed, ClassicalStructure};

/// Minimum distance from one that a witness must show.
pub const WITNESS_GAP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct CausalityReport {
    pub dim: usize,
    pub trials: usize,
    /// Largest `|forest - 1|` over the sampled normalised states.
    pub max_forest_error: f64,
    /// Tree-on-bridge value on the uniform state.
    pub tree_witness: f64,
    /// Extension value on the uniform state.
    pub extension_witness: f64,
}

impl CausalityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_forest_error <= tol
            && (self.tree_witness - 1.0).abs() >= WITNESS_GAP
            && (self.extension_witness - 1.0).abs() >= WITNESS_GAP
    }
}

/// Checks the forest effect on random normalised states and exhibits the
/// uniform state as a normalised witness on which the other two discards
/// are not one.
pub fn causality_witness(d: usize, trials: usize, seed: u64) -> Result<CausalityReport> {
    if d < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: d });
    }
    let mut worst = 0.0f64;
    for t in 0..trials {
        let rho = random_dh_state(d, 1 + t % 3, derive_seed(seed, t as u64))?;
        worst = worst.max((forest_effect(&rho)? - 1.0).abs());
    }
    let z = ClassicalStructure::computational(d)?;
    let plus = uniform_state(d)?;
    Ok(CausalityReport {
        dim: d,
        trials,
        max_forest_error: worst,
        tree_witness: tree_on_bridge_effect(&plus, &z)?,
        extension_witness: extension_effect(&plus, &z)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dimensional_witnesses() {
        let r = causality_witness(3, 50, 1).unwrap();
        assert!((r.tree_witness - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.extension_witness - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.passes(1e-10));
    }

    #[test]
    fn qubit_witnesses_are_one_half() {
        let r = causality_witness(2, 10, 0).unwrap();
        assert!((r.tree_witness - 0.5).abs() < 1e-12);
        assert!((r.extension_witness - 0.5).abs() < 1e-12);
        assert!(causality_witness(1, 1, 0).is_err());
    }
}
