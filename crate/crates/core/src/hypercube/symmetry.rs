use crate::error::{Error, Result};
use crate::kernel::{rearrange, Tensor};

/// Largest deviation from each nontrivial element of the Z2 x Z2 action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    /// `conj(rho_abcd)` against `rho_badc`.
    pub tau01: f64,
    /// `conj(rho_abcd)` against `rho_cdab`.
    pub tau10: f64,
    /// `rho_abcd` against `rho_dcba`.
    pub tau11: f64,
}

impl SymmetryReport {
    pub fn max_deviation(&self) -> f64 {
        self.tau01.max(self.tau10).max(self.tau11)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

pub fn check_symmetry(t: &Tensor) -> Result<SymmetryReport> {
    if t.rank() != 4 {
        return Err(Error::ShapeMismatch("symmetry check needs a rank-4 tensor"));
    }
    let conj = t.conj();
    let dev = |perm: [usize; 4], against: &Tensor| -> Result<f64> {
        Ok(rearrange(t, &perm, false)?.max_abs_diff(against))
    };
    Ok(SymmetryReport {
        tau01: dev([1, 0, 3, 2], &conj)?,
        tau10: dev([2, 3, 0, 1], &conj)?,
        tau11: dev([3, 2, 1, 0], t)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn all_ones_passes() {
        let t = Tensor::from_fn(&[3; 4], |_| Complex64::new(1.0, 0.0));
        assert!(check_symmetry(&t).unwrap().passes(1e-10));
    }

    #[test]
    fn lone_off_orbit_entry_fails_every_relation() {
        let mut t = Tensor::zeros(&[2; 4]);
        t.set(&[0, 0, 0, 1], Complex64::new(1.0, 0.0));
        let rep = check_symmetry(&t).unwrap();
        assert!(!rep.passes(1e-10));
        assert_eq!(rep.tau01, 1.0);
        assert_eq!(rep.tau10, 1.0);
        assert_eq!(rep.tau11, 1.0);
    }

    #[test]
    fn imaginary_constant_breaks_only_conjugating_relations() {
        let t = Tensor::from_fn(&[2; 4], |_| Complex64::new(0.0, 1.0));
        let rep = check_symmetry(&t).unwrap();
        assert_eq!(rep.tau11, 0.0);
        assert!(rep.tau01 > 1.0 && rep.tau10 > 1.0);
    }

    #[test]
    fn rank_checked() {
        assert!(check_symmetry(&Tensor::zeros(&[2, 2])).is_err());
    }
}
