use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use super::hypdecoh_map;
use crate::error::{Error, Result};
use crate::hypercube::{dh_compose, from_basis, DHMap, DHState};
use crate::kernel::{hermitian_eigen, ClassicalStructure, DensityMatrix, Tensor};

const EIGEN_CUTOFF: f64 = 1e-12;
const EXTRACT_PSD_TOL: f64 = 1e-9;

/// `hypdecoh(z_out) o phi o hypdecoh(z_in)`.
pub fn sandwich(phi: &DHMap, z_in: &ClassicalStructure, z_out: &ClassicalStructure) -> Result<DHMap> {
    let pre = hypdecoh_map(z_in, phi.in_dim())?;
    let post = hypdecoh_map(z_out, phi.out_dim())?;
    dh_compose(&post, &dh_compose(phi, &pre)?)
}

/// `sigma_xy = rho_yxxy` in the computational basis.
pub fn quantum_extract_state(rho: &DHState) -> Result<DensityMatrix> {
    quantum_extract_state_in(rho, &ClassicalStructure::computational(rho.dim())?)
}

/// Reads `sigma~_xy = rho~_yxxy` in `z` coordinates and returns
/// `sum_xy sigma~_xy |psi_x><psi_y|`.
pub fn quantum_extract_state_in(rho: &DHState, z: &ClassicalStructure) -> Result<DensityMatrix> {
    let local = rho.in_basis(z)?;
    let d = rho.dim();
    let s = DMatrix::from_fn(d, d, |x, y| local.get(&[y, x, x, y]));
    let sigma = if z.is_computational() { s } else { z.basis() * s * z.basis().adjoint() };
    DensityMatrix::new(sigma, EXTRACT_PSD_TOL)
}

/// `[a=d][b=c] sigma~_ba` in `z` coordinates, the section of extraction.
pub fn inject(sigma: &DensityMatrix, z: &ClassicalStructure) -> Result<DHState> {
    let d = sigma.dim();
    if z.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: z.dim(),
            found: d,
        });
    }
    let s = z.basis().adjoint() * sigma.matrix() * z.basis();
    let local = Tensor::from_fn(&[d; 4], |i| {
        if i[0] == i[3] && i[1] == i[2] {
            s[(i[1], i[0])]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    DHState::from_tensor_unchecked(from_basis(&local, z)?)
}

/// Certified state whose hyper-decoherence extracts to `sigma`.
///
/// With `sigma = sum_y p_y |g_y><g_y|` and `u_y(x) = sqrt(<psi_x|g_y>)`, the
/// family is `M^y = sqrt(p_y) conj(u_y) u_y^T` in `z` coordinates. Extraction
/// is quartic in the generator, hence the fourth root of `p_y` per factor.
pub fn quantum_lift_state(sigma: &DensityMatrix, z: &ClassicalStructure) -> Result<DHState> {
    lift_with_weight(sigma, z, 0.5)
}

/// Lift with family weight `p_y^power`; `power = 0.5` is the round-tripping choice.
pub fn lift_with_weight(sigma: &DensityMatrix, z: &ClassicalStructure, power: f64) -> Result<DHState> {
    let d = sigma.dim();
    if z.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: z.dim(),
            found: d,
        });
    }
    let local = z.basis().adjoint() * sigma.matrix() * z.basis();
    let (vals, vecs) = hermitian_eigen(&local)?;
    let ms: Vec<DMatrix<Complex64>> = vals
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > EIGEN_CUTOFF)
        .map(|(k, &p)| {
            let u = DMatrix::from_fn(d, 1, |x, _| vecs[(x, k)].sqrt());
            u.conjugate() * u.transpose() * Complex64::new(Float::powf(p, power), 0.0)
        })
        .collect();
    if ms.is_empty() {
        return DHState::zero(d);
    }
    DHState::from_family_in(&ms, z)
}

/// Choi matrix (row-major `vec`, see [`crate::kernel::KrausMap::choi`]) of
/// `sigma -> extract(phi(inject(sigma)))`: entry `((o, i), (p, q))` is
/// `phi~_{p o o p, q i i q}`.
pub fn quantum_extract_map(
    phi: &DHMap,
    z_in: &ClassicalStructure,
    z_out: &ClassicalStructure,
) -> Result<DMatrix<Complex64>> {
    let local = phi.in_bases(z_in, z_out)?;
    let (o, i) = (phi.out_dim(), phi.in_dim());
    Ok(DMatrix::from_fn(o * i, o * i, |r, c| {
        let (ro, ri) = (r / i, r % i);
        let (cp, cq) = (c / i, c % i);
        local.get(&[cp, ro, ro, cp, cq, ri, ri, cq])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{random_dh_state, tree_on_bridge_effect};
    use crate::interference::uniform_state;
    use crate::kernel::{apply_choi, is_psd, random_density_matrix, random_unitary, rng, KrausMap};

    fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn point_and_uniform_extractions() {
        let p = quantum_extract_state(&DHState::point(3, 2).unwrap()).unwrap();
        let mut e = DMatrix::zeros(3, 3);
        e[(2, 2)] = Complex64::new(1.0, 0.0);
        assert_eq!(p.matrix(), &e);
        for d in 1..=4 {
            let s = quantum_extract_state(&uniform_state(d).unwrap()).unwrap();
            let v = 1.0 / (d * d) as f64;
            assert!(s.matrix().iter().all(|z| (z - Complex64::new(v, 0.0)).norm() < 1e-15));
            assert!((s.trace() - 1.0 / d as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn extraction_trace_is_tree_on_bridge() {
        for seed in 0..30u64 {
            let d = 2 + seed as usize % 3;
            let z = ClassicalStructure::fourier(d).unwrap();
            let rho = random_dh_state(d, 3, seed).unwrap();
            let s = quantum_extract_state_in(&rho, &z).unwrap();
            assert!((s.trace() - tree_on_bridge_effect(&rho, &z).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn lift_round_trips() {
        let comp = ClassicalStructure::computational(3).unwrap();
        let point = quantum_lift_state(&quantum_extract_state(&DHState::point(3, 1).unwrap()).unwrap(), &comp).unwrap();
        assert!(point.tensor().max_abs_diff(DHState::point(3, 1).unwrap().tensor()) < 1e-15);
        for seed in 0..40u64 {
            let d = 2 + seed as usize % 3;
            let z = if seed % 2 == 0 { comp_of(d) } else { ClassicalStructure::fourier(d).unwrap() };
            let sigma = random_density_matrix(d, 1 + seed as usize % d, seed).unwrap();
            let lifted = quantum_lift_state(&sigma, &z).unwrap();
            let fixed = hypdecoh_map(&z, d).unwrap().apply(&lifted).unwrap();
            let back = quantum_extract_state_in(&fixed, &z).unwrap();
            assert!(max_diff(back.matrix(), sigma.matrix()) < 1e-10);
        }
    }

    #[test]
    fn maximally_mixed_round_trips() {
        for d in 1..=4 {
            for z in [comp_of(d), ClassicalStructure::fourier(d).unwrap()] {
                let id = DMatrix::identity(d, d) / Complex64::new(d as f64, 0.0);
                let sigma = DensityMatrix::new(id, 1e-12).unwrap();
                let fixed = hypdecoh_map(&z, d).unwrap().apply(&quantum_lift_state(&sigma, &z).unwrap()).unwrap();
                let back = quantum_extract_state_in(&fixed, &z).unwrap();
                assert!(max_diff(back.matrix(), sigma.matrix()) < 1e-10);
            }
        }
    }

    fn comp_of(d: usize) -> ClassicalStructure {
        ClassicalStructure::computational(d).unwrap()
    }

    #[test]
    fn square_root_weight_does_not_round_trip() {
        let sigma = random_density_matrix(3, 3, 4).unwrap();
        let z = comp_of(3);
        let lifted = lift_with_weight(&sigma, &z, 1.0).unwrap();
        let back = quantum_extract_state(&lifted).unwrap();
        assert!(max_diff(back.matrix(), sigma.matrix()) > 1e-3);
    }

    #[test]
    fn inject_is_a_section_and_hypdecoh_factors_through_it() {
        let z = ClassicalStructure::fourier(3).unwrap();
        let rho = random_dh_state(3, 2, 6).unwrap();
        let sigma = quantum_extract_state_in(&rho, &z).unwrap();
        let again = inject(&sigma, &z).unwrap();
        let hyp = hypdecoh_map(&z, 3).unwrap().apply(&rho).unwrap();
        assert!(again.tensor().max_abs_diff(hyp.tensor()) < 1e-12);
        assert!(again.symmetry().passes(1e-12));
    }

    #[test]
    fn hypdecoh_extracts_to_the_identity_channel() {
        let z = comp_of(2);
        let j = quantum_extract_map(&hypdecoh_map(&z, 2).unwrap(), &z, &z).unwrap();
        let id = KrausMap::new(alloc::vec![DMatrix::identity(2, 2)]).unwrap().choi();
        assert!(max_diff(&j, &id) < 1e-15);
    }

    #[test]
    fn doubled_maps_extract_to_entrywise_squares() {
        let mut g = rng::from_seed(9);
        let u = random_unitary(&mut g, 3);
        let z = comp_of(3);
        let j = quantum_extract_map(&DHMap::doubled(&u).unwrap(), &z, &z).unwrap();
        let sq = u.map(|x| x * x);
        assert!(max_diff(&j, &KrausMap::new(alloc::vec![sq]).unwrap().choi()) < 1e-12);
        // the doubled entrywise square root lifts u itself
        let root = DHMap::doubled(&u.map(|x| x.sqrt())).unwrap();
        let j = quantum_extract_map(&sandwich(&root, &z, &z).unwrap(), &z, &z).unwrap();
        let sigma = random_density_matrix(3, 2, 1).unwrap();
        let out = apply_choi(&j, 3, 3, sigma.matrix()).unwrap();
        assert!(max_diff(&out, &(&u * sigma.matrix() * u.adjoint())) < 1e-12);
    }

    /// Partial trace of the Choi matrix over the output, compared with the identity.
    fn trace_defect(j: &DMatrix<Complex64>, d: usize) -> f64 {
        let partial = DMatrix::from_fn(d, d, |i, q| (0..d).map(|o| j[(o * d + i, o * d + q)]).sum::<Complex64>());
        max_diff(&partial, &DMatrix::identity(d, d))
    }

    #[test]
    fn hypdecoh_discard_is_preserved_iff_channel_is_trace_preserving() {
        let d = 3;
        let z = ClassicalStructure::fourier(d).unwrap();
        let discard = crate::hypercube::EffectTensor::tree_on_bridge(&z).unwrap();
        let hyp = hypdecoh_map(&z, d).unwrap();
        let mut g = rng::from_seed(21);
        let u = random_unitary(&mut g, d);
        let root = u.map(|x| x.sqrt());
        // sqrt(u) built in z coordinates so that the extracted channel is unitary
        let v = z.basis() * root * z.basis().adjoint();
        let tp = sandwich(&DHMap::doubled(&v).unwrap(), &z, &z).unwrap();
        let f = rng::complex_gaussian(&mut g, 2 * d * 2 * d, 1);
        let f = Tensor::new(alloc::vec![2, d, 2, d], f.iter().copied().collect()).unwrap();
        let not_tp = sandwich(&DHMap::generated(f, 2, 2, comp_of(2)).unwrap(), &z, &z).unwrap();
        for (phi, expect_tp) in [(&tp, true), (&not_tp, false)] {
            let defect = trace_defect(&quantum_extract_map(phi, &z, &z).unwrap(), d);
            assert_eq!(defect <= 1e-9, expect_tp);
            let mut worst = 0.0f64;
            for seed in 0..20 {
                let rho = hyp.apply(&random_dh_state(d, 2, seed).unwrap()).unwrap();
                let before = discard.pair(&rho).unwrap().re;
                let after = discard.pair(&phi.apply(&rho).unwrap()).unwrap().re;
                worst = worst.max((after - before).abs());
            }
            assert_eq!(worst <= 1e-9, expect_tp, "worst {worst}");
        }
    }

    #[test]
    fn sandwiched_extraction_is_positive_and_functorial() {
        let z = ClassicalStructure::fourier(2).unwrap();
        let mut g = rng::from_seed(3);
        let make = |g: &mut _| {
            let f = rng::complex_gaussian(g, 2 * 2 * 2 * 2, 1);
            let f = Tensor::new(alloc::vec![2, 2, 2, 2], f.iter().copied().collect()).unwrap();
            DHMap::generated(f, 2, 2, comp_of(2)).unwrap()
        };
        let a = sandwich(&make(&mut g), &z, &z).unwrap();
        let b = sandwich(&make(&mut g), &z, &z).unwrap();
        let ja = quantum_extract_map(&a, &z, &z).unwrap();
        let jb = quantum_extract_map(&b, &z, &z).unwrap();
        assert!(is_psd(&ja, 1e-9).unwrap());
        let jab = quantum_extract_map(&dh_compose(&b, &a).unwrap(), &z, &z).unwrap();
        let sigma = random_density_matrix(2, 2, 0).unwrap();
        let seq = apply_choi(&jb, 2, 2, &apply_choi(&ja, 2, 2, sigma.matrix()).unwrap()).unwrap();
        let once = apply_choi(&jab, 2, 2, sigma.matrix()).unwrap();
        assert!(max_diff(&seq, &once) < 1e-9 * seq.norm().max(1.0));
    }
}
