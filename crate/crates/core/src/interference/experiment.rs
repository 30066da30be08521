use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypercube::{ComponentClass, DHMap, DHState, EffectTensor};
use crate::kernel::{c64, Tensor};

/// A nonempty set of slits, labelled `1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlitConfig {
    dim: usize,
    subset: Vec<usize>,
}

impl SlitConfig {
    pub fn new(dim: usize, labels: &[usize]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if labels.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut subset = labels.to_vec();
        subset.sort_unstable();
        for w in subset.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedSlit(w[0]));
            }
        }
        if let Some(&label) = subset.iter().find(|&&l| l == 0 || l > dim) {
            return Err(Error::InvalidSlit { label, dim });
        }
        Ok(Self { dim, subset })
    }

    /// Slits `1..=k`.
    pub fn first(dim: usize, k: usize) -> Result<Self> {
        let labels: Vec<usize> = (1..=k).collect();
        Self::new(dim, &labels)
    }

    pub fn full(dim: usize) -> Result<Self> {
        Self::first(dim, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[usize] {
        &self.subset
    }

    pub fn size(&self) -> usize {
        self.subset.len()
    }

    pub fn contains_index(&self, x: usize) -> bool {
        self.subset.binary_search(&(x + 1)).is_ok()
    }

    /// All nonempty subsets of this one, each with its size.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = SlitConfig> + '_ {
        let k = self.size();
        (1u64..(1u64 << k)).map(move |mask| {
            let labels: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.subset[i]).collect();
            SlitConfig {
                dim: self.dim,
                subset: labels,
            }
        })
    }
}

/// Doubled orthogonal projector onto the slits of `cfg`.
pub fn projector(cfg: &SlitConfig) -> Result<DHMap> {
    let d = cfg.dim;
    let p = DMatrix::from_fn(d, d, |i, j| {
        if i == j && cfg.contains_index(i) { c64(1.0) } else { c64(0.0) }
    });
    DHMap::doubled(&p)
}

/// `[a, b, c, d in U] rho_abcd`, the projector's action read off in components.
pub fn project_state(cfg: &SlitConfig, rho: &DHState) -> Result<DHState> {
    if rho.dim() != cfg.dim {
        return Err(Error::DimensionMismatch {
            expected: cfg.dim,
            found: rho.dim(),
        });
    }
    let t = Tensor::from_fn(rho.tensor().shape(), |i| {
        if i.iter().all(|&x| cfg.contains_index(x)) {
            rho.tensor().get(i)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    DHState::from_tensor_unchecked(t)
}

/// The pure state with all components `1/d^2`.
pub fn uniform_state(d: usize) -> Result<DHState> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let m = DMatrix::from_element(d, d, c64(1.0 / d as f64));
    DHState::from_psd_family(&[m])
}

/// `<rho+| P_U |rho+>`.
pub fn slit_probability(cfg: &SlitConfig) -> Result<f64> {
    let plus = uniform_state(cfg.dim)?;
    let projected = project_state(cfg, &plus)?;
    EffectTensor::of_state(&plus).evaluate(&projected, 1e-12)
}

/// Number of index tuples over `U` of each shape, by counting injections.
pub fn shape_census(cfg: &SlitConfig) -> Vec<(ComponentClass, usize)> {
    ComponentClass::ALL.iter().map(|&c| (c, c.count(cfg.size()))).collect()
}

/// Same tally by walking all of `U^4`.
pub fn shape_census_enumerated(cfg: &SlitConfig) -> Vec<(ComponentClass, usize)> {
    let mut counts: Vec<(ComponentClass, usize)> = ComponentClass::ALL.iter().map(|&c| (c, 0)).collect();
    let u = &cfg.subset;
    for &a in u {
        for &b in u {
            for &c in u {
                for &d in u {
                    let class = ComponentClass::of([a, b, c, d]);
                    let slot = counts.iter_mut().find(|(k, _)| *k == class).expect("all classes listed");
                    slot.1 += 1;
                }
            }
        }
    }
    counts
}
