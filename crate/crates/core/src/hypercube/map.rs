use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::effect::{EffectKind, EffectTensor};
use super::state::{random_dh_state, DHState};
use super::{from_basis_mats, transform_legs};
use crate::error::{Error, Result};
use crate::kernel::rng::derive_seed;
use crate::kernel::{c64, contract, rearrange, ClassicalStructure, Tensor};

const INPUT_PAIRS: [(usize, usize); 4] = [(4, 0), (5, 1), (6, 2), (7, 3)];
const OUTPUT_PAIRS: [(usize, usize); 4] = [(0, 0), (1, 1), (2, 2), (3, 3)];

/// Generator triple of a map: `f` with axes `(g, out, e, in)` and the classical
/// structure on `g` that bridges the four copies.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    f: Tensor,
    g_dim: usize,
    e_dim: usize,
    bridge: ClassicalStructure,
}

impl Generator {
    pub fn new(f: Tensor, g_dim: usize, e_dim: usize, bridge: ClassicalStructure) -> Result<Self> {
        if f.rank() != 4 || f.shape()[0] != g_dim || f.shape()[2] != e_dim {
            return Err(Error::ShapeMismatch("generator axes must be (g, out, e, in)"));
        }
        if bridge.dim() != g_dim {
            return Err(Error::DimensionMismatch {
                expected: g_dim,
                found: bridge.dim(),
            });
        }
        Ok(Self {
            f,
            g_dim,
            e_dim,
            bridge,
        })
    }

    pub fn f(&self) -> &Tensor {
        &self.f
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn e_dim(&self) -> usize {
        self.e_dim
    }

    pub fn bridge(&self) -> &ClassicalStructure {
        &self.bridge
    }

    pub fn out_dim(&self) -> usize {
        self.f.shape()[1]
    }

    pub fn in_dim(&self) -> usize {
        self.f.shape()[3]
    }

    /// `f` with its `g` axis expressed in bridge coordinates.
    fn rotated(&self) -> Tensor {
        if self.bridge.is_computational() {
            return self.f.clone();
        }
        let psi_c = Tensor::from_matrix(&self.bridge.basis().conjugate());
        contract(&psi_c, &self.f, &[(0, 0)]).expect("bridge matches g axis")
    }

    /// `(F_ge)_{a'a}` for every bridge index `g` and environment index `e`.
    fn slices(&self) -> Vec<DMatrix<Complex64>> {
        let f = self.rotated();
        let (o, i) = (self.out_dim(), self.in_dim());
        let mut out = Vec::with_capacity(self.g_dim * self.e_dim);
        for g in 0..self.g_dim {
            for e in 0..self.e_dim {
                out.push(DMatrix::from_fn(o, i, |a, b| f.get(&[g, a, e, b])));
            }
        }
        out
    }

    fn compile(&self) -> Tensor {
        let f = self.rotated();
        let (o, i) = (self.out_dim(), self.in_dim());
        let block = o * self.e_dim * i;
        let mut phi = Tensor::zeros(&[o, i, o, i, o, i, o, i]);
        for g in 0..self.g_dim {
            let data = f.data()[g * block..(g + 1) * block].to_vec();
            let fg = Tensor::new(alloc::vec![o, self.e_dim, i], data).expect("slice of f");
            // A_g has axes (a', a, b', b)
            let ag = contract(&fg.conj(), &fg, &[(1, 1)]).expect("matching e axes");
            let outer = contract(&ag, &ag.conj(), &[]).expect("outer product");
            phi.add_assign_scaled(&outer, c64(1.0));
        }
        rearrange(&phi, &[0, 2, 4, 6, 1, 3, 5, 7], false).expect("rank 8")
    }
}

/// A map of density hypercubes as a rank-8 tensor with axes
/// `(a', b', c', d', a, b, c, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DHMap {
    in_dim: usize,
    out_dim: usize,
    tensor: Tensor,
    generator: Option<Generator>,
}

impl DHMap {
    pub fn from_tensor(tensor: Tensor) -> Result<Self> {
        let s = tensor.shape();
        if s.len() != 8 || s[..4] != [s[0]; 4] || s[4..] != [s[4]; 4] {
            return Err(Error::ShapeMismatch("a map is a (o, o, o, o, i, i, i, i) tensor"));
        }
        Ok(Self {
            in_dim: s[4],
            out_dim: s[0],
            tensor,
            generator: None,
        })
    }

    pub fn from_generator(generator: Generator) -> Self {
        let tensor = generator.compile();
        Self {
            in_dim: generator.in_dim(),
            out_dim: generator.out_dim(),
            tensor,
            generator: Some(generator),
        }
    }

    /// Generator map from `f` with axes `(g, out, e, in)`.
    pub fn generated(f: Tensor, g_dim: usize, e_dim: usize, bridge: ClassicalStructure) -> Result<Self> {
        Ok(Self::from_generator(Generator::new(f, g_dim, e_dim, bridge)?))
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::doubled(&DMatrix::identity(d, d))
    }

    /// The doubled linear map `u`, with trivial bridge and environment.
    pub fn doubled(u: &DMatrix<Complex64>) -> Result<Self> {
        let (o, i) = u.shape();
        if o == 0 || i == 0 {
            return Err(Error::ZeroDimension);
        }
        let f = Tensor::from_matrix(u).reshape(&[1, o, 1, i])?;
        Self::generated(f, 1, 1, ClassicalStructure::computational(1)?)
    }

    /// Map whose components in `(z_out, z_in)` coordinates are `local`.
    pub fn from_local(
        local: &Tensor,
        z_in: &ClassicalStructure,
        z_out: &ClassicalStructure,
    ) -> Result<Self> {
        let shape = [z_out.dim(), z_out.dim(), z_out.dim(), z_out.dim(), z_in.dim(), z_in.dim(), z_in.dim(), z_in.dim()];
        if local.shape() != shape {
            return Err(Error::ShapeMismatch("local map shape does not match the bases"));
        }
        if z_in.is_computational() && z_out.is_computational() {
            return Self::from_tensor(local.clone());
        }
        let mut mats = from_basis_mats(z_out);
        mats.extend(input_leg_mats(z_in));
        Self::from_tensor(transform_legs(local, &mats))
    }

    /// `sum_k states[k] (x) effects[k]`: prepare `states[k]` after observing `effects[k]`.
    pub fn from_outer_sum(terms: &[(Tensor, Tensor)]) -> Result<Self> {
        let (s0, e0) = terms.first().ok_or(Error::ShapeMismatch("empty outer sum"))?;
        let mut acc = contract(s0, e0, &[])?;
        for (s, e) in &terms[1..] {
            acc.add_assign_scaled(&contract(s, e, &[])?, c64(1.0));
        }
        Self::from_tensor(acc)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    /// Components in `(z_out, z_in)` coordinates.
    pub fn in_bases(&self, z_in: &ClassicalStructure, z_out: &ClassicalStructure) -> Result<Tensor> {
        if z_in.dim() != self.in_dim || z_out.dim() != self.out_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim,
                found: z_in.dim(),
            });
        }
        let mut mats = super::to_basis_mats(z_out);
        mats.extend(from_basis_mats(z_in).into_iter().map(|m| transpose(&m)));
        Ok(transform_legs(&self.tensor, &mats))
    }

    /// Plugs `rho` into the input legs. A certificate is carried through when
    /// both the state and the map have one.
    pub fn apply(&self, rho: &DHState) -> Result<DHState> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim,
                found: rho.dim(),
            });
        }
        let tensor = contract(&self.tensor, rho.tensor(), &INPUT_PAIRS)?;
        let certificate = match (&self.generator, rho.certificate()) {
            (Some(gen), Some(ms)) => Some(push_certificate(gen, ms)),
            _ => None,
        };
        Ok(DHState::with_certificate(tensor, certificate))
    }

    /// The effect `E o self`.
    pub fn pull_back(&self, effect: &EffectTensor) -> Result<EffectTensor> {
        if effect.dim() != self.out_dim {
            return Err(Error::DimensionMismatch {
                expected: self.out_dim,
                found: effect.dim(),
            });
        }
        let t = contract(effect.tensor(), &self.tensor, &OUTPUT_PAIRS)?;
        EffectTensor::new(t, EffectKind::Composite)
    }

    /// Whether the forest effect pulls back to the forest effect.
    pub fn is_normalised(&self, tol: f64) -> bool {
        let (Ok(out), Ok(inp)) = (EffectTensor::forest(self.out_dim), EffectTensor::forest(self.in_dim)) else {
            return false;
        };
        match self.pull_back(&out) {
            Ok(back) => back.tensor().max_abs_diff(inp.tensor()) <= tol,
            Err(_) => false,
        }
    }

    /// Sampled check that `forest - forest o phi` is non-negative: true if no
    /// value below `-tol` shows up on `samples` random certified states.
    pub fn is_sub_normalised(&self, samples: usize, seed: u64, tol: f64) -> Result<bool> {
        let gap = EffectTensor::new(
            EffectTensor::forest(self.in_dim)?
                .tensor()
                .sub(self.pull_back(&EffectTensor::forest(self.out_dim)?)?.tensor())?,
            EffectKind::Composite,
        )?;
        for s in 0..samples {
            let rho = random_dh_state(self.in_dim, 1 + s % 3, derive_seed(seed, s as u64))?;
            if gap.pair(&rho)?.re < -tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn transpose(m: &Tensor) -> Tensor {
    rearrange(m, &[1, 0], false).expect("matrix")
}

/// Leg matrices that contract the input axes of a local map against
/// computational input components.
fn input_leg_mats(z: &ClassicalStructure) -> Vec<Tensor> {
    super::to_basis_mats(z).into_iter().map(|m| transpose(&m)).collect()
}

fn push_certificate(gen: &Generator, ms: &[DMatrix<Complex64>]) -> Vec<DMatrix<Complex64>> {
    let slices = gen.slices();
    let mut out = Vec::with_capacity(gen.g_dim * ms.len());
    for g in 0..gen.g_dim {
        let fs = &slices[g * gen.e_dim..(g + 1) * gen.e_dim];
        for m in ms {
            let n = fs.iter().fold(DMatrix::zeros(gen.out_dim(), gen.out_dim()), |acc, f| {
                acc + f.conjugate() * m * f.transpose()
            });
            out.push(n);
        }
    }
    out
}

/// `second o first`.
pub fn dh_compose(second: &DHMap, first: &DHMap) -> Result<DHMap> {
    if first.out_dim != second.in_dim {
        return Err(Error::DimensionMismatch {
            expected: second.in_dim,
            found: first.out_dim,
        });
    }
    let tensor = contract(&second.tensor, &first.tensor, &INPUT_PAIRS)?;
    DHMap::from_tensor(tensor)
}

/// Parallel composition; every slot carries the pair index `i1 * d2 + i2`.
pub fn dh_tensor(left: &DHMap, right: &DHMap) -> Result<DHMap> {
    DHMap::from_tensor(left.tensor.kron_slots(&right.tensor)?)
}
