//! JSON encodings of tensors and states. Complex numbers are `[re, im]` pairs
//! and data is row-major.

use dhcube_core::kernel::Complex64;
use dhcube_core::{DHState, Tensor};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub shape: Vec<usize>,
    pub data: Vec<[f64; 2]>,
}

impl From<&Tensor> for TensorJson {
    fn from(t: &Tensor) -> Self {
        Self {
            shape: t.shape().to_vec(),
            data: t.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<&TensorJson> for Tensor {
    type Error = dhcube_core::Error;

    fn try_from(j: &TensorJson) -> Result<Self, Self::Error> {
        Tensor::new(j.shape.clone(), j.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

fn matrix_json(m: &DMatrix<Complex64>) -> TensorJson {
    TensorJson::from(&Tensor::from_matrix(m))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub tensor: TensorJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<TensorJson>>,
}

impl From<&DHState> for StateJson {
    fn from(s: &DHState) -> Self {
        Self {
            dim: s.dim(),
            tensor: TensorJson::from(s.tensor()),
            certificate: s.certificate().map(|ms| ms.iter().map(matrix_json).collect()),
        }
    }
}

impl TryFrom<&StateJson> for DHState {
    type Error = dhcube_core::Error;

    /// Rebuilds from the certificate when present, otherwise validates the
    /// symmetry relations of the bare tensor.
    fn try_from(j: &StateJson) -> Result<Self, Self::Error> {
        let tensor = Tensor::try_from(&j.tensor)?;
        let Some(cert) = &j.certificate else {
            return DHState::from_tensor(tensor);
        };
        let ms = cert
            .iter()
            .map(|m| Tensor::try_from(m)?.to_matrix())
            .collect::<Result<Vec<_>, _>>()?;
        let state = DHState::from_psd_family(&ms)?;
        if state.dim() != j.dim || state.tensor().max_abs_diff(&tensor) > dhcube_core::DEFAULT_TOL {
            return Err(dhcube_core::Error::ShapeMismatch("certificate does not reproduce the tensor"));
        }
        Ok(state)
    }
}
