//! The multi-slit experiment: the uniform state is passed through the
//! projector onto a subset `U` of slits and tested against itself. The
//! outcome probability is `(#U)^4 / d^4`, so the Sorkin terms are
//! `k! S(4, k) / d^4` and vanish from order five on.

mod cross;
mod experiment;
mod sorkin;

pub use cross::{classical_slit_probability, classical_sorkin, quantum_slit_probability, quantum_sorkin};
pub use experiment::{
    project_state, projector, shape_census, shape_census_enumerated, slit_probability,
    uniform_state, SlitConfig,
};
pub use sorkin::{
    closed_form_sorkin, hierarchy_report, inclusion_exclusion, inclusion_exclusion_effect, sorkin_decomposition,
    sorkin_interference, InterferenceReport, ShapeCount, SorkinDecomposition,
};
