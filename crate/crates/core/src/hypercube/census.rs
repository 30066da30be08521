use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::shape::ComponentClass;
use super::state::random_dh_state;
use crate::error::{Error, Result};
use crate::kernel::rng::derive_seed;

/// Which symmetry relations fix a component index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StabilizerKind {
    Trivial,
    /// Only the non-conjugating `tau(1,1)`.
    SelfTranspose,
    /// `tau(0,1)` or `tau(1,0)`: the component is real.
    Conjugating,
    Full,
}

impl StabilizerKind {
    pub fn real_parameters(self) -> usize {
        match self {
            Self::Trivial | Self::SelfTranspose => 2,
            Self::Conjugating | Self::Full => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Trivial => "trivial",
            Self::SelfTranspose => "self_transpose",
            Self::Conjugating => "conjugating",
            Self::Full => "full",
        }
    }
}

/// Per-class tally. Orbits can straddle classes, so orbit and parameter
/// counts are apportioned per component and kept in quarter units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub class: ComponentClass,
    pub components: usize,
    pub orbit_quarters: usize,
    pub orbit_sizes: Vec<usize>,
    pub stabilizer: Option<StabilizerKind>,
    pub parameter_quarters: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCensus {
    pub dim: usize,
    pub classes: Vec<ClassRecord>,
    pub orbits: usize,
    pub burnside_orbits: usize,
    /// `(d^4 - 3 d^3 + 7 d^2 - 3 d) / 2`, reported for comparison only.
    pub cone_formula_value: i64,
    pub census_total: usize,
    pub span_rank: Option<usize>,
}

fn act(g: usize, t: [usize; 4]) -> [usize; 4] {
    let [a, b, c, d] = t;
    match g {
        0 => t,
        1 => [b, a, d, c],
        2 => [c, d, a, b],
        _ => [d, c, b, a],
    }
}

fn stabilizer(t: [usize; 4]) -> StabilizerKind {
    let fixed = [act(1, t) == t, act(2, t) == t, act(3, t) == t];
    match fixed {
        [true, true, _] => StabilizerKind::Full,
        [true, false, _] | [false, true, _] => StabilizerKind::Conjugating,
        [false, false, true] => StabilizerKind::SelfTranspose,
        [false, false, false] => StabilizerKind::Trivial,
    }
}

pub fn cone_formula_value(d: usize) -> i64 {
    let d = d as i64;
    (d.pow(4) - 3 * d.pow(3) + 7 * d * d - 3 * d) / 2
}

/// Classifies all `d^4` component indices and counts orbits and free real
/// parameters under the symmetry group.
pub fn orbit_census(d: usize) -> Result<OrbitCensus> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut records: BTreeMap<ComponentClass, ClassRecord> = ComponentClass::ALL
        .iter()
        .map(|&class| {
            let rec = ClassRecord {
                class,
                components: 0,
                orbit_quarters: 0,
                orbit_sizes: Vec::new(),
                stabilizer: None,
                parameter_quarters: 0,
            };
            (class, rec)
        })
        .collect();
    let mut orbits = 0;
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let t = [a, b, c, e];
                    let images: Vec<[usize; 4]> = (0..4).map(|g| act(g, t)).collect();
                    let mut distinct = images.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    let size = distinct.len();
                    if distinct[0] == t {
                        orbits += 1;
                    }
                    let stab = stabilizer(t);
                    let rec = records.get_mut(&ComponentClass::of(t)).expect("all classes present");
                    rec.components += 1;
                    rec.orbit_quarters += 4 / size;
                    rec.parameter_quarters += 4 * stab.real_parameters() / size;
                    if !rec.orbit_sizes.contains(&size) {
                        rec.orbit_sizes.push(size);
                        rec.orbit_sizes.sort_unstable();
                    }
                    rec.stabilizer = Some(stab);
                }
            }
        }
    }
    let classes: Vec<ClassRecord> = records.into_values().collect();
    let census_total = classes.iter().map(|r| r.parameter_quarters).sum::<usize>() / 4;
    Ok(OrbitCensus {
        dim: d,
        classes,
        orbits,
        burnside_orbits: (d.pow(4) + 3 * d * d) / 4,
        cone_formula_value: cone_formula_value(d),
        census_total,
        span_rank: None,
    })
}

/// Dimension of the real span of `samples` random certified states. Sample
/// `i` uses a seed derived from `(seed, i)`, so a larger run extends a smaller one.
pub fn span_rank(d: usize, samples: usize, seed: u64) -> Result<usize> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = d.pow(4);
    if samples < 2 * n {
        return Err(Error::TooFewSamples {
            needed: 2 * n,
            got: samples,
        });
    }
    let mut m = DMatrix::<f64>::zeros(2 * n, samples);
    for s in 0..samples {
        let members = 1 + s % 2;
        let rho = random_dh_state(d, members, derive_seed(seed, s as u64))?;
        for (i, z) in rho.tensor().data().iter().enumerate() {
            m[(2 * i, s)] = z.re;
            m[(2 * i + 1, s)] = z.im;
        }
    }
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    Ok(sv.iter().filter(|&&v| v > 1e-8 * top).count())
}
