use alloc::vec::Vec;

use super::experiment::{project_state, shape_census, slit_probability, uniform_state, SlitConfig};
use crate::error::{Error, Result};
use crate::hypercube::{ComponentClass, EffectKind, EffectTensor};
use crate::kernel::c64;
use num_traits::Float;

/// `sum_{V nonempty, V in U} (-1)^{#U - #V} f(V)`.
pub fn inclusion_exclusion(cfg: &SlitConfig, mut f: impl FnMut(&SlitConfig) -> Result<f64>) -> Result<f64> {
    let k = cfg.size();
    let mut acc = 0.0;
    for v in cfg.nonempty_subsets() {
        let sign = if (k - v.size()).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * f(&v)?;
    }
    Ok(acc)
}

pub fn sorkin_interference(cfg: &SlitConfig) -> Result<f64> {
    inclusion_exclusion(cfg, slit_probability)
}

/// `k! S(4, k) / d^4`, with `S` the Stirling numbers of the second kind.
pub fn closed_form_sorkin(k: usize, d: usize) -> f64 {
    let surjections = match k {
        1 => 1.0,
        2 => 14.0,
        3 => 36.0,
        4 => 24.0,
        _ => 0.0,
    };
    surjections / Float::powi(d as f64, 4)
}

/// The signed effect whose pairing with the uniform state is the Sorkin term.
pub fn inclusion_exclusion_effect(cfg: &SlitConfig) -> Result<EffectTensor> {
    let plus = uniform_state(cfg.dim())?;
    let dual = EffectTensor::of_state(&plus);
    let k = cfg.size();
    let mut acc = crate::kernel::Tensor::zeros(&[cfg.dim(); 4]);
    for v in cfg.nonempty_subsets() {
        let sign = if (k - v.size()).is_multiple_of(2) { 1.0 } else { -1.0 };
        // the projector is self-adjoint, so pulling the dual back masks it
        let dual_state = crate::hypercube::DHState::from_tensor_unchecked(dual.tensor().clone())?;
        let masked = project_state(&v, &dual_state)?;
        acc.add_assign_scaled(masked.tensor(), c64(sign));
    }
    EffectTensor::new(acc, EffectKind::Composite)
}

/// The two sides of `P[U] = sum_{V proper} ... + I_U`, both also scaled by `d^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct SorkinDecomposition {
    pub order: usize,
    pub dim: usize,
    /// `P[+|U]`.
    pub lhs: f64,
    /// `-sum_{V proper, nonempty} (-1)^{#U - #V} P[+|V]`.
    pub rhs: f64,
    /// `(size, number of subsets of that size, probability)` for every proper size.
    pub terms: Vec<(usize, usize, f64)>,
}

impl SorkinDecomposition {
    pub fn interference(&self) -> f64 {
        self.lhs - self.rhs
    }

    pub fn lhs_scaled(&self) -> f64 {
        self.lhs * Float::powi(self.dim as f64, 4)
    }

    pub fn rhs_scaled(&self) -> f64 {
        self.rhs * Float::powi(self.dim as f64, 4)
    }
}

pub fn sorkin_decomposition(cfg: &SlitConfig) -> Result<SorkinDecomposition> {
    let k = cfg.size();
    let lhs = slit_probability(cfg)?;
    let mut terms = Vec::new();
    let mut rhs = 0.0;
    for size in (1..k).rev() {
        let rep = SlitConfig::new(cfg.dim(), &cfg.labels()[..size])?;
        let p = slit_probability(&rep)?;
        let count = binomial(k, size);
        let sign = if (k - size).is_multiple_of(2) { -1.0 } else { 1.0 };
        rhs += sign * count as f64 * p;
        terms.push((size, count, p));
    }
    Ok(SorkinDecomposition {
        order: k,
        dim: cfg.dim(),
        lhs,
        rhs,
        terms,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeCount {
    pub size: usize,
    pub class: ComponentClass,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceReport {
    pub dim: usize,
    pub max_order: usize,
    /// `(k, P[+|{1..k}])`.
    pub probabilities: Vec<(usize, f64)>,
    /// `(k, I_{1..k})`.
    pub sorkin: Vec<(usize, f64)>,
    pub shapes: Vec<ShapeCount>,
    /// Largest deviation of the computed values from `k^4/d^4` and `k! S(4,k)/d^4`.
    pub closed_form_error: f64,
}

impl InterferenceReport {
    fn order(&self, k: usize) -> Option<f64> {
        self.sorkin.iter().find(|(o, _)| *o == k).map(|x| x.1)
    }

    pub fn third_order(&self, tol: f64) -> bool {
        self.order(3).is_some_and(|v| v.abs() > tol)
    }

    pub fn fourth_order(&self, tol: f64) -> bool {
        self.order(4).is_some_and(|v| v.abs() > tol)
    }

    pub fn higher_orders_vanish(&self, tol: f64) -> bool {
        self.sorkin.iter().filter(|(o, _)| *o >= 5).all(|(_, v)| v.abs() <= tol)
    }

    /// Probabilities in `[0, 1]`, full set at one, closed forms matched,
    /// third and fourth order present where possible, nothing from fifth on.
    pub fn consistent(&self, tol: f64) -> bool {
        let in_range = self.probabilities.iter().all(|&(_, p)| (-tol..=1.0 + tol).contains(&p));
        let full = self
            .probabilities
            .iter()
            .find(|(k, _)| *k == self.dim)
            .is_none_or(|(_, p)| (p - 1.0).abs() <= tol);
        in_range
            && full
            && self.closed_form_error <= tol
            && (self.max_order < 3 || self.third_order(tol))
            && (self.max_order < 4 || self.fourth_order(tol))
            && self.higher_orders_vanish(tol)
    }
}

/// Probabilities, Sorkin terms and shape counts for `U = {1..k}`, `k <= kmax`.
pub fn hierarchy_report(d: usize, kmax: usize) -> Result<InterferenceReport> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if kmax > d {
        return Err(Error::OrderTooLarge { order: kmax, dim: d });
    }
    if kmax == 0 {
        return Err(Error::EmptySubset);
    }
    let scale = Float::powi(d as f64, 4);
    let mut report = InterferenceReport {
        dim: d,
        max_order: kmax,
        probabilities: Vec::new(),
        sorkin: Vec::new(),
        shapes: Vec::new(),
        closed_form_error: 0.0,
    };
    for k in 1..=kmax {
        let cfg = SlitConfig::first(d, k)?;
        let p = slit_probability(&cfg)?;
        let i = sorkin_interference(&cfg)?;
        let err = (p - Float::powi(k as f64, 4) / scale).abs().max((i - closed_form_sorkin(k, d)).abs());
        report.closed_form_error = report.closed_form_error.max(err);
        report.probabilities.push((k, p));
        report.sorkin.push((k, i));
        report.shapes.extend(shape_census(&cfg).into_iter().map(|(class, count)| ShapeCount {
            size: k,
            class,
            count,
        }));
    }
    Ok(report)
}
