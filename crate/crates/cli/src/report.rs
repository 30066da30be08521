use dhcube_core::hypercube::{ClassRecord, OrbitCensus};
use dhcube_core::interference::{InterferenceReport, SorkinDecomposition};
use dhcube_core::verify::VerifyReport;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SizeValue {
    pub size: usize,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct OrderValue {
    pub order: usize,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct ShapeJson {
    pub size: usize,
    pub class: &'static str,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct InterferenceJson {
    pub dim: usize,
    pub max_order: usize,
    pub probabilities: Vec<SizeValue>,
    pub sorkin: Vec<OrderValue>,
    pub shapes: Vec<ShapeJson>,
    pub closed_form_error: f64,
    pub consistent: bool,
}

impl InterferenceJson {
    pub fn new(r: &InterferenceReport, tol: f64) -> Self {
        Self {
            dim: r.dim,
            max_order: r.max_order,
            probabilities: r.probabilities.iter().map(|&(size, value)| SizeValue { size, value }).collect(),
            sorkin: r.sorkin.iter().map(|&(order, value)| OrderValue { order, value }).collect(),
            shapes: r
                .shapes
                .iter()
                .map(|s| ShapeJson {
                    size: s.size,
                    class: s.class.name(),
                    count: s.count,
                })
                .collect(),
            closed_form_error: r.closed_form_error,
            consistent: r.consistent(tol),
        }
    }
}

#[derive(Debug, Serialize)]
struct InterferenceRow {
    dim: usize,
    subset_size: Option<usize>,
    probability: Option<f64>,
    sorkin_order: Option<usize>,
    sorkin_value: Option<f64>,
}

pub fn interference_csv(r: &InterferenceReport) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for &(k, p) in &r.probabilities {
        w.serialize(InterferenceRow {
            dim: r.dim,
            subset_size: Some(k),
            probability: Some(p),
            sorkin_order: None,
            sorkin_value: None,
        })?;
    }
    for &(k, i) in &r.sorkin {
        w.serialize(InterferenceRow {
            dim: r.dim,
            subset_size: None,
            probability: None,
            sorkin_order: Some(k),
            sorkin_value: Some(i),
        })?;
    }
    into_string(w)
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    pub size: usize,
    pub subsets: usize,
    pub probability: f64,
}

#[derive(Debug, Serialize)]
pub struct DecompositionJson {
    pub order: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_scaled: f64,
    pub rhs_scaled: f64,
    pub interference: f64,
    pub closed_form: f64,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
pub struct SorkinJson {
    pub dim: usize,
    pub decompositions: Vec<DecompositionJson>,
    pub consistent: bool,
}

impl DecompositionJson {
    pub fn new(d: &SorkinDecomposition, closed_form: f64) -> Self {
        Self {
            order: d.order,
            lhs: d.lhs,
            rhs: d.rhs,
            lhs_scaled: d.lhs_scaled(),
            rhs_scaled: d.rhs_scaled(),
            interference: d.interference(),
            closed_form,
            terms: d
                .terms
                .iter()
                .map(|&(size, subsets, probability)| TermJson { size, subsets, probability })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct SorkinRow {
    dim: usize,
    order: usize,
    lhs: f64,
    rhs: f64,
    interference: f64,
    closed_form: f64,
}

pub fn sorkin_csv(s: &SorkinJson) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for d in &s.decompositions {
        w.serialize(SorkinRow {
            dim: s.dim,
            order: d.order,
            lhs: d.lhs,
            rhs: d.rhs,
            interference: d.interference,
            closed_form: d.closed_form,
        })?;
    }
    into_string(w)
}

#[derive(Debug, Serialize)]
pub struct ClassJson {
    pub class: &'static str,
    pub components: usize,
    pub orbits: f64,
    pub orbit_sizes: Vec<usize>,
    pub stabilizer: Option<&'static str>,
    pub real_parameters: f64,
}

impl From<&ClassRecord> for ClassJson {
    fn from(r: &ClassRecord) -> Self {
        Self {
            class: r.class.name(),
            components: r.components,
            orbits: r.orbit_quarters as f64 / 4.0,
            orbit_sizes: r.orbit_sizes.clone(),
            stabilizer: r.stabilizer.map(|s| s.name()),
            real_parameters: r.parameter_quarters as f64 / 4.0,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CensusJson {
    pub dim: usize,
    pub components: usize,
    pub orbits: usize,
    pub burnside_orbits: usize,
    pub cone_formula_value: i64,
    pub census_total: usize,
    pub span_samples: Option<usize>,
    pub span_rank: Option<usize>,
    pub classes: Vec<ClassJson>,
}

impl CensusJson {
    pub fn new(c: &OrbitCensus, span_samples: Option<usize>) -> Self {
        Self {
            dim: c.dim,
            components: c.classes.iter().map(|r| r.components).sum(),
            orbits: c.orbits,
            burnside_orbits: c.burnside_orbits,
            cone_formula_value: c.cone_formula_value,
            census_total: c.census_total,
            span_samples,
            span_rank: c.span_rank,
            classes: c.classes.iter().map(ClassJson::from).collect(),
        }
    }
}

pub fn census_csv(c: &CensusJson) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dim", "class", "components", "orbits", "stabilizer", "real_parameters"])?;
    for r in &c.classes {
        w.write_record([
            c.dim.to_string(),
            r.class.to_string(),
            r.components.to_string(),
            r.orbits.to_string(),
            r.stabilizer.unwrap_or("").to_string(),
            r.real_parameters.to_string(),
        ])?;
    }
    into_string(w)
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub max_error: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub suite: &'static str,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<CheckJson>,
    pub pass: bool,
}

impl VerifyJson {
    pub fn new(r: &VerifyReport, trials: usize, seed: u64, tol: f64) -> Self {
        Self {
            suite: r.suite.name(),
            dim: r.dim,
            trials,
            seed,
            tol,
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    max_error: c.max_error,
                    pass: c.pass,
                    value: c.value,
                })
                .collect(),
            pass: r.passed(),
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    dim: usize,
    name: &'a str,
    max_error: f64,
    pass: bool,
    value: Option<f64>,
}

pub fn verify_csv(v: &VerifyJson) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in &v.checks {
        w.serialize(CheckRow {
            suite: v.suite,
            dim: v.dim,
            name: &c.name,
            max_error: c.max_error,
            pass: c.pass,
            value: c.value,
        })?;
    }
    into_string(w)
}

fn into_string(w: csv::Writer<Vec<u8>>) -> csv::Result<String> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
