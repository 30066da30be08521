//! The `dhcube` command line. Every command builds its report in memory and
//! writes it once, as JSON or CSV, to stdout or `--out`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error.

pub mod args;
pub mod format;
pub mod report;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use args::{CensusArgs, Cli, Command, Common, Format, OrderArgs, VerifyArgs};
use dhcube_core::hypercube::{orbit_census, span_rank};
use dhcube_core::interference::{closed_form_sorkin, hierarchy_report, sorkin_decomposition, SlitConfig};
use dhcube_core::verify::{run_suite, VerifyConfig};
use report::{CensusJson, DecompositionJson, InterferenceJson, SorkinJson, VerifyJson};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dhcube_core::Error),
    #[error("writing report: {0}")]
    Io(#[from] io::Error),
    #[error("encoding report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("encoding report: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            _ => 1,
        }
    }
}

/// A rendered report and whether all of its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Interference(a) => interference(a),
        Command::Sorkin(a) => sorkin(a),
        Command::Census(a) => census(a),
        Command::Verify(a) => verify(a),
    }
}

/// Runs, writes the report, and maps the result to the exit code contract.
pub fn main_with(cli: &Cli) -> ExitCode {
    let out = cli_common(cli).out.clone();
    let result = run(cli).and_then(|o| {
        match &out {
            Some(path) => fs::write(path, &o.text)?,
            None => io::stdout().lock().write_all(o.text.as_bytes())?,
        }
        Ok(o.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("dhcube: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cli_common(cli: &Cli) -> &Common {
    match &cli.command {
        Command::Interference(a) | Command::Sorkin(a) => &a.common,
        Command::Census(a) => &a.common,
        Command::Verify(a) => &a.common,
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn guard(c: &Common, cap: usize, what: &str) -> Result<(), CliError> {
    if c.dim > cap && !c.force_large {
        return Err(CliError::Usage(format!(
            "--dim {} exceeds {cap} for {what}; pass --force-large to run anyway",
            c.dim
        )));
    }
    Ok(())
}

fn max_order(a: &OrderArgs) -> Result<usize, CliError> {
    let k = a.max_order.unwrap_or(a.common.dim);
    if k > a.common.dim {
        return Err(CliError::Usage(format!("--max-order {k} exceeds --dim {}", a.common.dim)));
    }
    Ok(k)
}

fn interference(a: &OrderArgs) -> Result<Outcome, CliError> {
    guard(&a.common, args::MAX_INTERFERENCE_DIM, "interference")?;
    let r = hierarchy_report(a.common.dim, max_order(a)?)?;
    let pass = r.consistent(a.common.tol);
    let text = match a.common.format {
        Format::Json => json(&InterferenceJson::new(&r, a.common.tol))?,
        Format::Csv => report::interference_csv(&r)?,
    };
    Ok(Outcome { text, pass })
}

fn sorkin(a: &OrderArgs) -> Result<Outcome, CliError> {
    guard(&a.common, args::MAX_INTERFERENCE_DIM, "sorkin")?;
    let d = a.common.dim;
    let mut decompositions = Vec::new();
    for k in 1..=max_order(a)? {
        let dec = sorkin_decomposition(&SlitConfig::first(d, k)?)?;
        decompositions.push(DecompositionJson::new(&dec, closed_form_sorkin(k, d)));
    }
    let pass = decompositions.iter().all(|x| (x.interference - x.closed_form).abs() <= a.common.tol);
    let s = SorkinJson {
        dim: d,
        decompositions,
        consistent: pass,
    };
    let text = match a.common.format {
        Format::Json => json(&s)?,
        Format::Csv => report::sorkin_csv(&s)?,
    };
    Ok(Outcome { text, pass })
}

fn census(a: &CensusArgs) -> Result<Outcome, CliError> {
    let d = a.common.dim;
    let sampling = d <= args::MAX_SPAN_DIM || a.common.force_large;
    if a.span_samples.is_some() && !sampling {
        guard(&a.common, args::MAX_SPAN_DIM, "span sampling")?;
    }
    let mut c = orbit_census(d)?;
    let samples = sampling.then(|| a.span_samples.unwrap_or(2 * d.pow(4)));
    if let Some(n) = samples {
        c.span_rank = Some(span_rank(d, n, a.seed)?);
    }
    let report = CensusJson::new(&c, samples);
    let text = match a.common.format {
        Format::Json => json(&report)?,
        Format::Csv => report::census_csv(&report)?,
    };
    // disagreement between the counts is data, not failure
    Ok(Outcome { text, pass: true })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    guard(&a.common, args::MAX_VERIFY_DIM, "verification suites")?;
    let cfg = VerifyConfig {
        dim: a.common.dim,
        trials: a.trials,
        seed: a.seed,
        tol: a.common.tol,
    };
    let r = run_suite(a.suite.into(), &cfg)?;
    let v = VerifyJson::new(&r, a.trials, a.seed, a.common.tol);
    let text = match a.common.format {
        Format::Json => json(&v)?,
        Format::Csv => report::verify_csv(&v)?,
    };
    Ok(Outcome { text, pass: v.pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn parse(line: &str) -> Cli {
        Cli::try_parse_from(line.split_whitespace()).unwrap()
    }

    #[test]
    fn guards_are_usage_errors() {
        let e = run(&parse("dhcube interference --dim 9")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&parse("dhcube sorkin --dim 3 --max-order 4")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&parse("dhcube census --dim 5 --span-samples 2000")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(run(&parse("dhcube interference --dim 9 --force-large")).unwrap().pass);
    }

    #[test]
    fn large_census_skips_sampling_by_default() {
        let o = run(&parse("dhcube census --dim 5")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&o.text).unwrap();
        assert!(v["span_rank"].is_null());
        assert_eq!(v["components"], 625);
    }

    #[test]
    fn sorkin_orders() {
        let o = run(&parse("dhcube sorkin --dim 4")).unwrap();
        assert!(o.pass);
        let v: serde_json::Value = serde_json::from_str(&o.text).unwrap();
        let four = &v["decompositions"][3];
        assert_eq!(four["lhs_scaled"].as_f64().unwrap().round(), 256.0);
        assert_eq!(four["rhs_scaled"].as_f64().unwrap().round(), 232.0);
        assert_eq!(four["terms"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn zero_dim_rejected_by_parser() {
        assert!(Cli::try_parse_from(["dhcube", "census", "--dim", "0"]).is_err());
        assert!(Cli::try_parse_from(["dhcube", "verify", "--trials", "0"]).is_err());
        assert!(Cli::try_parse_from(["dhcube", "verify", "--tol", "-1"]).is_err());
        assert!(Cli::try_parse_from(["dhcube", "verify", "--suite", "nope"]).is_err());
    }
}
