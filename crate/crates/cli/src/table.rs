//! Reproduction of the two published tables for T3(1,2,1,1).

use std::fmt::Write;

use krun::count::{moments_recursive, pmf_recursive};
use krun::waiting::{waiting_moments, waiting_pmf_recursive};
use krun::{PatternSpec, TrialParams};
use serde_json::json;

use crate::error::CliError;
use crate::output::{envelope, spec_json};

const COUNT_TRIALS: usize = 60;
const COUNT_P: [f64; 6] = [0.35, 0.36, 0.37, 0.38, 0.39, 0.40];
const COUNT_ROWS: std::ops::RangeInclusive<usize> = 0..=5;
const WAITING_P: [f64; 6] = [0.45, 0.46, 0.47, 0.48, 0.49, 0.50];
const WAITING_ROWS: std::ops::RangeInclusive<usize> = 3..=10;

struct Column {
    p: f64,
    probs: Vec<(usize, f64)>,
    mean: f64,
    tail_mass: f64,
}

fn columns(which: u8) -> Result<Vec<Column>, CliError> {
    let spec = PatternSpec::t3(1, 2, 1, 1)?;
    let grid = if which == 1 { COUNT_P } else { WAITING_P };
    grid.iter()
        .map(|&p| {
            let params = TrialParams::new(p)?;
            let col = if which == 1 {
                let pmf = pmf_recursive(&spec, &params, COUNT_TRIALS)?;
                Column {
                    p,
                    probs: COUNT_ROWS.map(|m| (m, pmf.prob(m))).collect(),
                    mean: moments_recursive(&spec, &params, COUNT_TRIALS, 1).mean().unwrap(),
                    tail_mass: pmf.tail_mass(),
                }
            } else {
                let pmf = waiting_pmf_recursive(&spec, &params, 1, *WAITING_ROWS.end())?;
                Column {
                    p,
                    probs: WAITING_ROWS.map(|m| (m, pmf.prob(m))).collect(),
                    mean: waiting_moments(&spec, &params, 1, 1)?.mean().unwrap(),
                    tail_mass: pmf.tail_mass(),
                }
            };
            Ok(col)
        })
        .collect()
}

/// One row per outcome plus the mean row; each p gets a full-precision
/// column and a 7-decimal display column.
pub fn table(which: u8, json_out: bool) -> Result<String, CliError> {
    let cols = columns(which)?;
    let mean_label = if which == 1 { "mean" } else { "mean_computed" };
    if json_out {
        let spec = spec_json(&PatternSpec::t3(1, 2, 1, 1)?);
        let params = if which == 1 {
            json!({"n": COUNT_TRIALS, "p": COUNT_P})
        } else {
            json!({"r": 1, "mmax": WAITING_ROWS.end(), "p": WAITING_P})
        };
        let values: Vec<_> = cols
            .iter()
            .map(|c| {
                json!({
                    "p": c.p,
                    "rows": c.probs.iter().map(|&(m, x)| json!({"m": m, "probability": x})).collect::<Vec<_>>(),
                    mean_label: c.mean,
                    "tail_mass": c.tail_mass,
                })
            })
            .collect();
        // One tail mass per column.
        let tails: Vec<f64> = cols.iter().map(|c| c.tail_mass).collect();
        return Ok(envelope(spec, params, "recursive", json!(values), tails));
    }
    let mut out = String::from("m");
    for c in &cols {
        write!(out, ",p={0},p={0}:7dp", c.p).unwrap();
    }
    out.push('\n');
    for row in 0..cols[0].probs.len() {
        write!(out, "{}", cols[0].probs[row].0).unwrap();
        for c in &cols {
            let x = c.probs[row].1;
            write!(out, ",{x},{x:.7}").unwrap();
        }
        out.push('\n');
    }
    out.push_str(mean_label);
    for c in &cols {
        write!(out, ",{0},{0:.7}", c.mean).unwrap();
    }
    out.push('\n');
    Ok(out)
}
