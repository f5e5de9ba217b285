//! CSV and JSON rendering. Numbers use the shortest representation that
//! round-trips, so identical inputs give byte-identical output.

use std::fmt::Write;

use krun::{PatternSpec, Pmf};
use serde_json::{json, Value};

pub fn spec_json(spec: &PatternSpec) -> Value {
    serde_json::to_value(spec).expect("pattern specs serialize")
}

/// The common JSON shape; `tail_mass` is null where nothing is truncated.
pub fn envelope(spec: Value, params: Value, backend: &str, values: Value, tail_mass: impl Into<Value>) -> String {
    let tail_mass: Value = tail_mass.into();
    let out = json!({
        "spec": spec,
        "params": params,
        "backend": backend,
        "values": values,
        "tail_mass": tail_mass,
    });
    serde_json::to_string_pretty(&out).expect("json values serialize")
}

pub fn pmf_csv(pmf: &Pmf) -> String {
    let mut out = String::from("m,probability\n");
    for (m, x) in pmf.iter() {
        writeln!(out, "{m},{x}").unwrap();
    }
    out
}

pub fn pmf_json(pmf: &Pmf) -> Value {
    pmf.iter().map(|(m, x)| json!({"m": m, "probability": x})).collect()
}

pub fn moments_csv(values: &[f64]) -> String {
    let mut out = String::from("j,moment\n");
    for (j, x) in values.iter().enumerate() {
        writeln!(out, "{j},{x}").unwrap();
    }
    out
}

pub fn moments_json(values: &[f64]) -> Value {
    values
        .iter()
        .enumerate()
        .map(|(j, x)| json!({"j": j, "moment": x}))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip_formatting() {
        let pmf = Pmf::new(vec![0.125, 0.875], 3, 0.0).unwrap();
        assert_eq!(pmf_csv(&pmf), "m,probability\n3,0.125\n4,0.875\n");
        assert_eq!(moments_csv(&[1.0, 0.1 + 0.2]), "j,moment\n0,1\n1,0.30000000000000004\n");
    }
}
