use std::io::Read;
use std::path::Path;

use krun::scanner::{count_indicator, count_runs, first_completion_trial};
use krun::BitSequence;
use serde_json::json;

use crate::args::{ScanArgs, ScanBackend};
use crate::error::CliError;
use crate::output::{envelope, spec_json};
use crate::settings::Settings;

fn read_input(input: &str) -> Result<String, CliError> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
        return Ok(text);
    }
    let path = Path::new(input);
    if !input.is_empty() && path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {input}: {e}")));
    }
    Ok(input.to_string())
}

/// Always JSON: the count plus, with `--r`, the trials completing the first
/// `r` occurrences (fewer if the sequence has fewer).
pub fn scan(settings: &Settings, args: &ScanArgs) -> Result<String, CliError> {
    let spec = settings.spec(&args.spec)?;
    let backend = settings.get_enum(args.backend, "backend")?.unwrap_or(ScanBackend::Runs);
    let seq: BitSequence = read_input(&args.input)?
        .parse()
        .map_err(|e| CliError::usage(format!("malformed input: {e}")))?;
    let (count, name) = match backend {
        ScanBackend::Runs => (count_runs(&seq, &spec), "runs"),
        ScanBackend::Indicator => (count_indicator(&seq, &spec), "indicator"),
    };
    let occurrences = settings.get(args.r, "r")?;
    let mut values = json!({"length": seq.len(), "count": count});
    if let Some(r) = occurrences {
        let completions: Vec<usize> = (1..=r)
            .map_while(|k| first_completion_trial(&seq, &spec, k))
            .collect();
        values["completions"] = json!(completions);
    }
    Ok(envelope(spec_json(&spec), json!({"r": occurrences}), name, values, None::<f64>))
}
