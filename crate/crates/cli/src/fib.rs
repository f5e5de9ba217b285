use krun::count::moments_recursive;
use krun::fibwords::{fib_pattern_count, fib_word};
use krun::{PatternSpec, TrialParams};
use serde_json::json;

use crate::args::FibArgs;
use crate::error::CliError;
use crate::output::{envelope, spec_json};
use crate::settings::Settings;

/// Longest sequence for which the model mean is also reported.
const MODEL_MEAN_LIMIT: usize = 1_000_000;

/// Word counts next to the model mean for an i.i.d. sequence of equal length.
/// No convergence between the two is asserted.
pub fn fib(settings: &Settings, args: &FibArgs) -> Result<String, CliError> {
    let n = settings.require(args.n, "n")?;
    let specs = if settings.has_spec(&args.spec) {
        vec![settings.spec(&args.spec)?]
    } else {
        vec![PatternSpec::t3(1, 1, 1, 2)?, PatternSpec::t3(1, 2, 1, 1)?]
    };
    let params = settings.get(args.p, "p")?.map(TrialParams::new).transpose()?;
    let word = fib_word(n)?.word;
    let len = word.len();
    if params.is_some() && len > MODEL_MEAN_LIMIT {
        eprintln!("note: model mean omitted for words longer than {MODEL_MEAN_LIMIT}");
    }
    let mut counts = Vec::new();
    for spec in &specs {
        let mut entry = json!({"spec": spec_json(spec), "count": fib_pattern_count(n, spec)?});
        if let Some(pr) = params.filter(|_| len <= MODEL_MEAN_LIMIT) {
            entry["model_mean"] = json!(moments_recursive(spec, &pr, len, 1).mean());
        }
        counts.push(entry);
    }
    let mut values = json!({"index": n, "length": len, "counts": counts});
    if args.word {
        values["word"] = json!(word.to_string());
    }
    let spec_field = json!(specs.iter().map(spec_json).collect::<Vec<_>>());
    Ok(envelope(
        spec_field,
        json!({"n": n, "p": params.map(|p| p.p())}),
        "runs",
        values,
        None::<f64>,
    ))
}
