//! Cross-backend equivalence over a grid of patterns and probabilities.

use std::fmt::Write;

use krun::count::{pmf_explicit, pmf_recursive};
use krun::oracle::{count_histogram, pmf_from_histogram, MAX_ORACLE_TRIALS};
use krun::waiting::{waiting_pgf, waiting_pmf_recursive, waiting_pmf_series};
use krun::{build_chain, Error, PatternSpec, Pmf, TrialParams};
use rayon::prelude::*;
use serde_json::json;

use crate::args::CheckArgs;
use crate::error::CliError;
use crate::output::envelope;
use crate::settings::Settings;

const DEFAULT_N: usize = 12;
const TOL: f64 = 1e-10;
const TOL_EXPLICIT_LONG: f64 = 1e-8;
const EXPLICIT_LONG_FROM: usize = 31;
const TOL_NORMALIZATION: f64 = 1e-12;

/// Largest discrepancy seen for one pair of backends, plus the first
/// offending cell.
#[derive(Debug, Clone)]
struct Tracker {
    name: &'static str,
    tolerance: &'static str,
    max: f64,
    violation: Option<String>,
}

impl Tracker {
    fn new(name: &'static str, tolerance: &'static str) -> Self {
        Tracker {
            name,
            tolerance,
            max: 0.0,
            violation: None,
        }
    }

    fn observe(&mut self, d: f64, tol: f64, cell: impl FnOnce() -> String) {
        // NaN poisons the maximum and always counts as a violation.
        if d.is_nan() || d > self.max {
            self.max = d;
        }
        if (d.is_nan() || d > tol) && self.violation.is_none() {
            self.violation = Some(format!("{} ({}): |diff| = {d:e}", cell(), self.name));
        }
    }

    fn merge(&mut self, other: &Tracker) {
        if !self.max.is_nan() && (other.max.is_nan() || other.max > self.max) {
            self.max = other.max;
        }
        if self.violation.is_none() {
            self.violation.clone_from(&other.violation);
        }
    }
}

fn entrywise<'a>(a: &'a Pmf, b: &'a Pmf, upto: usize) -> impl Iterator<Item = (usize, f64)> + 'a {
    (0..=upto).map(move |m| (m, (a.prob(m) - b.prob(m)).abs()))
}

fn grid(lmax: usize, offset: usize) -> Result<Vec<PatternSpec>, CliError> {
    let mut specs = Vec::new();
    for l1 in 1..=lmax {
        for l2 in 1..=lmax {
            for d1 in 0..=offset {
                specs.push(PatternSpec::t1(l1, l1 + d1, l2)?);
                specs.push(PatternSpec::t2(l1, l2, l2 + d1)?);
                for d2 in 0..=offset {
                    specs.push(PatternSpec::t3(l1, l1 + d1, l2, l2 + d2)?);
                }
            }
        }
    }
    Ok(specs)
}

struct Plan {
    n: usize,
    probs: Vec<TrialParams>,
    rmax: usize,
    mmax: usize,
    oracle: bool,
}

fn trackers(oracle: bool) -> Vec<Tracker> {
    let explicit_tol = "1e-10 (1e-8 beyond n = 30)";
    let mut t = Vec::new();
    if oracle {
        t.push(Tracker::new("count recursive vs oracle", "1e-10"));
    }
    t.push(Tracker::new(
        if oracle { "count explicit vs oracle" } else { "count explicit vs recursive" },
        explicit_tol,
    ));
    t.push(Tracker::new(
        if oracle { "count chain vs oracle" } else { "count chain vs recursive" },
        "1e-10",
    ));
    t.push(Tracker::new("waiting series vs recursive", "1e-10"));
    if oracle {
        t.push(Tracker::new("waiting oracle vs recursive", "1e-10"));
    }
    t.push(Tracker::new("waiting pgf at 1 vs 1", "1e-12"));
    t
}

fn check_spec(spec: &PatternSpec, plan: &Plan) -> Result<Vec<Tracker>, Error> {
    let mut t = trackers(plan.oracle);
    let hists = if plan.oracle {
        (0..=plan.n).map(|n| count_histogram(spec, n)).collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    for pr in &plan.probs {
        let p = pr.p();
        let chain = build_chain(spec, pr);
        let mut counts = Vec::with_capacity(plan.n + 1);
        for n in 0..=plan.n {
            let rec = pmf_recursive(spec, pr, n)?;
            let exp = pmf_explicit(spec, pr, n)?;
            let ch = chain.pmf(n, spec.max_count(n))?;
            let cap = spec.max_count(n);
            let cell = |m: usize| format!("{spec} p={p} n={n} m={m}");
            let explicit_tol = if n >= EXPLICIT_LONG_FROM { TOL_EXPLICIT_LONG } else { TOL };
            let mut i = 0;
            let reference = if plan.oracle {
                let oracle = pmf_from_histogram(&hists[n], pr)?;
                for (m, d) in entrywise(&rec, &oracle, cap) {
                    t[i].observe(d, TOL, || cell(m));
                }
                i += 1;
                oracle
            } else {
                rec.clone()
            };
            for (m, d) in entrywise(&exp, &reference, cap) {
                t[i].observe(d, explicit_tol, || cell(m));
            }
            for (m, d) in entrywise(&ch, &reference, cap) {
                t[i + 1].observe(d, TOL, || cell(m));
            }
            counts.push(reference);
        }
        if pr.is_degenerate() {
            continue;
        }
        // Tracker layout from `trackers`: the count pairs come first.
        let w = if plan.oracle { 3 } else { 2 };
        for r in 1..=plan.rmax {
            let rec = waiting_pmf_recursive(spec, pr, r, plan.mmax)?;
            let ser = waiting_pmf_series(spec, pr, r, plan.mmax)?;
            let cell = |m: usize| format!("{spec} p={p} r={r} m={m}");
            for (m, d) in entrywise(&ser, &rec, plan.mmax) {
                t[w].observe(d, TOL, || cell(m));
            }
            if plan.oracle {
                let at_least: Vec<f64> = counts
                    .iter()
                    .map(|pmf| pmf.iter().filter(|&(c, _)| c >= r).map(|(_, x)| x).sum())
                    .collect();
                for m in 1..=plan.n {
                    let d = (at_least[m] - at_least[m - 1] - rec.prob(m)).abs();
                    t[w + 1].observe(d, TOL, || cell(m));
                }
            }
            let one = waiting_pgf(spec, pr, r)?.eval(1.0);
            t.last_mut()
                .unwrap()
                .observe((one - 1.0).abs(), TOL_NORMALIZATION, || format!("{spec} p={p} r={r}"));
        }
    }
    Ok(t)
}

pub fn check(settings: &Settings, args: &CheckArgs, json_out: bool) -> Result<String, CliError> {
    let n = settings.get(args.n, "n")?.unwrap_or(DEFAULT_N);
    let oracle = !args.no_oracle;
    if oracle && n > MAX_ORACLE_TRIALS {
        return Err(Error::EnumerationBudget {
            requested: n,
            limit: MAX_ORACLE_TRIALS,
        }
        .into());
    }
    if args.lmax == 0 {
        return Err(CliError::usage("--lmax must be at least 1"));
    }
    let probs = args
        .p
        .iter()
        .map(|&p| TrialParams::new(p))
        .collect::<Result<Vec<_>, _>>()?;
    let plan = Plan {
        n,
        probs,
        rmax: args.rmax,
        mmax: args.mmax,
        oracle,
    };
    let specs = grid(args.lmax, args.offset)?;
    // Grid points run in parallel; results are merged in grid order.
    let per_spec = specs
        .par_iter()
        .map(|spec| check_spec(spec, &plan))
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = trackers(oracle);
    for result in &per_spec {
        for (acc, t) in total.iter_mut().zip(result) {
            acc.merge(t);
        }
    }
    let skipped: Vec<f64> = plan.probs.iter().filter(|p| p.is_degenerate()).map(|p| p.p()).collect();
    for p in &skipped {
        eprintln!("notice: waiting-time cells at p = {p} skipped (needs 0 < p < 1)");
    }
    let passed = total.iter().all(|t| t.violation.is_none());
    let report = if json_out {
        let pairs: Vec<_> = total
            .iter()
            .map(|t| {
                json!({
                    "pair": t.name,
                    "max_abs_diff": t.max,
                    "tolerance": t.tolerance,
                    "violation": t.violation,
                })
            })
            .collect();
        envelope(
            serde_json::Value::Null,
            json!({
                "patterns": specs.len(), "n": n, "p": args.p, "rmax": args.rmax,
                "mmax": args.mmax, "oracle": oracle,
            }),
            "all",
            json!({"pairs": pairs, "skipped_waiting_p": skipped, "passed": passed}),
            None::<f64>,
        )
    } else {
        let mut out = String::new();
        writeln!(
            out,
            "grid: {} patterns, p in {:?}, n <= {n}, r <= {}, m <= {}, oracle {}",
            specs.len(),
            args.p,
            args.rmax,
            args.mmax,
            if oracle { "on" } else { "off" }
        )
        .unwrap();
        for t in &total {
            writeln!(out, "{}: max |diff| = {:.3e} (tol {})", t.name, t.max, t.tolerance).unwrap();
        }
        for t in total.iter().filter_map(|t| t.violation.as_ref()) {
            writeln!(out, "violation: {t}").unwrap();
        }
        writeln!(out, "{}", if passed { "check passed" } else { "check FAILED" }).unwrap();
        out
    };
    if passed {
        Ok(report)
    } else {
        print!("{report}");
        Err(CliError::check_failed("tolerance violated"))
    }
}
