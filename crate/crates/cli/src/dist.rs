//! `pmf`, `moments` and `waiting`.

use krun::count::{moments_recursive, pmf_explicit, pmf_recursive};
use krun::oracle::{oracle_count_pmf, oracle_moment, oracle_waiting_pmf};
use krun::waiting::{waiting_moments, waiting_pmf_auto, waiting_pmf_recursive, waiting_pmf_series};
use krun::{build_chain, PatternSpec, Pmf, TrialParams};
use serde_json::json;

use crate::args::{Backend, DistArgs};
use crate::error::CliError;
use crate::output::{envelope, moments_csv, moments_json, pmf_csv, pmf_json, spec_json};
use crate::settings::Settings;

const DEFAULT_JMAX: usize = 2;

struct Resolved {
    spec: PatternSpec,
    params: TrialParams,
    backend: Backend,
}

fn resolve(settings: &Settings, args: &DistArgs) -> Result<Resolved, CliError> {
    Ok(Resolved {
        spec: settings.spec(&args.spec)?,
        params: settings.params(args.p)?,
        backend: settings.get_enum(args.backend, "backend")?.unwrap_or(Backend::Recursive),
    })
}

fn reject_flag<T>(flag: &Option<T>, name: &str, command: &str) -> Result<(), CliError> {
    match flag {
        Some(_) => Err(CliError::usage(format!("--{name} does not apply to {command}"))),
        None => Ok(()),
    }
}

fn unsupported(backend: Backend, what: &str) -> CliError {
    CliError::usage(format!("backend '{}' does not compute {what}", backend.name()))
}

fn count_pmf(r: &Resolved, n: usize) -> Result<Pmf, CliError> {
    let pmf = match r.backend {
        Backend::Recursive => pmf_recursive(&r.spec, &r.params, n)?,
        Backend::Explicit => pmf_explicit(&r.spec, &r.params, n)?,
        Backend::Chain => build_chain(&r.spec, &r.params).pmf(n, r.spec.max_count(n))?,
        Backend::Oracle => oracle_count_pmf(&r.spec, &r.params, n)?,
        Backend::Series => return Err(unsupported(r.backend, "count distributions")),
    };
    Ok(pmf)
}

/// Waiting-time PMF and the horizon actually used.
fn waiting_pmf(r: &Resolved, occurrence: usize, mmax: Option<usize>) -> Result<(Pmf, usize), CliError> {
    let mmax = match mmax {
        Some(m) => m,
        None => {
            let (pmf, capped) = waiting_pmf_auto(&r.spec, &r.params, occurrence)?;
            if capped {
                eprintln!(
                    "warning: truncated at the cap m = {} with tail mass {:e}",
                    pmf.last().unwrap_or(0),
                    pmf.tail_mass()
                );
            }
            let last = pmf.last().unwrap_or(0);
            if r.backend == Backend::Recursive {
                return Ok((pmf, last));
            }
            last
        }
    };
    let pmf = match r.backend {
        Backend::Recursive => waiting_pmf_recursive(&r.spec, &r.params, occurrence, mmax)?,
        Backend::Series => waiting_pmf_series(&r.spec, &r.params, occurrence, mmax)?,
        Backend::Chain => build_chain(&r.spec, &r.params).waiting_pmf(&r.params, occurrence, mmax)?,
        Backend::Oracle => oracle_waiting_pmf(&r.spec, &r.params, occurrence, mmax)?,
        Backend::Explicit => return Err(unsupported(r.backend, "waiting times")),
    };
    Ok((pmf, mmax))
}

pub fn pmf(settings: &Settings, args: &DistArgs, json: bool) -> Result<String, CliError> {
    reject_flag(&args.r, "r", "pmf")?;
    reject_flag(&args.mmax, "mmax", "pmf")?;
    reject_flag(&args.jmax, "jmax", "pmf")?;
    let r = resolve(settings, args)?;
    let n = settings.require(args.n, "n")?;
    let pmf = count_pmf(&r, n)?;
    Ok(if json {
        envelope(
            spec_json(&r.spec),
            json!({"p": r.params.p(), "n": n}),
            r.backend.name(),
            pmf_json(&pmf),
            Some(pmf.tail_mass()),
        )
    } else {
        pmf_csv(&pmf)
    })
}

pub fn waiting(settings: &Settings, args: &DistArgs, json: bool) -> Result<String, CliError> {
    reject_flag(&args.n, "n", "waiting")?;
    reject_flag(&args.jmax, "jmax", "waiting")?;
    let r = resolve(settings, args)?;
    let occurrence = settings.require(args.r, "r")?;
    let (pmf, mmax) = waiting_pmf(&r, occurrence, settings.get(args.mmax, "mmax")?)?;
    Ok(if json {
        envelope(
            spec_json(&r.spec),
            json!({"p": r.params.p(), "r": occurrence, "mmax": mmax}),
            r.backend.name(),
            pmf_json(&pmf),
            Some(pmf.tail_mass()),
        )
    } else {
        eprintln!("tail_mass,{}", pmf.tail_mass());
        pmf_csv(&pmf)
    })
}

pub fn moments(settings: &Settings, args: &DistArgs, json: bool) -> Result<String, CliError> {
    let r = resolve(settings, args)?;
    let jmax = settings.get(args.jmax, "jmax")?.unwrap_or(DEFAULT_JMAX);
    // A flag for either target overrides both config entries.
    let (n, occurrence) = if args.n.is_some() || args.r.is_some() {
        (args.n, args.r)
    } else {
        (settings.get(None, "n")?, settings.get(None, "r")?)
    };
    let (values, tail, params) = match (n, occurrence) {
        (Some(n), None) => {
            reject_flag(&args.mmax, "mmax", "count moments")?;
            let values = if r.backend == Backend::Recursive {
                moments_recursive(&r.spec, &r.params, n, jmax).values().to_vec()
            } else {
                let pmf = count_pmf(&r, n)?;
                (0..=jmax).map(|j| oracle_moment(&pmf, j).value).collect()
            };
            (values, None, json!({"p": r.params.p(), "n": n, "jmax": jmax}))
        }
        (None, Some(occ)) => {
            if r.backend == Backend::Recursive {
                reject_flag(&args.mmax, "mmax", "recursive waiting-time moments")?;
                let values = waiting_moments(&r.spec, &r.params, occ, jmax)?.values().to_vec();
                (values, None, json!({"p": r.params.p(), "r": occ, "jmax": jmax}))
            } else {
                let (pmf, mmax) = waiting_pmf(&r, occ, settings.get(args.mmax, "mmax")?)?;
                let values = (0..=jmax).map(|j| oracle_moment(&pmf, j).value).collect();
                let params = json!({"p": r.params.p(), "r": occ, "mmax": mmax, "jmax": jmax});
                (values, Some(pmf.tail_mass()), params)
            }
        }
        _ => return Err(CliError::usage("moments needs exactly one of --n and --r")),
    };
    Ok(if json {
        envelope(spec_json(&r.spec), params, r.backend.name(), moments_json(&values), tail)
    } else {
        if let Some(t) = tail {
            eprintln!("tail_mass,{t}");
        }
        moments_csv(&values)
    })
}
