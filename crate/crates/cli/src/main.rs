mod args;
mod check;
mod dist;
mod error;
mod fib;
mod output;
mod scan;
mod settings;
mod table;

use std::process::ExitCode;

use clap::Parser;
use krun::build_chain;
use serde_json::json;

use args::{ChainArgs, Cli, Command};
use error::CliError;
use output::{envelope, spec_json};
use settings::Settings;

fn chain(settings: &Settings, args: &ChainArgs, json_out: bool) -> Result<String, CliError> {
    let spec = settings.spec(&args.spec)?;
    let params = settings.params(args.p)?;
    let chain = build_chain(&spec, &params);
    if !json_out {
        return Ok(chain.to_csv());
    }
    let rows = |m: &krun::chain::Matrix| -> Vec<Vec<f64>> { (0..m.dim()).map(|i| m.row(i).to_vec()).collect() };
    let values = json!({
        "dim": chain.dim(),
        "kappa0": chain.kappa0(),
        "A": rows(chain.a()),
        "B": rows(chain.b()),
    });
    Ok(envelope(spec_json(&spec), json!({"p": params.p()}), "chain", values, None::<f64>))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let settings = Settings::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Scan(a) => scan::scan(&settings, a),
        Command::Pmf(a) => dist::pmf(&settings, a, cli.json),
        Command::Moments(a) => dist::moments(&settings, a, cli.json),
        Command::Waiting(a) => dist::waiting(&settings, a, cli.json),
        Command::Table(a) => table::table(a.which, cli.json),
        Command::Check(a) => check::check(&settings, a, cli.json),
        Command::Fib(a) => fib::fib(&settings, a),
        Command::Chain(a) => chain(&settings, a, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
