mod args;
mod commands;
mod render;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Report};

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Analyze { poly } => commands::analyze(poly, cli.seed),
        Command::Group { poly } => commands::group(poly),
        Command::Curve { spec, p } => commands::curve(spec, p),
        Command::Eliminate { poly, var } => commands::eliminate(poly, var),
        Command::Bound { poly, s, empirical, samples } => commands::bound(poly, s, *empirical, *samples, cli.seed),
        Command::Solve(a) => commands::solve(a, cli.tol),
        Command::Profile(a) => commands::profile(a),
        Command::Identity { r, u0 } => commands::identity(*r, *u0, cli.tol),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = render::render(report, cli.format);
    let write_err = |e: std::io::Error| CliError::Input(format!("cannot write output: {e}"));
    match (&cli.out, &report.attachment) {
        (Some(path), Some(extra)) => {
            fs::write(path, extra).map_err(write_err)?;
            std::io::stdout().write_all(body.as_bytes()).map_err(write_err)
        }
        (Some(path), None) => fs::write(path, body).map_err(write_err),
        (None, _) => std::io::stdout().write_all(body.as_bytes()).map_err(write_err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        emit(&cli, &report)?;
        report.failure.map_or(Ok(()), Err)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
