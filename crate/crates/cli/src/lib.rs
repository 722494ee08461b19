//! Command-line front end: every subcommand produces a [`report::Report`] that is
//! written as CSV with a `#` manifest header or as JSON.

// `!(x > y)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod report;

use std::path::PathBuf;

use clap::{CommandFactory, FromArgMatches};

use args::{Cli, Command, OutputArgs};
use commands::Outcome;
use error::{CliError, CliResult};
use report::{write_file, Column};

/// Where a rendered report went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout(String),
    File(PathBuf),
}

fn columns_help(columns: &[Column]) -> String {
    let mut s = String::from("CSV columns:\n");
    for c in columns {
        s.push_str(&format!("  {:<14} {}\n", c.name, c.description));
    }
    s
}

/// The clap command with the CSV columns of each subcommand appended to its help.
pub fn command() -> clap::Command {
    let verify = commands::spectrum_columns(true);
    let figure1 = format!(
        "{}  (one density_b<b> column per requested b)",
        columns_help(&commands::figure1_columns(&[]))
    );
    Cli::command()
        .mut_subcommand("ground-state", |c| {
            c.after_help(columns_help(&commands::ground_state_columns()))
        })
        .mut_subcommand("figure1", |c| c.after_help(figure1))
        .mut_subcommand("figure2", |c| c.after_help(columns_help(&commands::figure2_columns())))
        .mut_subcommand("spectrum", |c| {
            c.after_help(format!("{}  (the last five only with --verify)", columns_help(&verify)))
        })
        .mut_subcommand("check", |c| c.after_help(columns_help(&commands::quantity_columns())))
        .mut_subcommand("lambda-min", |c| {
            c.after_help(columns_help(&commands::quantity_columns()))
        })
        .mut_subcommand("oracle", |c| {
            let mut h = columns_help(&commands::oracle_columns(false));
            h.push_str("With --inner-mass:\n");
            h.push_str(&columns_help(&commands::oracle_columns(true))["CSV columns:\n".len()..]);
            c.after_help(h)
        })
}

pub fn parse_from<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let matches = command().try_get_matches_from(args)?;
    Cli::from_arg_matches(&matches)
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::GroundState(a) => commands::ground_state(a),
        Command::Figure1(a) => commands::figure1(a),
        Command::Figure2(a) => commands::figure2(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Check(a) => commands::check(a),
        Command::LambdaMin(a) => commands::lambda_min(a),
        Command::Oracle(a) => commands::oracle(a),
    }
}

fn output_args(cli: &Cli) -> &OutputArgs {
    match &cli.command {
        Command::GroundState(a) => &a.output,
        Command::Figure1(a) => &a.output,
        Command::Figure2(a) => &a.output,
        Command::Spectrum(a) => &a.output,
        Command::Check(a) => &a.output,
        Command::LambdaMin(a) => &a.output,
        Command::Oracle(a) => &a.output,
    }
}

/// A written report plus any error that is reported only after the output exists.
#[derive(Debug)]
pub struct RunOutput {
    pub destination: Destination,
    pub deferred: Option<CliError>,
}

/// Runs the command and renders its report; files are written here, stdout text is left to the caller.
pub fn run(cli: &Cli) -> CliResult<RunOutput> {
    let outcome = execute(cli)?;
    let out = output_args(cli);
    let text = outcome.report.render(out.format)?;
    let target = out.out.clone().or_else(|| {
        out.output_dir.as_ref().map(|d| {
            d.join(format!(
                "{}.{}",
                outcome.report.manifest.command,
                out.format.extension()
            ))
        })
    });
    let destination = match target {
        Some(path) => {
            write_file(&path, &text)?;
            Destination::File(path)
        }
        None => Destination::Stdout(text),
    };
    Ok(RunOutput {
        destination,
        deferred: outcome.deferred,
    })
}
