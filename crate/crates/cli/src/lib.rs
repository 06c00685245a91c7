//! Command-line front end: `simulate`, `project`, `prob`, `census` and
//! `report`. Every command that writes files puts them under `--out`
//! together with a `manifest.json` naming the resolved configuration.

use std::io::Write;

pub mod args;
pub mod commands;
pub mod manifest;
pub mod report;

pub use args::{Cli, Command};

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match &cli.command {
        Command::Simulate(args) => commands::simulate(args, out),
        Command::Project(args) => commands::project(args, out),
        Command::Prob(args) => commands::prob(args, out),
        Command::Census(args) => commands::census(args, out),
        Command::Report(args) => report::report(args, out),
    }
}
