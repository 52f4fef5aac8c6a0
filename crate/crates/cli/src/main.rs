use std::process::ExitCode;

use clap::Parser;
use rindex_cli::{cmd_build, report, run_align, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    report(match &cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Align(args) => run_align(args),
    })
}
