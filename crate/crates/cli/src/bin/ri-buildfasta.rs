use std::process::ExitCode;

use clap::Parser;
use rindex_cli::{cmd_build, report, BuildCli};

fn main() -> ExitCode {
    report(cmd_build(&BuildCli::parse().args))
}
