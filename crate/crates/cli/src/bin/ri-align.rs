use std::process::ExitCode;

use clap::Parser;
use rindex_cli::{report, run_align, AlignCli};

fn main() -> ExitCode {
    report(run_align(&AlignCli::parse().args))
}
