use std::process::ExitCode;

use clap::Parser;
use dhcube::args::Cli;

fn main() -> ExitCode {
    dhcube::main_with(&Cli::parse())
}
