//! Command-line front end for the cycle verification library.

mod corpus;
mod report;
mod run;

use clap::Parser;

#[derive(Parser)]
#[command(
    name = "cyclespec",
    version,
    about = "Verify cycle-spectrum claims about cubic planar graphs and their line graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: run::Command,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run::dispatch(cli.command));
}
