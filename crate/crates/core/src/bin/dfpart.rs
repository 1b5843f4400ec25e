use clap::Parser;

use dataflow_partition::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
