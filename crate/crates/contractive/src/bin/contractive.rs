use clap::Parser;

use contractive::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
