use clap::Parser;

use explab::cli::{dispatch, RunConfig};

fn main() {
    let config = RunConfig::parse();
    if let Err(e) = dispatch(&config) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
