use clap::Parser;

fn main() {
    std::process::exit(ncorr::cli::run(ncorr::cli::Cli::parse()));
}
