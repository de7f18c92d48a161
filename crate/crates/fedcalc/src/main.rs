use clap::Parser;

fn main() {
    let args = fedcalc::cli::Args::parse();
    std::process::exit(fedcalc::cli::main_with(args));
}
