use clap::Parser;

fn main() {
    let cli = nlra::cli::Cli::parse();
    std::process::exit(nlra::cli::run(&cli));
}
