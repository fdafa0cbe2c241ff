use clap::Parser;
use mcred_cli::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(mcred_cli::execute(&cli));
}
