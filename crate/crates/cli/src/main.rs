use clap::Parser;

fn main() {
    let cli = legdet_cli::Cli::parse();
    std::process::exit(legdet_cli::run(&cli));
}
