use clap::Parser;

fn main() {
    let cli = minrank_cli::args::Cli::parse();
    std::process::exit(minrank_cli::main_with(cli));
}
