use clap::Parser;

fn main() {
    let cli = grayscope_cli::Cli::parse();
    let outcome = grayscope_cli::run(&cli);
    print!("{}", outcome.out);
    std::process::exit(outcome.code);
}
