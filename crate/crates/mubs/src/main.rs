use clap::Parser;

fn main() {
    let cli = mubs::cli::Cli::parse();
    std::process::exit(mubs::cli::run(cli));
}
