use clap::Parser;
use salvetti_cli::config::{Cli, RunConfig};
use salvetti_cli::{run, EXIT_INPUT};

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    let code = match RunConfig::from_cli(cli) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    };
    std::process::exit(code);
}
