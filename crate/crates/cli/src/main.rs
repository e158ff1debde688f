use std::process::ExitCode;

use bdmp_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    if let Some(seed) = cli.draw_seed() {
        eprintln!("seed {seed}");
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
