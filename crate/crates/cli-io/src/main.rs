use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = cli_io::Cli::parse();
    match cli_io::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tcbp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
