use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use polyprod::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    let command = args.command.name();
    match cli::run(&args) {
        Ok(outcome) => {
            let rendered = cli::emit(outcome, args.format);
            match &args.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("failed to write {}: {e}", path.display());
                        return ExitCode::FAILURE;
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(rendered.as_bytes()).is_err() {
                        return ExitCode::FAILURE;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprint!("{}", cli::error_payload(command, &err));
            ExitCode::FAILURE
        }
    }
}
