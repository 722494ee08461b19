use std::io::Write;
use std::process::ExitCode;

use acsusy_cli::error::{exit, CliError};
use acsusy_cli::{parse_from, run, Destination};

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    if let CliError::Core(acsusy_core::error::Error::UnbrokenSusyViolation { report }) = e {
        eprintln!("{report}");
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::VALIDATION as u8 } else { 0 });
        }
    };
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    match output.destination {
        Destination::Stdout(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(exit::IO as u8);
            }
        }
        Destination::File(path) => eprintln!("wrote {}", path.display()),
    }
    match output.deferred {
        Some(e) => fail(&e),
        None => ExitCode::SUCCESS,
    }
}
