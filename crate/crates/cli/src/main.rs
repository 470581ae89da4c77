use std::io::Write;
use std::process::ExitCode;

use staircase_cli::{run_args, Env};

fn main() -> ExitCode {
    let out = run_args(std::env::args_os(), &Env::from_process());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(u8::try_from(out.exit).unwrap_or(1))
}
