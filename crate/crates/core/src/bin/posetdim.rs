use std::io;
use std::process::ExitCode;

use posetdim::cli::{run, Io, SEED_VAR};

fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        Io {
            stdin: &mut io::stdin().lock(),
            stdout: &mut io::stdout().lock(),
            stderr: &mut io::stderr().lock(),
            seed_var: std::env::var(SEED_VAR).ok(),
        },
    );
    ExitCode::from(code as u8)
}
