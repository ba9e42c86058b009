use std::io::Write;
use std::process::ExitCode;

use abeltrace_cli::{execute, SEED_ENV};

fn main() -> ExitCode {
    let env_seed = std::env::var(SEED_ENV).ok();
    let (code, doc, output) = execute(std::env::args_os(), env_seed.as_deref());
    let written = match output {
        Some(path) => std::fs::write(&path, format!("{doc}\n")),
        None => writeln!(std::io::stdout().lock(), "{doc}"),
    };
    if let Err(e) = written {
        eprintln!("abeltrace: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
