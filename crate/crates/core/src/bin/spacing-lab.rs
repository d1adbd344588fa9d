use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = spacing_lab::cli::execute(std::env::args_os());
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    if !outcome.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = writeln!(out, "{}", outcome.stdout);
    }
    ExitCode::from(outcome.code as u8)
}
