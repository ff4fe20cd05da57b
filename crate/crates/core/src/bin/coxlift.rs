use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = coxlift::cli::run(std::env::args_os().skip(1));
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.status as u8)
}
