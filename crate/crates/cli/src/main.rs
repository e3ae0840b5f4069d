use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = sqfree_cli::run(std::env::args());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(outcome.exit_code as u8)
}
