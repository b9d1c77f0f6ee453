use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qwitt_cli::run(std::env::args()) as u8)
}
