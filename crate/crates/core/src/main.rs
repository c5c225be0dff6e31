use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(swave::cli::run(std::env::args_os()))
}
