use std::process::ExitCode;

fn main() -> ExitCode {
    forelli::cli::run(std::env::args_os())
}
