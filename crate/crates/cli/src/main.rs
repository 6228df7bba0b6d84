use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(virtual_k_cli::run(std::env::args_os()))
}
