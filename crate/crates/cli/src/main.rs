use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tandem_walks_cli::run(std::env::args_os()))
}
