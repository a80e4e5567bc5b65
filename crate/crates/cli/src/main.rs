use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(f1bmf::main_with_args(std::env::args_os()))
}
