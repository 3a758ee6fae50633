use std::process::ExitCode;

fn main() -> ExitCode {
    myofibril::cli::main_with_args(std::env::args_os())
}
