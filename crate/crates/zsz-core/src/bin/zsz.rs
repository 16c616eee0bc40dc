use std::process::ExitCode;

fn main() -> ExitCode {
    zsz_core::cli::run()
}
