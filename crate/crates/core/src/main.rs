use std::process::ExitCode;

fn main() -> ExitCode {
    relbell::cli::run()
}
