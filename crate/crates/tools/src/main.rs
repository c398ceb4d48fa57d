use std::process::ExitCode;

fn main() -> ExitCode {
    qpmet_tools::cli::run()
}
