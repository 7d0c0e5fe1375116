use std::process::ExitCode;

fn main() -> ExitCode {
    condense_cli::main_with_args()
}
