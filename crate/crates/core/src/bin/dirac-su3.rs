use std::process::ExitCode;

fn main() -> ExitCode {
    dirac_su3::cli::run(std::env::args_os())
}
