use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(vdm_amalgam::cli::run(std::env::args()) as u8)
}
