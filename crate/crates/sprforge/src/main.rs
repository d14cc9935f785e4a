use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(sprforge::cli::run() as u8)
}
