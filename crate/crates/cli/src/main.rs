use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = std::env::var(omlab_cli::CAPS_ENV).ok();
    let code = omlab_cli::run(std::env::args_os(), env.as_deref(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
