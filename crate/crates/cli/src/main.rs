use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let env_format = std::env::var(puiseux_cli::FORMAT_ENV).ok();
    let code = puiseux_cli::run(
        &args,
        env_format.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
