use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use higgsdt::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = higgsdt::configure_threads() {
        eprintln!("higgsdt: {e:#}");
        return ExitCode::from(2);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match higgsdt::run(cli, &mut out) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("higgsdt: {e:#}");
            higgsdt::exit_code(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
