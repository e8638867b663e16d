use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stdin = io::stdin();
    let code = lcagroups::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stdin.lock());
    ExitCode::from(code as u8)
}
