use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out, err) = aggsolve::cli::run(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code)
}
