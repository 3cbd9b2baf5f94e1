use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use courantlab_cli::{configure_threads, run, Cli, EXIT_PASS, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let outcome = run(&cli);
    if let (Some(path), Some(rep)) = (&cli.out, &outcome.report) {
        if let Err(e) = std::fs::write(path, rep.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let text = match (&outcome.report, cli.json) {
        (Some(rep), true) => rep.to_json(),
        _ => outcome.text.clone(),
    };
    if outcome.exit_code == EXIT_USAGE && outcome.report.is_none() {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(outcome.exit_code as u8)
}
