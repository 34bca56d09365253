use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use defeasance::cli::{run, Cli};

fn main() -> ExitCode {
    let out = run(Cli::parse());
    let mut stream: Box<dyn Write> =
        if out.code == 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = stream.write_all(out.text.as_bytes());
    ExitCode::from(out.code as u8)
}
