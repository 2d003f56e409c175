use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use wfrob::cli::{run, Cli, Outcome, EXIT_INVALID};

fn configure_threads() {
    let Ok(v) = std::env::var("WFROB_THREADS") else { return };
    let n: usize = v.trim().parse().unwrap_or(0);
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let out_path = match &cli.command {
        wfrob::cli::Command::Build(c) | wfrob::cli::Command::Verify(c) | wfrob::cli::Command::LgCheck(c) => c.out.clone(),
        wfrob::cli::Command::Example { common, .. } => common.out.clone(),
    };
    let outcome = match cli.into_config() {
        Ok(cfg) => run(&cfg),
        Err(msg) => Outcome { code: EXIT_INVALID, output: String::new(), message: Some(msg) },
    };
    if let Some(m) = &outcome.message {
        eprintln!("{}", m.trim_end());
    }
    if !outcome.output.is_empty() {
        match out_path {
            Some(p) => {
                if let Err(e) = std::fs::write(&p, &outcome.output) {
                    eprintln!("cannot write {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            }
            None => {
                let _ = std::io::stdout().write_all(outcome.output.as_bytes());
            }
        }
    }
    ExitCode::from(outcome.code as u8)
}
