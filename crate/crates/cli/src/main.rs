mod config;
mod experiment;
mod run;

use clap::error::ErrorKind;
use clap::Parser;

use config::Cli;

fn threads_from_env() -> Result<(), run::Failure> {
    let Ok(v) = std::env::var("VORONOI_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| run::Failure::Usage(format!("VORONOI_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| run::Failure::Run(e.to_string()))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(f) = threads_from_env().and_then(|_| run::dispatch(&cli.command)) {
        eprintln!("{f}");
        std::process::exit(f.exit_code());
    }
}
