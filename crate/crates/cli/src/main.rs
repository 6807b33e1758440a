use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use darboux_cli::{run_scenario, RunOptions};

#[derive(Parser)]
#[command(name = "darboux", version, about = "Darboux/Calapso transform limit studies at poles of a polarization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its CSV, SVG and JSON artifacts.
    Run {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Override the number of sampled octaves t_k = p 2^-k.
        #[arg(long)]
        k_max: Option<u32>,
        /// Override the limit tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out_dir, k_max, tol, threads } => {
            let opts = RunOptions { out_dir, k_max, tol, threads };
            match run_scenario(&config, &opts) {
                Ok(summary) => {
                    for t in summary.report.tracks() {
                        println!("λ = {:<6} track {:>2} {:<8} {}", t.lambda, t.track_id, t.kind, t.verdict);
                    }
                    for p in &summary.written {
                        println!("wrote {}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
    }
}
