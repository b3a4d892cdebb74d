use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wallindex_cli::{execute, load_config, output_dir, presets, report, write_outputs, RunOptions, RunReport, Suite};

#[derive(Parser)]
#[command(name = "wallindex", version, about = "Domain-wall index and relative spectral asymmetry checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a configuration file (or `preset:NAME`).
    Run {
        config: String,
        /// Suites to run instead of the configured ones (comma-separated or repeated).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Output directory; overrides the configuration.
        #[arg(long, env = "WALLINDEX_OUT")]
        out_dir: Option<PathBuf>,
        /// Worker threads; 1 runs everything sequentially.
        #[arg(long)]
        parallelism: Option<usize>,
        /// Multiply every tolerance by this factor.
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
    /// Print the summary table of a report.json.
    Report { report: PathBuf },
    /// List the built-in presets, or print one.
    Presets { name: Option<String> },
}

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, suite, out_dir, parallelism, tolerance_scale } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => return config_error(e),
            };
            let dir = output_dir(out_dir.as_deref(), &cfg);
            let opts = RunOptions { suites: (!suite.is_empty()).then_some(suite), parallelism, tolerance_scale };
            let outcome = match execute(cfg, &opts) {
                Ok(o) => o,
                Err(e) => return config_error(e),
            };
            if let Err(e) = write_outputs(&outcome, &dir) {
                return config_error(e);
            }
            print!("{}", report::render(&outcome.report));
            for t in &outcome.timings {
                eprintln!("{:<14} {:>9.3} s", t.suite.name(), t.seconds);
            }
            eprintln!("wrote {}", dir.display());
            ExitCode::from(outcome.exit_code() as u8)
        }
        Command::Report { report: path } => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return config_error(format!("cannot read {}: {e}", path.display())),
            };
            match RunReport::from_json(&text) {
                Ok(r) => {
                    print!("{}", report::render(&r));
                    ExitCode::SUCCESS
                }
                Err(e) => config_error(format!("{}: {e}", path.display())),
            }
        }
        Command::Presets { name: None } => {
            for p in presets::PRESETS {
                println!("{:<16} {}", p.name, p.description());
            }
            ExitCode::SUCCESS
        }
        Command::Presets { name: Some(n) } => match presets::get(&n) {
            Some(p) => {
                print!("{}", p.text);
                ExitCode::SUCCESS
            }
            None => config_error(format!("unknown preset `{n}`")),
        },
    }
}
