//! Experiment driver: reads a TOML configuration, runs the selected
//! verification suites on the wall configuration it describes and writes
//! `report.json`, `spectra.csv` and `sweep.csv`.

pub mod config;
pub mod presets;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

pub use config::{ConfigError, ExperimentConfig, Suite, Tolerances};
pub use report::{Check, RunReport, SuiteReport};

/// Output directory used when neither the flag, the environment nor the config names one.
pub const DEFAULT_OUT_DIR: &str = "wallindex-out";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Command-line overrides of a configuration.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub suites: Option<Vec<Suite>>,
    /// Worker threads for running suites; `1` also makes every kernel sequential.
    pub parallelism: Option<usize>,
    pub tolerance_scale: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { suites: None, parallelism: None, tolerance_scale: 1.0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub suite: Suite,
    pub seconds: f64,
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub spectra: Vec<(f64, f64)>,
    pub sweep: Vec<(f64, f64)>,
    /// Wall-clock time per suite; kept out of `report.json` so reports stay reproducible.
    pub timings: Vec<Timing>,
}

impl RunOutcome {
    /// 0 when every suite passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.report.pass {
            0
        } else {
            1
        }
    }
}

fn map_suites<F, T>(suites: &[Suite], parallelism: Option<usize>, f: F) -> Vec<T>
where
    F: Fn(Suite) -> T + Sync + Send,
    T: Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = parallelism {
            builder = builder.num_threads(n);
        }
        if let Ok(pool) = builder.build() {
            return pool.install(|| suites.par_iter().map(|&s| f(s)).collect());
        }
    }
    let _ = parallelism;
    suites.iter().map(|&s| f(s)).collect()
}

/// Run the configured suites. Only configuration problems are errors;
/// numerical failures end up in the report.
pub fn execute(mut cfg: ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    if !(opts.tolerance_scale > 0.0 && opts.tolerance_scale.is_finite()) {
        return Err(ConfigError::Invalid(format!("tolerance scale must be positive, got {}", opts.tolerance_scale)).into());
    }
    if opts.parallelism == Some(0) {
        return Err(ConfigError::Invalid("parallelism must be at least 1".into()).into());
    }
    if let Some(s) = &opts.suites {
        cfg.suites = s.clone();
    }
    cfg.validate()?;
    if opts.parallelism == Some(1) {
        wallindex_core::exec::set_sequential(true);
    }
    let wall = cfg.wall_data()?;
    let tol = cfg.tolerances.scaled(opts.tolerance_scale);
    let suites = config::normalize_suites(&cfg.suites);

    let results = map_suites(&suites, opts.parallelism, |s| {
        let start = Instant::now();
        let (report, data) = suites::run_suite(s, &cfg, &wall, &tol);
        (report, data, Timing { suite: s, seconds: start.elapsed().as_secs_f64() })
    });

    let mut spectra = Vec::new();
    let mut sweep = Vec::new();
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for (r, d, t) in results {
        spectra.extend(d.spectra);
        sweep.extend(d.sweep);
        reports.push(r);
        timings.push(t);
    }
    let report = RunReport::new(cfg, opts.tolerance_scale, reports);
    Ok(RunOutcome { report, spectra, sweep, timings })
}

/// Output directory: explicit flag (or `WALLINDEX_OUT`), then the config, then the default.
pub fn output_dir(flag: Option<&Path>, cfg: &ExperimentConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| cfg.output_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

fn write_csv(path: &Path, header: [&str; 2], rows: &[(f64, f64)]) -> Result<(), CliError> {
    let err = |e: csv::Error| CliError::Output { path: path.display().to_string(), source: e.into() };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.serialize(row).map_err(err)?;
    }
    w.flush().map_err(|e| CliError::Output { path: path.display().to_string(), source: e })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Output { path: path.display().to_string(), source })
}

/// Write `report.json`, `spectra.csv`, `sweep.csv` and `timings.json` into `dir`.
pub fn write_outputs(outcome: &RunOutcome, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Output { path: dir.display().to_string(), source })?;
    write_file(&dir.join("report.json"), &outcome.report.to_json())?;
    write_csv(&dir.join("spectra.csv"), ["eigenvalue", "chirality"], &outcome.spectra)?;
    write_csv(&dir.join("sweep.csv"), ["epsilon", "value"], &outcome.sweep)?;
    let timings = serde_json::to_string_pretty(&outcome.timings).expect("timings serialize") + "\n";
    write_file(&dir.join("timings.json"), &timings)
}

/// Load a configuration from a path, or an embedded preset written `preset:NAME`.
pub fn load_config(source: &str) -> Result<ExperimentConfig, ConfigError> {
    match source.strip_prefix("preset:") {
        Some(name) => {
            let p = presets::get(name).ok_or_else(|| {
                ConfigError::Invalid(format!("unknown preset `{name}`; see `wallindex presets`"))
            })?;
            ExperimentConfig::parse(p.text, source)
        }
        None => ExperimentConfig::load(Path::new(source)),
    }
}
