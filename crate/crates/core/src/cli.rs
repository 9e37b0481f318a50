//! Command implementations behind the binary's subcommands.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::bayes::{aggregate_rows, bayes_factors, classify, BiasClass, FitRow};
use crate::check;
use crate::config::{ConfigError, RunConfig};
use crate::fit::{extract_data_structures, grid_log_likelihood, DataStructure, ParameterGrid};
use crate::io;
use crate::model::{ProductionRecord, QualityTable};
use crate::sim::simulate;

/// Command failure with its process exit code: 1 for runtime failures, 2 for
/// usage/config errors.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => Ok(RunConfig::from_file(p)?),
        None => Ok(RunConfig::default()),
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))
}

/// Writes `log.csv`, `quality.csv`, and `truth.txt` for one synthetic run.
pub fn cmd_simulate(config: &RunConfig, out_dir: &Path) -> Result<(), CliError> {
    config.validate()?;
    ensure_dir(out_dir)?;
    let sim_config = config.sim_config();
    let (log, quality, truth) =
        simulate(&sim_config).map_err(|e| CliError::Usage(e.to_string()))?;
    io::write_log_csv(&out_dir.join("log.csv"), &log)?;
    io::write_quality_csv(&out_dir.join("quality.csv"), &quality)?;
    io::write_truth_txt(&out_dir.join("truth.txt"), &truth, &config.render())?;
    println!(
        "simulated {} records across {} societies -> {}",
        log.len(),
        sim_config.n_societies,
        out_dir.display()
    );
    Ok(())
}

/// Fits every data-structure in a log and classifies it. Shared by `fit` and
/// `recover`.
pub fn fit_log(
    log: &[ProductionRecord],
    quality: &QualityTable,
    grid: &ParameterGrid,
    threshold: f64,
) -> Result<Vec<FitRow>, CliError> {
    grid.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let missing: BTreeSet<&str> = log
        .iter()
        .filter(|r| !quality.contains(&r.variant))
        .map(|r| r.variant.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Runtime(format!(
            "variants missing from quality table: {}",
            missing.into_iter().collect::<Vec<_>>().join(", ")
        )));
    }
    let structures = extract_data_structures(log);
    structures
        .par_iter()
        .map(|ds| fit_one(ds, grid, quality, threshold))
        .collect()
}

fn fit_one(
    ds: &DataStructure,
    grid: &ParameterGrid,
    quality: &QualityTable,
    threshold: f64,
) -> Result<FitRow, CliError> {
    let fit =
        grid_log_likelihood(ds, grid, quality).map_err(|e| CliError::Runtime(e.to_string()))?;
    let bayes = bayes_factors(&fit.subfamilies).map_err(|e| CliError::Runtime(e.to_string()))?;
    let class = classify(&bayes, threshold);
    Ok(FitRow {
        society: ds.society,
        concept: ds.concept,
        memory_size: fit.best_params.memory_size(),
        conformity: fit.best_params.conformity(),
        content: fit.best_params.content(),
        log_likelihood: fit.best_log_likelihood,
        bayes,
        class,
    })
}

/// Reads a log and quality table, fits all data-structures, writes `fits.csv`.
pub fn cmd_fit(
    log_path: &Path,
    quality_path: &Path,
    config: &RunConfig,
    out_dir: &Path,
) -> Result<(), CliError> {
    let log = io::read_log_csv(log_path)?;
    let quality = io::read_quality_csv(quality_path)?;
    let rows = fit_log(&log, &quality, &config.grid(), config.threshold)?;
    ensure_dir(out_dir)?;
    io::write_fits_csv(&out_dir.join("fits.csv"), &rows)?;
    println!(
        "fitted {} data-structures -> {}",
        rows.len(),
        out_dir.join("fits.csv").display()
    );
    Ok(())
}

/// Aggregates `fits.csv` into the histogram/class/summary report tables.
pub fn cmd_report(fits_path: &Path, config: &RunConfig, out_dir: &Path) -> Result<(), CliError> {
    let rows = io::read_fits_csv(fits_path)?;
    if rows.is_empty() {
        return Err(CliError::Runtime("fits file contains no rows".into()));
    }
    let report =
        aggregate_rows(&rows, &config.grid()).map_err(|e| CliError::Runtime(e.to_string()))?;
    ensure_dir(out_dir)?;
    io::write_report_files(out_dir, &report)?;
    print!("{}", io::render_summary(&report));
    Ok(())
}

/// Per-parameter recovery statistics over fresh simulate-and-fit replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoverySummary {
    pub replicates: u32,
    pub n_structures: usize,
    /// Fraction of data-structures with best-fit conformity within one grid
    /// step of truth; likewise content and memory size (adjacent grid index).
    pub frac_conformity: f64,
    pub frac_content: f64,
    pub frac_memory: f64,
    pub class_rates: Vec<(BiasClass, f64)>,
}

impl RecoverySummary {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "replicates = {}", self.replicates).unwrap();
        writeln!(out, "data_structures = {}", self.n_structures).unwrap();
        writeln!(
            out,
            "frac_conformity_recovered = {}",
            io::fmt_sig(self.frac_conformity)
        )
        .unwrap();
        writeln!(
            out,
            "frac_content_recovered = {}",
            io::fmt_sig(self.frac_content)
        )
        .unwrap();
        writeln!(
            out,
            "frac_memory_recovered = {}",
            io::fmt_sig(self.frac_memory)
        )
        .unwrap();
        for &(class, rate) in &self.class_rates {
            writeln!(out, "rate_{} = {}", class, io::fmt_sig(rate)).unwrap();
        }
        out
    }
}

pub fn recover(config: &RunConfig, replicates: u32) -> Result<RecoverySummary, CliError> {
    if replicates < 1 {
        return Err(CliError::Usage("replicates must be >= 1".into()));
    }
    config.validate()?;
    let grid = config.grid();
    let truth = config.true_params()?;
    let memory_index = grid
        .memory_sizes
        .iter()
        .position(|&m| m == truth.memory_size())
        .ok_or_else(|| {
            CliError::Usage("true memory_size must be one of the grid's memory_sizes".into())
        })?;

    let mut rows = Vec::new();
    for replicate in 0..replicates {
        let mut run = config.clone();
        run.seed = config.seed.wrapping_add(replicate as u64);
        let (log, quality, _) =
            simulate(&run.sim_config()).map_err(|e| CliError::Usage(e.to_string()))?;
        rows.extend(fit_log(&log, &quality, &grid, config.threshold)?);
    }

    let n = rows.len();
    let tol = 1e-9;
    let conf_hits = rows
        .iter()
        .filter(|r| (r.conformity - truth.conformity()).abs() <= config.conformity_step + tol)
        .count();
    let cont_hits = rows
        .iter()
        .filter(|r| (r.content - truth.content()).abs() <= config.content_step + tol)
        .count();
    let mem_hits = rows
        .iter()
        .filter(|r| {
            grid.memory_sizes
                .iter()
                .position(|&m| m == r.memory_size)
                .map(|i| i.abs_diff(memory_index) <= 1)
                .unwrap_or(false)
        })
        .count();
    let class_rates = BiasClass::ALL
        .iter()
        .map(|&class| {
            let count = rows.iter().filter(|r| r.class == class).count();
            (class, count as f64 / n as f64)
        })
        .collect();
    Ok(RecoverySummary {
        replicates,
        n_structures: n,
        frac_conformity: conf_hits as f64 / n as f64,
        frac_content: cont_hits as f64 / n as f64,
        frac_memory: mem_hits as f64 / n as f64,
        class_rates,
    })
}

pub fn cmd_recover(
    config: &RunConfig,
    replicates: u32,
    out_dir: Option<&Path>,
) -> Result<(), CliError> {
    let summary = recover(config, replicates)?;
    let rendered = summary.render();
    print!("{rendered}");
    if let Some(dir) = out_dir {
        ensure_dir(dir)?;
        fs::write(dir.join("recovery.txt"), rendered)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    Ok(())
}

/// Runs the built-in brute-force oracles; prints one line per check.
pub fn cmd_check() -> Result<(), CliError> {
    let mut failed = false;

    let dev = check::normalization_deviation(100, 20, 1);
    let ok = dev < 1e-9;
    println!("normalization: max deviation {:e} {}", dev, status(ok));
    failed |= !ok;

    let dev = check::enumeration_deviation();
    let ok = dev < 1e-9;
    println!(
        "sequence_enumeration: max deviation {:e} {}",
        dev,
        status(ok)
    );
    failed |= !ok;

    let margin = check::subset_dominance_margin();
    let ok = margin >= 0.0;
    println!("subset_dominance: min margin {:e} {}", margin, status(ok));
    failed |= !ok;

    let result = check::grid_invariants(&crate::fit::default_grid());
    match &result {
        Ok(()) => println!("grid_invariants: ok"),
        Err(e) => println!("grid_invariants: FAILED ({e})"),
    }
    failed |= result.is_err();

    if failed {
        Err(CliError::Runtime("one or more checks failed".into()))
    } else {
        Ok(())
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}
