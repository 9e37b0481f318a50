//! Calibration runs behind the recovery acceptance thresholds.
//!
//! Simulates replicate runs under three ground truths (drift, egocentric
//! conformity -0.8, content 0.8), fits each, and prints the statistics the
//! acceptance suite asserts: per-replicate Bayes-factor medians and best-fit
//! recovery rates. Run with `cargo run --release --example calibrate [n]`.

use cultevo::bayes::median;
use cultevo::cli::fit_log;
use cultevo::config::RunConfig;
use cultevo::sim::simulate;

fn run_scenario(name: &str, conformity: f64, content: f64, replicates: u64) {
    println!("== {name} (conformity={conformity}, content={content}) ==");
    let mut config = RunConfig::default();
    config.conformity = conformity;
    config.content = content;
    let grid = config.grid();

    let mut med_conf = Vec::new();
    let mut med_cont = Vec::new();
    let mut alpha_neg_rates = Vec::new();
    let mut beta_high_rates = Vec::new();
    for seed in 0..replicates {
        let mut run = config.clone();
        run.seed = seed;
        let (log, quality, _) = simulate(&run.sim_config()).unwrap();
        let rows = fit_log(&log, &quality, &grid, config.threshold).unwrap();
        let n = rows.len() as f64;
        let bf_conf: Vec<f64> = rows.iter().map(|r| r.bayes.bf_conformity).collect();
        let bf_cont: Vec<f64> = rows.iter().map(|r| r.bayes.bf_content).collect();
        med_conf.push(median(&bf_conf));
        med_cont.push(median(&bf_cont));
        alpha_neg_rates.push(rows.iter().filter(|r| r.conformity < 0.0).count() as f64 / n);
        beta_high_rates.push(rows.iter().filter(|r| r.content >= 0.5).count() as f64 / n);
    }
    let min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!(
        "  median bf_conformity per replicate: min {:.3} max {:.3}",
        min(&med_conf),
        max(&med_conf)
    );
    println!(
        "  median bf_content per replicate:    min {:.3} max {:.3}",
        min(&med_cont),
        max(&med_cont)
    );
    println!(
        "  frac best-fit conformity < 0:       min {:.3} max {:.3}",
        min(&alpha_neg_rates),
        max(&alpha_neg_rates)
    );
    println!(
        "  frac best-fit content >= 0.5:       min {:.3} max {:.3}",
        min(&beta_high_rates),
        max(&beta_high_rates)
    );
}

fn main() {
    let replicates: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    run_scenario("drift", 0.0, 0.0, replicates);
    run_scenario("egocentric", -0.8, 0.0, replicates);
    run_scenario("content", 0.0, 0.8, replicates);
}
