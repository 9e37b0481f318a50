//! Built-in brute-force oracle checks: outcome-space normalization, full
//! sequence enumeration, and subfamily subset dominance on tiny instances.
//! These back the `check` subcommand and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fit::{default_grid, grid_log_likelihood, DataStructure, ParameterGrid};
use crate::model::{
    build_window, choice_distribution, ExposureEvent, ModelParams, ProductionRecord, QualityTable,
    Source, VariantId,
};

/// Max deviation of `innovate_mass + sum(in_window)` from 1 over randomized
/// windows crossed with random grid points.
pub fn normalization_deviation(n_windows: usize, n_points: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = default_grid();
    let points = grid.points();
    let mut quality = QualityTable::new();
    for idx in 0..4 {
        quality
            .insert(
                VariantId::new(format!("V{idx}")).unwrap(),
                0.1 + 0.2 * idx as f64,
            )
            .unwrap();
    }
    let mut max_dev: f64 = 0.0;
    for _ in 0..n_windows {
        let len = rng.gen_range(1..=6);
        let window: Vec<ExposureEvent> = (0..len)
            .map(|i| ExposureEvent {
                source: if rng.gen::<bool>() {
                    Source::SelfSource
                } else {
                    Source::OtherSource
                },
                variant: VariantId::new(format!("V{}", rng.gen_range(0..4))).unwrap(),
                order: i as u64,
            })
            .collect();
        for _ in 0..n_points {
            let params = &points[rng.gen_range(0..points.len())];
            let dist = choice_distribution(&window, params, &quality).expect("valid window");
            max_dev = max_dev.max((dist.total_mass() - 1.0).abs());
        }
    }
    max_dev
}

/// A fixed interaction skeleton: (director, matcher) per step, one concept.
fn skeletons() -> Vec<Vec<(u32, u32)>> {
    vec![
        vec![(0, 1), (1, 0), (0, 1), (1, 0), (0, 1), (1, 0)],
        vec![
            (0, 1),
            (1, 0),
            (2, 0),
            (0, 2),
            (1, 2),
            (2, 1),
            (0, 1),
            (1, 0),
        ],
        vec![(0, 1), (0, 1), (1, 0), (1, 0), (0, 1)],
    ]
}

/// Enumerates every outcome sequence of a skeleton under the model, replaying
/// window evolution, and returns the max deviation of the total probability
/// from 1 across a handful of parameter settings.
pub fn enumeration_deviation() -> f64 {
    let settings = [
        ModelParams::new(2, 0.0, 0.0, 0.05).unwrap(),
        ModelParams::new(3, -0.6, 0.3, 0.05).unwrap(),
        ModelParams::new(3, 0.8, 0.7, 0.01).unwrap(),
        ModelParams::new(2, 1.0, 0.0, 0.1).unwrap(),
    ];
    let mut max_dev: f64 = 0.0;
    for skeleton in skeletons() {
        for params in &settings {
            let total = enumerate_total_probability(&skeleton, params);
            max_dev = max_dev.max((total - 1.0).abs());
        }
    }
    max_dev
}

/// Total probability of all outcome sequences for one skeleton.
pub fn enumerate_total_probability(skeleton: &[(u32, u32)], params: &ModelParams) -> f64 {
    let mut quality = QualityTable::new();
    recurse(skeleton, params, &mut Vec::new(), &mut quality, &mut 0)
}

fn fresh_variant(counter: &mut u32, quality: &mut QualityTable) -> VariantId {
    let variant = VariantId::new(format!("F{counter}")).unwrap();
    *counter += 1;
    // Fixed spread of qualities for invented variants.
    let q = 0.2 + 0.15 * ((*counter % 5) as f64);
    if !quality.contains(&variant) {
        quality.insert(variant.clone(), q).unwrap();
    }
    variant
}

fn recurse(
    skeleton: &[(u32, u32)],
    params: &ModelParams,
    log: &mut Vec<ProductionRecord>,
    quality: &mut QualityTable,
    fresh_counter: &mut u32,
) -> f64 {
    let step = log.len();
    if step == skeleton.len() {
        return 1.0;
    }
    let (director, matcher) = skeleton[step];
    let order = step as u64 + 1;
    let window = build_window(log, director, 0, order, params.memory_size());

    let push = |log: &mut Vec<ProductionRecord>, variant: VariantId| {
        log.push(ProductionRecord {
            society: 0,
            round: 1,
            game: 1,
            order,
            concept: 0,
            director,
            matcher,
            variant,
        });
    };

    if window.is_empty() {
        // First exposure-free production: a fresh variant with certainty.
        let saved_counter = *fresh_counter;
        let variant = fresh_variant(fresh_counter, quality);
        push(log, variant);
        let total = recurse(skeleton, params, log, quality, fresh_counter);
        log.pop();
        *fresh_counter = saved_counter;
        return total;
    }

    let dist = choice_distribution(&window, params, quality).expect("non-empty window");
    let mut total = 0.0;
    for (variant, &p) in &dist.in_window {
        push(log, variant.clone());
        total += p * recurse(skeleton, params, log, quality, fresh_counter);
        log.pop();
    }
    if dist.innovate_mass > 0.0 {
        let saved_counter = *fresh_counter;
        let variant = fresh_variant(fresh_counter, quality);
        push(log, variant);
        total += dist.innovate_mass * recurse(skeleton, params, log, quality, fresh_counter);
        log.pop();
        *fresh_counter = saved_counter;
    }
    total
}

/// Fits a tiny data-structure and returns the worst (most negative) margin of
/// the full-grid maximum over every subfamily maximum. Non-negative iff
/// subset dominance holds.
pub fn subset_dominance_margin() -> f64 {
    let tokens = ["A", "B", "A", "A", "B", "A"];
    let records: Vec<ProductionRecord> = tokens
        .iter()
        .enumerate()
        .map(|(i, token)| ProductionRecord {
            society: 0,
            round: 1,
            game: 1,
            order: i as u64 + 1,
            concept: 0,
            director: (i % 2) as u32,
            matcher: ((i + 1) % 2) as u32,
            variant: VariantId::new(*token).unwrap(),
        })
        .collect();
    let ds = DataStructure {
        society: 0,
        concept: 0,
        records,
    };
    let mut quality = QualityTable::new();
    quality.insert(VariantId::new("A").unwrap(), 0.9).unwrap();
    quality.insert(VariantId::new("B").unwrap(), 0.3).unwrap();
    let fit = grid_log_likelihood(&ds, &default_grid(), &quality).expect("tiny fit");
    let s = fit.subfamilies;
    [
        s.conformity_zero,
        s.conformity_nonzero,
        s.content_zero,
        s.content_nonzero,
        s.drift,
    ]
    .into_iter()
    .flatten()
    .map(|sub| s.all - sub)
    .fold(f64::INFINITY, f64::min)
}

/// Validates the default grid's structural invariants.
pub fn grid_invariants(grid: &ParameterGrid) -> Result<(), String> {
    grid.validate().map_err(|e| e.to_string())?;
    if grid.len() != 484 && *grid == default_grid() {
        return Err(format!(
            "default grid has {} points, expected 484",
            grid.len()
        ));
    }
    Ok(())
}
