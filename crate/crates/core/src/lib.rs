//! Simulator and model-fitting toolkit for the cultural evolution of
//! communication variants.
//!
//! The pipeline: [`sim`] generates micro-society interaction logs under known
//! parameters, [`fit`] grid-searches the variant-choice model of [`model`]
//! by maximum likelihood per (society, concept) data-structure, and [`bayes`]
//! turns subfamily maxima into best-account Bayes factors and a five-way bias
//! classification against the neutral-drift null.

pub mod bayes;
pub mod check;
pub mod cli;
pub mod config;
pub mod fit;
pub mod io;
pub mod model;
pub mod sim;

pub use bayes::{aggregate_report, bayes_factors, classify, BayesFactors, BiasClass, Report};
pub use config::RunConfig;
pub use fit::{
    best_fit, default_grid, extract_data_structures, grid_log_likelihood, DataStructure, FitResult,
    ParameterGrid,
};
pub use model::{
    build_window, choice_distribution, event_log_likelihood, ChoiceDistribution, ExposureEvent,
    ModelParams, ProductionRecord, QualityTable, Source, VariantId,
};
pub use sim::{round_robin_schedule, simulate, Schedule, SimConfig};
