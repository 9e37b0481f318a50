//! Best-account Bayes factors, five-way bias classification, and report
//! aggregation over fitted data-structures.

use thiserror::Error;

use crate::fit::{FitResult, ParameterGrid, SubfamilyMaxima};

/// Default evidence threshold: significant at a Bayes factor of 19.
pub const DEFAULT_THRESHOLD: f64 = 19.0;

/// Best-account Bayes factors: max likelihood of any model with the bias over
/// max likelihood of any model without it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesFactors {
    pub bf_conformity: f64,
    pub bf_content: f64,
    pub bf_any: f64,
}

/// Five-way classification of a data-structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BiasClass {
    ContentOnly,
    ConformityOnly,
    Both,
    SomeBias,
    Drift,
}

impl BiasClass {
    pub const ALL: [BiasClass; 5] = [
        BiasClass::ContentOnly,
        BiasClass::ConformityOnly,
        BiasClass::Both,
        BiasClass::SomeBias,
        BiasClass::Drift,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BiasClass::ContentOnly => "content_only",
            BiasClass::ConformityOnly => "conformity_only",
            BiasClass::Both => "both",
            BiasClass::SomeBias => "some_bias",
            BiasClass::Drift => "drift",
        }
    }

    pub fn parse(s: &str) -> Option<BiasClass> {
        BiasClass::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

impl std::fmt::Display for BiasClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum BayesError {
    #[error("missing subfamily maximum: {0}")]
    MissingSubfamily(&'static str),
    #[error("cannot aggregate an empty fit list")]
    EmptyInput,
}

/// Bayes factors from the six subfamily maxima.
pub fn bayes_factors(subfamilies: &SubfamilyMaxima) -> Result<BayesFactors, BayesError> {
    let conformity_zero = subfamilies
        .conformity_zero
        .ok_or(BayesError::MissingSubfamily("conformity = 0"))?;
    let conformity_nonzero = subfamilies
        .conformity_nonzero
        .ok_or(BayesError::MissingSubfamily("conformity != 0"))?;
    let content_zero = subfamilies
        .content_zero
        .ok_or(BayesError::MissingSubfamily("content = 0"))?;
    let content_nonzero = subfamilies
        .content_nonzero
        .ok_or(BayesError::MissingSubfamily("content != 0"))?;
    let drift = subfamilies
        .drift
        .ok_or(BayesError::MissingSubfamily("drift"))?;
    Ok(BayesFactors {
        bf_conformity: (conformity_nonzero - conformity_zero).exp(),
        bf_content: (content_nonzero - content_zero).exp(),
        bf_any: (subfamilies.all - drift).exp(),
    })
}

/// Five-way classification against an evidence threshold.
///
/// Both individual factors at threshold → `Both`; exactly one → that bias;
/// neither but the any-bias factor at threshold → `SomeBias`; otherwise
/// `Drift`.
pub fn classify(bfs: &BayesFactors, threshold: f64) -> BiasClass {
    let conformity = bfs.bf_conformity >= threshold;
    let content = bfs.bf_content >= threshold;
    match (conformity, content) {
        (true, true) => BiasClass::Both,
        (false, true) => BiasClass::ContentOnly,
        (true, false) => BiasClass::ConformityOnly,
        (false, false) => {
            if bfs.bf_any >= threshold {
                BiasClass::SomeBias
            } else {
                BiasClass::Drift
            }
        }
    }
}

/// One fitted data-structure, reduced to what the report needs.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub society: u32,
    pub concept: u32,
    pub memory_size: usize,
    pub conformity: f64,
    pub content: f64,
    pub log_likelihood: f64,
    pub bayes: BayesFactors,
    pub class: BiasClass,
}

/// The aggregate over all fitted data-structures: best-fit histograms over
/// every grid value (zero bins included), class counts, Bayes-factor medians.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub memory_hist: Vec<(usize, usize)>,
    pub conformity_hist: Vec<(f64, usize)>,
    pub content_hist: Vec<(f64, usize)>,
    /// (class, count, percent) for all five classes.
    pub class_counts: Vec<(BiasClass, usize, f64)>,
    pub median_bf_conformity: f64,
    pub median_bf_content: f64,
    pub median_bf_any: f64,
    /// Percentage of data-structures whose best-fit content bias is > 0.
    pub pct_content_positive: f64,
    pub n_structures: usize,
}

/// Lower-midpoint median: the order statistic at 1-based index ceil(n/2).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[(sorted.len() - 1) / 2]
}

/// Builds the report from per-structure rows.
pub fn aggregate_rows(rows: &[FitRow], grid: &ParameterGrid) -> Result<Report, BayesError> {
    if rows.is_empty() {
        return Err(BayesError::EmptyInput);
    }
    let n = rows.len();
    let memory_hist = grid
        .memory_sizes
        .iter()
        .map(|&m| (m, rows.iter().filter(|r| r.memory_size == m).count()))
        .collect();
    let conformity_hist = grid
        .conformity_values
        .iter()
        .map(|&a| (a, rows.iter().filter(|r| r.conformity == a).count()))
        .collect();
    let content_hist = grid
        .content_values
        .iter()
        .map(|&b| (b, rows.iter().filter(|r| r.content == b).count()))
        .collect();
    let class_counts = BiasClass::ALL
        .iter()
        .map(|&class| {
            let count = rows.iter().filter(|r| r.class == class).count();
            (class, count, 100.0 * count as f64 / n as f64)
        })
        .collect();
    let bf_conf: Vec<f64> = rows.iter().map(|r| r.bayes.bf_conformity).collect();
    let bf_cont: Vec<f64> = rows.iter().map(|r| r.bayes.bf_content).collect();
    let bf_any: Vec<f64> = rows.iter().map(|r| r.bayes.bf_any).collect();
    let content_positive = rows.iter().filter(|r| r.content > 0.0).count();
    Ok(Report {
        memory_hist,
        conformity_hist,
        content_hist,
        class_counts,
        median_bf_conformity: median(&bf_conf),
        median_bf_content: median(&bf_cont),
        median_bf_any: median(&bf_any),
        pct_content_positive: 100.0 * content_positive as f64 / n as f64,
        n_structures: n,
    })
}

/// Builds the report directly from fit results.
pub fn aggregate_report(
    fits: &[(FitResult, BayesFactors, BiasClass)],
    grid: &ParameterGrid,
) -> Result<Report, BayesError> {
    let rows: Vec<FitRow> = fits
        .iter()
        .map(|(fit, bayes, class)| FitRow {
            society: 0,
            concept: 0,
            memory_size: fit.best_params.memory_size(),
            conformity: fit.best_params.conformity(),
            content: fit.best_params.content(),
            log_likelihood: fit.best_log_likelihood,
            bayes: *bayes,
            class: *class,
        })
        .collect();
    aggregate_rows(&rows, grid)
}
