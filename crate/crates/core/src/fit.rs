//! Per-(society, concept) data-structure extraction and grid-search maximum
//! likelihood over the parameter space.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{
    build_window, ExposureEvent, ModelParams, ProductionRecord, QualityTable, Source, VariantId,
};

/// The ordered production sequence for one (society, concept) pair; the unit
/// of fitting.
#[derive(Debug, Clone)]
pub struct DataStructure {
    pub society: u32,
    pub concept: u32,
    pub records: Vec<ProductionRecord>,
}

/// The grid of candidate parameter settings. Innovation mass is fixed, not
/// gridded.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterGrid {
    pub memory_sizes: Vec<usize>,
    pub conformity_values: Vec<f64>,
    pub content_values: Vec<f64>,
    pub innovation: f64,
}

impl ParameterGrid {
    pub fn validate(&self) -> Result<(), FitError> {
        if self.memory_sizes.is_empty()
            || self.conformity_values.is_empty()
            || self.content_values.is_empty()
        {
            return Err(FitError::InvalidGrid("grid axes must be non-empty".into()));
        }
        if !strictly_increasing_usize(&self.memory_sizes) {
            return Err(FitError::InvalidGrid(
                "memory_sizes must be strictly increasing".into(),
            ));
        }
        if !strictly_increasing(&self.conformity_values)
            || !strictly_increasing(&self.content_values)
        {
            return Err(FitError::InvalidGrid(
                "grid values must be strictly increasing".into(),
            ));
        }
        if self.memory_sizes[0] < 1 {
            return Err(FitError::InvalidGrid("memory sizes must be >= 1".into()));
        }
        if !self.conformity_values.contains(&0.0) {
            return Err(FitError::InvalidGrid(
                "conformity_values must contain 0.0 (drift subfamily)".into(),
            ));
        }
        if !self.content_values.contains(&0.0) {
            return Err(FitError::InvalidGrid(
                "content_values must contain 0.0 (drift subfamily)".into(),
            ));
        }
        if self
            .conformity_values
            .iter()
            .any(|&a| !(-1.0..=1.0).contains(&a))
            || self
                .content_values
                .iter()
                .any(|&b| !(0.0..=1.0).contains(&b))
        {
            return Err(FitError::InvalidGrid("grid values out of range".into()));
        }
        if !(0.0..1.0).contains(&self.innovation) {
            return Err(FitError::InvalidGrid("innovation must be in [0, 1)".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.memory_sizes.len() * self.conformity_values.len() * self.content_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in lexicographic (memory, conformity, content) order.
    pub fn points(&self) -> Vec<ModelParams> {
        let mut points = Vec::with_capacity(self.len());
        for &m in &self.memory_sizes {
            for &alpha in &self.conformity_values {
                for &beta in &self.content_values {
                    points.push(
                        ModelParams::new(m, alpha, beta, self.innovation)
                            .expect("validated grid values"),
                    );
                }
            }
        }
        points
    }
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

fn strictly_increasing_usize(values: &[usize]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

/// Memory sizes {2, 4, 8, 16}, conformity -1.0..=1.0 step 0.2, content
/// 0.0..=1.0 step 0.1: 4 * 11 * 11 = 484 points, innovation mass 0.01.
pub fn default_grid() -> ParameterGrid {
    ParameterGrid {
        memory_sizes: vec![2, 4, 8, 16],
        conformity_values: (-5..=5).map(|k| k as f64 / 5.0).collect(),
        content_values: (0..=10).map(|k| k as f64 / 10.0).collect(),
        innovation: 0.01,
    }
}

/// Log-likelihood maxima over the nested model subfamilies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubfamilyMaxima {
    pub all: f64,
    pub conformity_zero: Option<f64>,
    pub conformity_nonzero: Option<f64>,
    pub content_zero: Option<f64>,
    pub content_nonzero: Option<f64>,
    pub drift: Option<f64>,
}

/// Outcome of a grid search over one data-structure.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub best_params: ModelParams,
    pub best_log_likelihood: f64,
    /// Log-likelihood per grid point, in canonical grid order.
    pub table: Vec<(ModelParams, f64)>,
    pub subfamilies: SubfamilyMaxima,
    /// Scored (non-empty-window) event count, per memory size.
    pub n_scored_events: BTreeMap<usize, usize>,
}

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("empty likelihood table")]
    EmptyTable,
    #[error("missing quality for variants: {}", .0.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(", "))]
    MissingQuality(Vec<VariantId>),
    #[error(
        "zero-probability event: innovation mass is 0 and an out-of-window production occurred"
    )]
    ZeroProbabilityEvent,
}

/// Splits a log into one `DataStructure` per (society, concept) pair present,
/// ordered by society then concept, each internally sorted by order.
pub fn extract_data_structures(log: &[ProductionRecord]) -> Vec<DataStructure> {
    let mut groups: BTreeMap<(u32, u32), Vec<ProductionRecord>> = BTreeMap::new();
    for record in log {
        groups
            .entry((record.society, record.concept))
            .or_default()
            .push(record.clone());
    }
    groups
        .into_iter()
        .map(|((society, concept), mut records)| {
            records.sort_by_key(|r| r.order);
            DataStructure {
                society,
                concept,
                records,
            }
        })
        .collect()
}

/// Per-event sufficient statistics for one memory size: everything needed to
/// score the event at any (conformity, content) point in O(1).
#[derive(Debug, Clone, Copy)]
struct EventSummary {
    /// Self/other exposure counts of the produced variant.
    produced_self: f64,
    produced_other: f64,
    /// Self/other exposure counts over the whole window.
    total_self: f64,
    total_other: f64,
    n_candidates: f64,
    /// Produced variant's share of the candidate quality mass (0 when the
    /// produced variant is outside the window).
    quality_share: f64,
    in_window: bool,
}

fn summarize_event(
    window: &[ExposureEvent],
    produced: &VariantId,
    quality: &QualityTable,
) -> Result<EventSummary, FitError> {
    let mut produced_self = 0.0;
    let mut produced_other = 0.0;
    let mut total_self = 0.0;
    let mut total_other = 0.0;
    let mut candidates: BTreeMap<&VariantId, ()> = BTreeMap::new();
    for event in window {
        candidates.insert(&event.variant, ());
        match event.source {
            Source::SelfSource => {
                total_self += 1.0;
                if &event.variant == produced {
                    produced_self += 1.0;
                }
            }
            Source::OtherSource => {
                total_other += 1.0;
                if &event.variant == produced {
                    produced_other += 1.0;
                }
            }
        }
    }
    let in_window = candidates.contains_key(produced);
    let mut quality_sum = 0.0;
    let mut missing = Vec::new();
    for variant in candidates.keys() {
        match quality.get(variant) {
            Some(q) => quality_sum += q,
            None => missing.push((*variant).clone()),
        }
    }
    if !missing.is_empty() {
        return Err(FitError::MissingQuality(missing));
    }
    let quality_share = if in_window {
        quality.get(produced).expect("checked") / quality_sum
    } else {
        0.0
    };
    Ok(EventSummary {
        produced_self,
        produced_other,
        total_self,
        total_other,
        n_candidates: candidates.len() as f64,
        quality_share,
        in_window,
    })
}

impl EventSummary {
    fn log_likelihood(&self, alpha: f64, beta: f64, lambda: f64) -> Result<f64, FitError> {
        if !self.in_window {
            if lambda > 0.0 {
                return Ok(lambda.ln());
            }
            return Err(FitError::ZeroProbabilityEvent);
        }
        let weight_total = (1.0 + alpha) * self.total_other + (1.0 - alpha) * self.total_self;
        let p_freq = if weight_total == 0.0 {
            1.0 / self.n_candidates
        } else {
            ((1.0 + alpha) * self.produced_other + (1.0 - alpha) * self.produced_self)
                / weight_total
        };
        let p_win = (1.0 - beta) * p_freq + beta * self.quality_share;
        Ok(((1.0 - lambda) * p_win).ln())
    }
}

/// Evaluates a data-structure's log-likelihood at every grid point.
///
/// Events whose director window (at that point's memory size) is empty are
/// skipped; the scored-event count is reported per memory size. The best
/// point follows the deterministic tie-breaking rule of [`best_fit`].
pub fn grid_log_likelihood(
    ds: &DataStructure,
    grid: &ParameterGrid,
    quality: &QualityTable,
) -> Result<FitResult, FitError> {
    grid.validate()?;

    // Per memory size: the sufficient statistics of every scored event.
    let mut summaries: BTreeMap<usize, Vec<EventSummary>> = BTreeMap::new();
    let mut n_scored_events = BTreeMap::new();
    for &m in &grid.memory_sizes {
        let mut events = Vec::new();
        for (i, record) in ds.records.iter().enumerate() {
            let window = build_window(
                &ds.records[..i],
                record.director,
                record.concept,
                record.order,
                m,
            );
            if window.is_empty() {
                continue;
            }
            events.push(summarize_event(&window, &record.variant, quality)?);
        }
        n_scored_events.insert(m, events.len());
        summaries.insert(m, events);
    }

    let mut table = Vec::with_capacity(grid.len());
    for params in grid.points() {
        let events = &summaries[&params.memory_size()];
        let mut total = 0.0;
        for event in events {
            total +=
                event.log_likelihood(params.conformity(), params.content(), params.innovation())?;
        }
        table.push((params, total));
    }

    let (best_params, best_log_likelihood) = best_fit(&table)?;
    let subfamilies = subfamily_maxima(&table);
    Ok(FitResult {
        best_params,
        best_log_likelihood,
        table,
        subfamilies,
        n_scored_events,
    })
}

fn max_over<'a>(table: impl Iterator<Item = &'a (ModelParams, f64)>) -> Option<f64> {
    table.map(|&(_, ll)| ll).fold(None, |acc, ll| {
        Some(match acc {
            None => ll,
            Some(best) => {
                if ll > best {
                    ll
                } else {
                    best
                }
            }
        })
    })
}

/// Maxima over {all, conformity = 0, conformity != 0, content = 0,
/// content != 0, drift}.
pub fn subfamily_maxima(table: &[(ModelParams, f64)]) -> SubfamilyMaxima {
    SubfamilyMaxima {
        all: max_over(table.iter()).unwrap_or(f64::NEG_INFINITY),
        conformity_zero: max_over(table.iter().filter(|(p, _)| p.conformity() == 0.0)),
        conformity_nonzero: max_over(table.iter().filter(|(p, _)| p.conformity() != 0.0)),
        content_zero: max_over(table.iter().filter(|(p, _)| p.content() == 0.0)),
        content_nonzero: max_over(table.iter().filter(|(p, _)| p.content() != 0.0)),
        drift: max_over(
            table
                .iter()
                .filter(|(p, _)| p.conformity() == 0.0 && p.content() == 0.0),
        ),
    }
}

/// Argmax with deterministic tie-breaking: higher log-likelihood, then
/// smaller |conformity|, then smaller content, then smaller memory size,
/// then lexicographic (memory, conformity, content) order. Independent of
/// evaluation order.
pub fn best_fit(table: &[(ModelParams, f64)]) -> Result<(ModelParams, f64), FitError> {
    let mut best: Option<&(ModelParams, f64)> = None;
    for entry in table {
        best = Some(match best {
            None => entry,
            Some(current) => {
                if prefer(entry, current) {
                    entry
                } else {
                    current
                }
            }
        });
    }
    best.map(|(p, ll)| (p.clone(), *ll))
        .ok_or(FitError::EmptyTable)
}

/// True if `a` beats `b` under the tie-breaking order.
fn prefer(a: &(ModelParams, f64), b: &(ModelParams, f64)) -> bool {
    let key = |(p, ll): &(ModelParams, f64)| {
        [
            -ll,
            p.conformity().abs(),
            p.content(),
            p.memory_size() as f64,
            p.conformity(),
            p.content(),
        ]
    };
    let (ta, tb) = (key(a), key(b));
    for (x, y) in ta.iter().zip(tb.iter()) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Less) => return true,
            Some(std::cmp::Ordering::Greater) => return false,
            _ => {}
        }
    }
    false
}
