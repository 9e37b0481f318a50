//! Variant-choice probability model: memory windows, the biased choice
//! distribution, and per-event log-likelihood.
//!
//! The model mixes a source-weighted frequency part (conformity axis) with a
//! quality-proportional part (content axis). At `conformity = 0`,
//! `content = 0` it reduces to neutral drift: every encountered variant is an
//! equal candidate for copying.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Identifier of a cultural variant, unique within a (society, concept) scope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariantId(String);

impl VariantId {
    pub fn new(token: impl Into<String>) -> Result<Self, ModelError> {
        let token = token.into();
        if token.is_empty() {
            return Err(ModelError::EmptyVariantToken);
        }
        Ok(VariantId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One sign production event: who drew which variant for which concept, for
/// whom, and when (global order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionRecord {
    pub society: u32,
    pub round: u32,
    pub game: u32,
    /// Global sequence index, strictly increasing over the log.
    pub order: u64,
    pub concept: u32,
    /// Producer of the sign.
    pub director: u32,
    /// Observer of the sign.
    pub matcher: u32,
    pub variant: VariantId,
}

/// Whether an exposure came from the observer's own production or from a
/// partner's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    SelfSource,
    OtherSource,
}

/// One exposure of a fixed observer to a variant, derived from a
/// `ProductionRecord`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExposureEvent {
    pub source: Source,
    pub variant: VariantId,
    pub order: u64,
}

/// The fitted parameter triple plus the fixed innovation mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    memory_size: usize,
    conformity: f64,
    content: f64,
    innovation: f64,
}

impl ModelParams {
    /// `memory_size >= 1`, `conformity` in [-1, 1], `content` in [0, 1],
    /// `innovation` in [0, 1).
    pub fn new(
        memory_size: usize,
        conformity: f64,
        content: f64,
        innovation: f64,
    ) -> Result<Self, ModelError> {
        if memory_size < 1 {
            return Err(ModelError::InvalidParameter(
                "memory_size must be >= 1".into(),
            ));
        }
        if !(-1.0..=1.0).contains(&conformity) || conformity.is_nan() {
            return Err(ModelError::InvalidParameter(
                "conformity must be in [-1, 1]".into(),
            ));
        }
        if !(0.0..=1.0).contains(&content) || content.is_nan() {
            return Err(ModelError::InvalidParameter(
                "content must be in [0, 1]".into(),
            ));
        }
        if !(0.0..1.0).contains(&innovation) || innovation.is_nan() {
            return Err(ModelError::InvalidParameter(
                "innovation must be in [0, 1)".into(),
            ));
        }
        Ok(ModelParams {
            memory_size,
            conformity,
            content,
            innovation,
        })
    }

    pub fn memory_size(&self) -> usize {
        self.memory_size
    }

    /// Conformity bias α. Negative values are egocentric, positive conformist.
    pub fn conformity(&self) -> f64 {
        self.conformity
    }

    /// Content bias β, the weight on quality-proportional choice.
    pub fn content(&self) -> f64 {
        self.content
    }

    /// Innovation mass λ.
    pub fn innovation(&self) -> f64 {
        self.innovation
    }
}

/// Intrinsic value q in (0, 1] per variant; the content-bias input.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QualityTable {
    qualities: BTreeMap<VariantId, f64>,
}

impl QualityTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, variant: VariantId, quality: f64) -> Result<(), ModelError> {
        if !(quality > 0.0 && quality <= 1.0) {
            return Err(ModelError::InvalidQuality(quality));
        }
        self.qualities.insert(variant, quality);
        Ok(())
    }

    pub fn get(&self, variant: &VariantId) -> Option<f64> {
        self.qualities.get(variant).copied()
    }

    pub fn contains(&self, variant: &VariantId) -> bool {
        self.qualities.contains_key(variant)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VariantId, f64)> {
        self.qualities.iter().map(|(v, &q)| (v, q))
    }

    pub fn len(&self) -> usize {
        self.qualities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qualities.is_empty()
    }
}

/// Distribution over the next production: mass on each windowed variant plus
/// the reserved innovation mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceDistribution {
    pub in_window: BTreeMap<VariantId, f64>,
    pub innovate_mass: f64,
}

impl ChoiceDistribution {
    /// Probability of producing `variant` (zero if not in the window).
    pub fn probability(&self, variant: &VariantId) -> f64 {
        self.in_window.get(variant).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.innovate_mass + self.in_window.values().sum::<f64>()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("variant token must be non-empty")]
    EmptyVariantToken,
    #[error("undefined distribution: window is empty")]
    EmptyWindow,
    #[error("unknown quality for variant '{0}'")]
    UnknownQuality(VariantId),
    #[error("zero-probability event: innovation mass is 0 and variant is outside the window")]
    ZeroProbabilityEvent,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quality {0} outside (0, 1]")]
    InvalidQuality(f64),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::SelfSource => f.write_str("self"),
            Source::OtherSource => f.write_str("other"),
        }
    }
}

/// Returns the last up-to-`memory_size` exposures of `observer` to `concept`
/// strictly before `before_order`, oldest first.
///
/// An exposure is any record where the observer was director (self source) or
/// matcher (other source). `log` must be sorted by order.
pub fn build_window(
    log: &[ProductionRecord],
    observer: u32,
    concept: u32,
    before_order: u64,
    memory_size: usize,
) -> Vec<ExposureEvent> {
    let mut exposures: Vec<ExposureEvent> = log
        .iter()
        .filter(|r| r.concept == concept && r.order < before_order)
        .filter_map(|r| {
            let source = if r.director == observer {
                Source::SelfSource
            } else if r.matcher == observer {
                Source::OtherSource
            } else {
                return None;
            };
            Some(ExposureEvent {
                source,
                variant: r.variant.clone(),
                order: r.order,
            })
        })
        .collect();
    if exposures.len() > memory_size {
        exposures.drain(..exposures.len() - memory_size);
    }
    exposures
}

/// Choice distribution over the window's candidate variants.
///
/// Source weights are `1 + conformity` for other-sourced exposures and
/// `1 - conformity` for self-sourced ones. The frequency part normalizes the
/// per-variant weight sums (uniform fallback when all weights vanish); the
/// quality part normalizes candidate qualities. They mix linearly with weight
/// `content` on quality, and the whole window mass is scaled by
/// `1 - innovation`.
pub fn choice_distribution(
    window: &[ExposureEvent],
    params: &ModelParams,
    quality: &QualityTable,
) -> Result<ChoiceDistribution, ModelError> {
    if window.is_empty() {
        return Err(ModelError::EmptyWindow);
    }
    let alpha = params.conformity();
    let beta = params.content();
    let lambda = params.innovation();

    let mut weights: BTreeMap<&VariantId, f64> = BTreeMap::new();
    for event in window {
        let w = match event.source {
            Source::OtherSource => 1.0 + alpha,
            Source::SelfSource => 1.0 - alpha,
        };
        *weights.entry(&event.variant).or_insert(0.0) += w;
    }
    let total_weight: f64 = weights.values().sum();
    let n_candidates = weights.len() as f64;

    let quality_sum: f64 = if beta > 0.0 {
        let mut sum = 0.0;
        for variant in weights.keys() {
            sum += quality
                .get(variant)
                .ok_or_else(|| ModelError::UnknownQuality((*variant).clone()))?;
        }
        sum
    } else {
        0.0
    };

    let mut in_window = BTreeMap::new();
    for (variant, &w) in &weights {
        let p_freq = if total_weight == 0.0 {
            1.0 / n_candidates
        } else {
            w / total_weight
        };
        let p_win = if beta > 0.0 {
            let p_quality = quality.get(variant).expect("checked above") / quality_sum;
            (1.0 - beta) * p_freq + beta * p_quality
        } else {
            p_freq
        };
        in_window.insert((*variant).clone(), (1.0 - lambda) * p_win);
    }

    Ok(ChoiceDistribution {
        in_window,
        innovate_mass: lambda,
    })
}

/// Log-probability of the produced variant given the director's window.
///
/// A production outside the window is an innovation and carries `ln λ`;
/// `λ = 0` makes such an event an error.
pub fn event_log_likelihood(
    record: &ProductionRecord,
    window: &[ExposureEvent],
    params: &ModelParams,
    quality: &QualityTable,
) -> Result<f64, ModelError> {
    let dist = choice_distribution(window, params, quality)?;
    match dist.in_window.get(&record.variant) {
        Some(&p) => Ok(p.ln()),
        None => {
            if params.innovation() > 0.0 {
                Ok(params.innovation().ln())
            } else {
                Err(ModelError::ZeroProbabilityEvent)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn v(token: &str) -> VariantId {
        VariantId::new(token).unwrap()
    }

    fn ev(source: Source, token: &str) -> ExposureEvent {
        ExposureEvent {
            source,
            variant: v(token),
            order: 0,
        }
    }

    fn params(m: usize, alpha: f64, beta: f64, lambda: f64) -> ModelParams {
        ModelParams::new(m, alpha, beta, lambda).unwrap()
    }

    fn record(
        order: u64,
        concept: u32,
        director: u32,
        matcher: u32,
        token: &str,
    ) -> ProductionRecord {
        ProductionRecord {
            society: 0,
            round: 1,
            game: 1,
            order,
            concept,
            director,
            matcher,
            variant: v(token),
        }
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1, -1.1, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1, 0.0, 1.1, 0.0).is_err());
        assert!(ModelParams::new(1, 0.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1, -1.0, 1.0, 0.99).is_ok());
    }

    #[test]
    fn variant_token_non_empty() {
        assert_eq!(VariantId::new(""), Err(ModelError::EmptyVariantToken));
    }

    #[test]
    fn quality_range_enforced() {
        let mut table = QualityTable::new();
        assert!(table.insert(v("a"), 0.0).is_err());
        assert!(table.insert(v("a"), 1.5).is_err());
        assert!(table.insert(v("a"), 1.0).is_ok());
    }

    #[test]
    fn window_of_empty_log_is_empty() {
        assert!(build_window(&[], 0, 0, 100, 4).is_empty());
    }

    #[test]
    fn window_single_observation() {
        let log = vec![record(1, 7, 1, 2, "A")];
        let window = build_window(&log, 2, 7, 2, 4);
        assert_eq!(window.len(), 1);
        assert_eq!(window[0].source, Source::OtherSource);
        assert_eq!(window[0].variant, v("A"));
    }

    #[test]
    fn window_truncates_to_most_recent() {
        // Independent oracle: filter, sort, truncate by hand.
        let log: Vec<ProductionRecord> = (1..=5)
            .map(|i| record(i, 3, 1, 2, &format!("V{i}")))
            .collect();
        let window = build_window(&log, 1, 3, 100, 2);
        let mut oracle: Vec<&ProductionRecord> = log
            .iter()
            .filter(|r| r.concept == 3 && r.order < 100 && (r.director == 1 || r.matcher == 1))
            .collect();
        oracle.sort_by_key(|r| r.order);
        let oracle: Vec<VariantId> = oracle
            .iter()
            .rev()
            .take(2)
            .rev()
            .map(|r| r.variant.clone())
            .collect();
        assert_eq!(
            window.iter().map(|e| e.variant.clone()).collect::<Vec<_>>(),
            oracle
        );
        assert_eq!(window[0].variant, v("V4"));
        assert_eq!(window[1].variant, v("V5"));
    }

    #[test]
    fn window_excludes_other_concepts_and_participants() {
        let log = vec![
            record(1, 3, 1, 2, "A"),
            record(2, 4, 1, 2, "B"),
            record(3, 3, 3, 4, "C"),
            record(4, 3, 2, 1, "D"),
        ];
        let window = build_window(&log, 1, 3, 100, 10);
        let variants: Vec<&str> = window.iter().map(|e| e.variant.as_str()).collect();
        assert_eq!(variants, vec!["A", "D"]);
        assert_eq!(window[0].source, Source::SelfSource);
        assert_eq!(window[1].source, Source::OtherSource);
    }

    #[test]
    fn distribution_single_candidate() {
        let window = vec![ev(Source::SelfSource, "A")];
        let dist =
            choice_distribution(&window, &params(4, 0.0, 0.0, 0.0), &QualityTable::new()).unwrap();
        assert_eq!(dist.probability(&v("A")), 1.0);
        assert_eq!(dist.innovate_mass, 0.0);
    }

    #[test]
    fn distribution_source_weighting() {
        // w_self = 0.5, w_other = 1.5, normalized.
        let window = vec![ev(Source::SelfSource, "A"), ev(Source::OtherSource, "B")];
        let dist =
            choice_distribution(&window, &params(4, 0.5, 0.0, 0.0), &QualityTable::new()).unwrap();
        assert_abs_diff_eq!(dist.probability(&v("A")), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.probability(&v("B")), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn distribution_quality_mixture() {
        // Hand evaluation: P(A) = 0.5*(1/3) + 0.5*(0.6/0.8), P(B) = rest.
        let window = vec![
            ev(Source::SelfSource, "A"),
            ev(Source::OtherSource, "B"),
            ev(Source::OtherSource, "B"),
        ];
        let mut quality = QualityTable::new();
        quality.insert(v("A"), 0.6).unwrap();
        quality.insert(v("B"), 0.2).unwrap();
        let dist = choice_distribution(&window, &params(4, 0.0, 0.5, 0.0), &quality).unwrap();
        assert_abs_diff_eq!(
            dist.probability(&v("A")),
            0.5 * (1.0 / 3.0) + 0.5 * 0.75,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            dist.probability(&v("A")),
            0.5416666666666666,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            dist.probability(&v("B")),
            0.4583333333333333,
            epsilon = 1e-12
        );
    }

    #[test]
    fn distribution_fully_egocentric() {
        let window = vec![ev(Source::SelfSource, "A"), ev(Source::OtherSource, "B")];
        let dist =
            choice_distribution(&window, &params(4, -1.0, 0.0, 0.0), &QualityTable::new()).unwrap();
        assert_eq!(dist.probability(&v("A")), 1.0);
        assert_eq!(dist.probability(&v("B")), 0.0);
    }

    #[test]
    fn distribution_zero_weight_fallback_is_uniform() {
        // alpha = 1 with a purely self-sourced window: all weights vanish.
        let window = vec![ev(Source::SelfSource, "A"), ev(Source::SelfSource, "B")];
        let dist =
            choice_distribution(&window, &params(4, 1.0, 0.0, 0.0), &QualityTable::new()).unwrap();
        assert_eq!(dist.probability(&v("A")), 0.5);
        assert_eq!(dist.probability(&v("B")), 0.5);
    }

    #[test]
    fn distribution_empty_window_errors() {
        assert_eq!(
            choice_distribution(&[], &params(4, 0.0, 0.0, 0.0), &QualityTable::new()),
            Err(ModelError::EmptyWindow)
        );
    }

    #[test]
    fn distribution_unknown_quality_errors() {
        let window = vec![ev(Source::SelfSource, "A")];
        assert_eq!(
            choice_distribution(&window, &params(4, 0.0, 0.5, 0.0), &QualityTable::new()),
            Err(ModelError::UnknownQuality(v("A")))
        );
    }

    #[test]
    fn likelihood_sole_variant_repeat_is_zero() {
        let window = vec![ev(Source::SelfSource, "A")];
        let r = record(10, 0, 1, 2, "A");
        let ll = event_log_likelihood(&r, &window, &params(4, 0.0, 0.0, 0.0), &QualityTable::new())
            .unwrap();
        assert_eq!(ll, 0.0);
    }

    #[test]
    fn likelihood_half_probability_choice() {
        let window = vec![ev(Source::SelfSource, "A"), ev(Source::OtherSource, "B")];
        let r = record(10, 0, 1, 2, "A");
        let ll = event_log_likelihood(&r, &window, &params(4, 0.0, 0.0, 0.0), &QualityTable::new())
            .unwrap();
        assert_abs_diff_eq!(ll, 0.5f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn likelihood_innovation_mass() {
        let window = vec![ev(Source::SelfSource, "A")];
        let r = record(10, 0, 1, 2, "Z");
        let ll = event_log_likelihood(
            &r,
            &window,
            &params(4, 0.0, 0.0, 0.01),
            &QualityTable::new(),
        )
        .unwrap();
        assert_abs_diff_eq!(ll, 0.01f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn likelihood_zero_innovation_unseen_variant_errors() {
        let window = vec![ev(Source::SelfSource, "A")];
        let r = record(10, 0, 1, 2, "Z");
        assert_eq!(
            event_log_likelihood(&r, &window, &params(4, 0.0, 0.0, 0.0), &QualityTable::new()),
            Err(ModelError::ZeroProbabilityEvent)
        );
    }

    // Property-test generators.

    fn arb_window() -> impl Strategy<Value = Vec<ExposureEvent>> {
        prop::collection::vec((any::<bool>(), 0usize..4), 1..=6).prop_map(|events| {
            events
                .into_iter()
                .enumerate()
                .map(|(i, (is_self, idx))| ExposureEvent {
                    source: if is_self {
                        Source::SelfSource
                    } else {
                        Source::OtherSource
                    },
                    variant: VariantId::new(format!("V{idx}")).unwrap(),
                    order: i as u64,
                })
                .collect()
        })
    }

    fn full_quality() -> QualityTable {
        let mut table = QualityTable::new();
        for idx in 0..4 {
            table
                .insert(v(&format!("V{idx}")), 0.1 + 0.2 * idx as f64)
                .unwrap();
        }
        table
    }

    proptest! {
        #[test]
        fn prop_normalization(
            window in arb_window(),
            alpha in -1.0f64..=1.0,
            beta in 0.0f64..=1.0,
            lambda in 0.0f64..0.9,
        ) {
            let p = params(4, alpha, beta, lambda);
            let dist = choice_distribution(&window, &p, &full_quality()).unwrap();
            prop_assert!((dist.total_mass() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn prop_drift_reduction_exact(window in arb_window()) {
            let p = params(4, 0.0, 0.0, 0.0);
            let dist = choice_distribution(&window, &p, &QualityTable::new()).unwrap();
            let len = window.len() as f64;
            for (variant, &prob) in &dist.in_window {
                let count = window.iter().filter(|e| &e.variant == variant).count() as f64;
                prop_assert_eq!(prob, count / len);
            }
        }

        #[test]
        fn prop_quality_irrelevant_at_beta_zero(
            window in arb_window(),
            alpha in -1.0f64..=1.0,
            lambda in 0.0f64..0.9,
        ) {
            let p = params(4, alpha, 0.0, lambda);
            let with = choice_distribution(&window, &p, &full_quality()).unwrap();
            let without = choice_distribution(&window, &p, &QualityTable::new()).unwrap();
            prop_assert_eq!(with, without);
        }

        #[test]
        fn prop_quality_scale_invariance(
            window in arb_window(),
            alpha in -1.0f64..=1.0,
            beta in 0.0f64..=1.0,
            scale in 0.1f64..=1.0,
        ) {
            let p = params(4, alpha, beta, 0.0);
            let base = full_quality();
            let mut scaled = QualityTable::new();
            for (variant, q) in base.iter() {
                scaled.insert(variant.clone(), q * scale).unwrap();
            }
            let d1 = choice_distribution(&window, &p, &base).unwrap();
            let d2 = choice_distribution(&window, &p, &scaled).unwrap();
            for (variant, &prob) in &d1.in_window {
                prop_assert!((prob - d2.probability(variant)).abs() < 1e-12);
            }
        }

        #[test]
        fn prop_label_symmetry(
            window in arb_window(),
            alpha in -1.0f64..=1.0,
            beta in 0.0f64..=1.0,
        ) {
            // Swap V0 <-> V1 everywhere; the distribution must follow.
            let p = params(4, alpha, beta, 0.0);
            let swap = |variant: &VariantId| -> VariantId {
                match variant.as_str() {
                    "V0" => v("V1"),
                    "V1" => v("V0"),
                    other => v(other),
                }
            };
            let swapped: Vec<ExposureEvent> = window
                .iter()
                .map(|e| ExposureEvent { source: e.source, variant: swap(&e.variant), order: e.order })
                .collect();
            let base = full_quality();
            let mut swapped_quality = QualityTable::new();
            for (variant, q) in base.iter() {
                swapped_quality.insert(swap(variant), q).unwrap();
            }
            let d1 = choice_distribution(&window, &p, &base).unwrap();
            let d2 = choice_distribution(&swapped, &p, &swapped_quality).unwrap();
            for (variant, &prob) in &d1.in_window {
                prop_assert!((prob - d2.probability(&swap(variant))).abs() < 1e-12);
            }
        }

        #[test]
        fn prop_extreme_alpha_excludes_single_source_variants(window in arb_window()) {
            let has_other = window.iter().any(|e| e.source == Source::OtherSource);
            let has_self = window.iter().any(|e| e.source == Source::SelfSource);
            if has_other && has_self {
                let ego = choice_distribution(&window, &params(4, -1.0, 0.0, 0.0), &QualityTable::new()).unwrap();
                let conf = choice_distribution(&window, &params(4, 1.0, 0.0, 0.0), &QualityTable::new()).unwrap();
                for variant in ego.in_window.keys() {
                    let only_other = window.iter().filter(|e| &e.variant == variant).all(|e| e.source == Source::OtherSource);
                    let only_self = window.iter().filter(|e| &e.variant == variant).all(|e| e.source == Source::SelfSource);
                    if only_other {
                        prop_assert_eq!(ego.probability(variant), 0.0);
                    }
                    if only_self {
                        prop_assert_eq!(conf.probability(variant), 0.0);
                    }
                }
            }
        }

        #[test]
        fn prop_other_sourced_mass_monotone_in_alpha(window in arb_window()) {
            // For a variant appearing only with OtherSource, probability is
            // non-decreasing in alpha. Mixed-source windows only: an all-other
            // window hits the uniform fallback at alpha = -1.
            if !window.iter().any(|e| e.source == Source::SelfSource) {
                return Ok(());
            }
            let alphas = [-1.0, -0.6, -0.2, 0.0, 0.2, 0.6, 1.0];
            let variants: Vec<VariantId> = {
                let mut seen: Vec<VariantId> = Vec::new();
                for e in &window {
                    if !seen.contains(&e.variant) {
                        seen.push(e.variant.clone());
                    }
                }
                seen
            };
            for variant in variants {
                let only_other = window
                    .iter()
                    .filter(|e| e.variant == variant)
                    .all(|e| e.source == Source::OtherSource);
                if !only_other {
                    continue;
                }
                let mut last = -1.0f64;
                for &alpha in &alphas {
                    let dist = choice_distribution(&window, &params(4, alpha, 0.0, 0.0), &QualityTable::new()).unwrap();
                    let prob = dist.probability(&variant);
                    prop_assert!(prob >= last - 1e-12);
                    last = prob;
                }
            }
        }
    }
}
