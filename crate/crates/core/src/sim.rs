//! Synthetic micro-society generator: round-robin partner rotation,
//! director/matcher games, and variant production under known model
//! parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{
    build_window, choice_distribution, ModelParams, ProductionRecord, QualityTable, VariantId,
};

/// Configuration for one synthetic run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub n_societies: u32,
    /// Must be even; round-robin rotation needs perfect pairings.
    pub n_participants: u32,
    pub n_concepts: u32,
    /// Games played by each pairing, roles alternating each game.
    pub games_per_pair: u32,
    pub true_params: ModelParams,
    /// Simulator-side probability of inventing a fresh variant after
    /// initialization; replaces the model's innovation mass as the
    /// innovation channel.
    pub innovation_rate: f64,
    /// Invented variants draw a quality uniformly from (quality_min, quality_max].
    pub quality_min: f64,
    pub quality_max: f64,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_societies: 4,
            n_participants: 8,
            n_concepts: 16,
            games_per_pair: 6,
            true_params: ModelParams::new(4, 0.0, 0.0, 0.01).unwrap(),
            innovation_rate: 0.01,
            quality_min: 0.05,
            quality_max: 1.0,
            seed: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_societies < 1 {
            return Err(SimError::InvalidConfig("n_societies must be >= 1".into()));
        }
        if self.n_participants < 2 || self.n_participants % 2 != 0 {
            return Err(SimError::InvalidConfig(
                "n_participants must be even".into(),
            ));
        }
        if self.n_concepts < 1 {
            return Err(SimError::InvalidConfig("n_concepts must be >= 1".into()));
        }
        if self.games_per_pair < 1 {
            return Err(SimError::InvalidConfig(
                "games_per_pair must be >= 1".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.innovation_rate) {
            return Err(SimError::InvalidConfig(
                "innovation_rate must be in [0, 1)".into(),
            ));
        }
        if !(self.quality_min > 0.0
            && self.quality_min < self.quality_max
            && self.quality_max <= 1.0)
        {
            return Err(SimError::InvalidConfig(
                "quality range must satisfy 0 < quality_min < quality_max <= 1".into(),
            ));
        }
        Ok(())
    }

    /// Records produced by one society.
    pub fn records_per_society(&self) -> u64 {
        let n = self.n_participants as u64;
        (n - 1) * (n / 2) * self.games_per_pair as u64 * self.n_concepts as u64
    }

    /// Total records across all societies.
    pub fn total_records(&self) -> u64 {
        self.n_societies as u64 * self.records_per_society()
    }
}

/// Round-robin schedule: one round per rotation, disjoint pairs per round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub rounds: Vec<Vec<(u32, u32)>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("{0}")]
    InvalidConfig(String),
    #[error("round-robin schedule requires an even participant count >= 2, got {0}")]
    OddParticipants(u32),
}

/// Circle-method round robin for `n` participants (ids `0..n`).
///
/// Yields `n - 1` rounds; every participant appears once per round and every
/// unordered pair appears exactly once overall. Deterministic for a given `n`.
pub fn round_robin_schedule(n: u32) -> Result<Schedule, SimError> {
    if n < 2 || n % 2 != 0 {
        return Err(SimError::OddParticipants(n));
    }
    let n = n as usize;
    // Participant 0 stays fixed; the rest rotate one slot per round.
    let mut ring: Vec<u32> = (0..n as u32).collect();
    let mut rounds = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        let mut pairs = Vec::with_capacity(n / 2);
        for i in 0..n / 2 {
            let a = ring[i];
            let b = ring[n - 1 - i];
            pairs.push((a.min(b), a.max(b)));
        }
        rounds.push(pairs);
        ring[1..].rotate_right(1);
    }
    Ok(Schedule { rounds })
}

/// Generates the full interaction log for all societies.
///
/// Each society runs the round-robin schedule; each pairing plays
/// `games_per_pair` games with the lower-id participant directing first; the
/// director produces one variant per concept in ascending concept order. A
/// director with an empty window invents a fresh variant; otherwise they
/// invent with probability `innovation_rate` and else sample from the model's
/// window distribution. Byte-reproducible for a fixed seed.
pub fn simulate(
    config: &SimConfig,
) -> Result<(Vec<ProductionRecord>, QualityTable, ModelParams), SimError> {
    config.validate()?;
    let schedule = round_robin_schedule(config.n_participants)?;
    let per_society = config.records_per_society();

    let mut log = Vec::with_capacity(config.total_records() as usize);
    let mut quality = QualityTable::new();

    for society in 0..config.n_societies {
        let mut rng = society_rng(config.seed, society);
        let mut society_log: Vec<ProductionRecord> = Vec::with_capacity(per_society as usize);
        // Per (participant, concept) counter for fresh variant tokens.
        let mut invent_counts = vec![0u32; (config.n_participants * config.n_concepts) as usize];
        let base_order = society as u64 * per_society;
        let mut next_order = base_order + 1;

        for (round_idx, round) in schedule.rounds.iter().enumerate() {
            for &(low, high) in round {
                for game in 1..=config.games_per_pair {
                    let (director, matcher) = if game % 2 == 1 {
                        (low, high)
                    } else {
                        (high, low)
                    };
                    for concept in 0..config.n_concepts {
                        let window = build_window(
                            &society_log,
                            director,
                            concept,
                            next_order,
                            config.true_params.memory_size(),
                        );
                        // The epsilon draw happens only for non-empty windows;
                        // short-circuit keeps the stream deterministic.
                        let variant = if window.is_empty()
                            || rng.gen::<f64>() < config.innovation_rate
                        {
                            invent(
                                config,
                                society,
                                director,
                                concept,
                                &mut invent_counts,
                                &mut quality,
                                &mut rng,
                            )
                        } else {
                            // Innovation handled by the simulator's channel, so
                            // renormalize the in-window mass.
                            let dist = choice_distribution(&window, &config.true_params, &quality)
                                .expect("non-empty window");
                            let scale = 1.0 - config.true_params.innovation();
                            let u: f64 = rng.gen::<f64>() * scale;
                            let mut acc = 0.0;
                            let mut chosen = None;
                            for (v, &p) in &dist.in_window {
                                acc += p;
                                if u < acc {
                                    chosen = Some(v.clone());
                                    break;
                                }
                            }
                            // u can graze the top of the accumulated mass.
                            chosen.unwrap_or_else(|| {
                                dist.in_window.keys().next_back().unwrap().clone()
                            })
                        };
                        society_log.push(ProductionRecord {
                            society,
                            round: round_idx as u32 + 1,
                            game,
                            order: next_order,
                            concept,
                            director,
                            matcher,
                            variant,
                        });
                        next_order += 1;
                    }
                }
            }
        }
        log.append(&mut society_log);
    }

    Ok((log, quality, config.true_params.clone()))
}

fn society_rng(seed: u64, society: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (society as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn invent(
    config: &SimConfig,
    society: u32,
    participant: u32,
    concept: u32,
    invent_counts: &mut [u32],
    quality: &mut QualityTable,
    rng: &mut ChaCha8Rng,
) -> VariantId {
    let slot = (participant * config.n_concepts + concept) as usize;
    let count = invent_counts[slot];
    invent_counts[slot] += 1;
    let token = format!("s{society}p{participant}c{concept}n{count}");
    let variant = VariantId::new(token).expect("non-empty token");
    // Uniform on (quality_min, quality_max].
    let q = config.quality_max - rng.gen::<f64>() * (config.quality_max - config.quality_min);
    quality.insert(variant.clone(), q).expect("q in range");
    variant
}
