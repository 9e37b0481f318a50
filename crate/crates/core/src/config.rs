//! Run configuration: flat `key = value` files with `#` comments. Unknown
//! keys are errors so sweep typos fail fast.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::fit::ParameterGrid;
use crate::model::ModelParams;
use crate::sim::SimConfig;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Unreadable(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("{0}")]
    Invalid(String),
}

/// Fully resolved run configuration; every field explicit after defaulting.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_societies: u32,
    pub n_participants: u32,
    pub n_concepts: u32,
    pub games_per_pair: u32,
    pub memory_size: usize,
    pub conformity: f64,
    pub content: f64,
    /// Model innovation mass, shared by the simulator and the fitter.
    pub innovation: f64,
    /// Simulator-side fresh-variant probability.
    pub innovation_rate: f64,
    pub quality_min: f64,
    pub quality_max: f64,
    pub seed: u64,
    pub threshold: f64,
    pub memory_sizes: Vec<usize>,
    pub conformity_step: f64,
    pub content_step: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_societies: 4,
            n_participants: 8,
            n_concepts: 16,
            games_per_pair: 6,
            memory_size: 4,
            conformity: 0.0,
            content: 0.0,
            innovation: 0.01,
            innovation_rate: 0.01,
            quality_min: 0.05,
            quality_max: 1.0,
            seed: 0,
            threshold: 19.0,
            memory_sizes: vec![2, 4, 8, 16],
            conformity_step: 0.2,
            content_step: 0.1,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ConfigError::Unreadable(format!("{}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut config = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                line: line_no,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            let key = key.trim();
            let value = value.trim();
            config.apply(key, value).map_err(|e| match e {
                ConfigError::UnknownKey(_) => e,
                other => ConfigError::Parse {
                    line: line_no,
                    message: other.to_string(),
                },
            })?;
        }
        config.validate()?;
        Ok(config)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
            value
                .parse()
                .map_err(|_| ConfigError::Invalid(format!("invalid value for {key}: '{value}'")))
        }
        match key {
            "n_societies" => self.n_societies = num(key, value)?,
            "n_participants" => self.n_participants = num(key, value)?,
            "n_concepts" => self.n_concepts = num(key, value)?,
            "games_per_pair" => self.games_per_pair = num(key, value)?,
            "memory_size" => self.memory_size = num(key, value)?,
            "conformity" => self.conformity = num(key, value)?,
            "content" => self.content = num(key, value)?,
            "innovation" => self.innovation = num(key, value)?,
            "innovation_rate" => self.innovation_rate = num(key, value)?,
            "quality_min" => self.quality_min = num(key, value)?,
            "quality_max" => self.quality_max = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "threshold" => self.threshold = num(key, value)?,
            "memory_sizes" => {
                let sizes: Result<Vec<usize>, _> =
                    value.split(',').map(|s| s.trim().parse()).collect();
                self.memory_sizes = sizes.map_err(|_| {
                    ConfigError::Invalid(format!("invalid value for memory_sizes: '{value}'"))
                })?;
            }
            "conformity_step" => self.conformity_step = num(key, value)?,
            "content_step" => self.content_step = num(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_participants < 2 || self.n_participants % 2 != 0 {
            return Err(ConfigError::Invalid("n_participants must be even".into()));
        }
        if self.threshold <= 1.0 {
            return Err(ConfigError::Invalid("threshold must be > 1".into()));
        }
        self.sim_config()
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.grid()
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(())
    }

    pub fn true_params(&self) -> Result<ModelParams, ConfigError> {
        ModelParams::new(
            self.memory_size,
            self.conformity,
            self.content,
            self.innovation,
        )
        .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            n_societies: self.n_societies,
            n_participants: self.n_participants,
            n_concepts: self.n_concepts,
            games_per_pair: self.games_per_pair,
            true_params: ModelParams::new(
                self.memory_size.max(1),
                self.conformity.clamp(-1.0, 1.0),
                self.content.clamp(0.0, 1.0),
                self.innovation.clamp(0.0, 0.999),
            )
            .expect("clamped params"),
            innovation_rate: self.innovation_rate,
            quality_min: self.quality_min,
            quality_max: self.quality_max,
            seed: self.seed,
        }
    }

    /// Grid axes from the configured memory sizes and step widths. Steps must
    /// evenly divide the unit interval so 0.0 is always on the grid.
    pub fn grid(&self) -> ParameterGrid {
        let conf_steps = (1.0 / self.conformity_step).round().max(1.0) as i64;
        let cont_steps = (1.0 / self.content_step).round().max(1.0) as i64;
        ParameterGrid {
            memory_sizes: self.memory_sizes.clone(),
            conformity_values: (-conf_steps..=conf_steps)
                .map(|k| k as f64 / conf_steps as f64)
                .collect(),
            content_values: (0..=cont_steps)
                .map(|k| k as f64 / cont_steps as f64)
                .collect(),
            innovation: self.innovation,
        }
    }

    /// Canonical `key = value` rendering of the resolved configuration.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n_societies = {}", self.n_societies).unwrap();
        writeln!(out, "n_participants = {}", self.n_participants).unwrap();
        writeln!(out, "n_concepts = {}", self.n_concepts).unwrap();
        writeln!(out, "games_per_pair = {}", self.games_per_pair).unwrap();
        writeln!(out, "memory_size = {}", self.memory_size).unwrap();
        writeln!(out, "conformity = {}", self.conformity).unwrap();
        writeln!(out, "content = {}", self.content).unwrap();
        writeln!(out, "innovation = {}", self.innovation).unwrap();
        writeln!(out, "innovation_rate = {}", self.innovation_rate).unwrap();
        writeln!(out, "quality_min = {}", self.quality_min).unwrap();
        writeln!(out, "quality_max = {}", self.quality_max).unwrap();
        writeln!(out, "seed = {}", self.seed).unwrap();
        writeln!(out, "threshold = {}", self.threshold).unwrap();
        writeln!(
            out,
            "memory_sizes = {}",
            self.memory_sizes
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
        .unwrap();
        writeln!(out, "conformity_step = {}", self.conformity_step).unwrap();
        writeln!(out, "content_step = {}", self.content_step).unwrap();
        out
    }
}
