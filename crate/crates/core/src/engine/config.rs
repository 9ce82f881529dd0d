use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported memory length. The prediction table holds `2^m` entries.
pub const MAX_MEMORY: usize = 24;

/// Every model and protocol parameter of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Number of agents.
    #[serde(rename = "N")]
    pub agents: usize,
    /// Memory length: number of past price movements in the public history.
    #[serde(rename = "m")]
    pub memory: usize,
    /// Mutation threshold on the strategy score; must be negative.
    #[serde(rename = "D")]
    pub threshold: f64,
    /// Loss-sensitivity ratio applied to losing round trips.
    #[serde(rename = "R")]
    pub loss_ratio: f64,
    /// Market-impact weight of the post-trade price in the transaction price.
    pub beta: f64,
    /// Half-width of the mutation window around the current strategy.
    pub epsilon: f64,
    pub relax_steps: u64,
    pub measure_steps: u64,
    pub seed: u64,
    pub initial_price: f64,
    /// Start with a random half of the population holding one share.
    pub initial_holding: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            agents: 101,
            memory: 3,
            threshold: -4.0,
            loss_ratio: 1.0,
            beta: 0.0,
            epsilon: 0.125,
            relax_steps: 100_000,
            measure_steps: 1_000,
            seed: 0,
            initial_price: 0.0,
            initial_holding: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.agents < 1 {
            return Err(Error::config("N", "must be at least 1"));
        }
        if self.memory < 1 || self.memory > MAX_MEMORY {
            return Err(Error::config(
                "m",
                format!("must lie in 1..={MAX_MEMORY}, got {}", self.memory),
            ));
        }
        // `!(x < 0)` also rejects NaN.
        if !(self.threshold < 0.0) || !self.threshold.is_finite() {
            return Err(Error::config(
                "D",
                format!("must be negative and finite, got {}", self.threshold),
            ));
        }
        if !(self.loss_ratio >= 1.0) || !self.loss_ratio.is_finite() {
            return Err(Error::config(
                "R",
                format!("must be finite and >= 1, got {}", self.loss_ratio),
            ));
        }
        check_beta(self.beta)?;
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::config(
                "epsilon",
                format!("must lie in (0, 1], got {}", self.epsilon),
            ));
        }
        if !self.initial_price.is_finite() {
            return Err(Error::config("initial_price", "must be finite"));
        }
        Ok(())
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::config("beta", format!("must lie in [0, 1], got {beta}")))
    }
}
