//! Closed-form predictions: the minority-game winning rate and strategy
//! density, the all-in/all-out round-trip profit that separates the
//! majority-wins and minority-wins regimes, and the critical strategies
//! bounding the dominant cluster at low market impact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation used when normalizing the endpoint-divergent density.
pub const DENSITY_CUTOFF: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryParams {
    #[serde(rename = "N")]
    pub agents: usize,
    #[serde(rename = "R")]
    pub loss_ratio: f64,
    #[serde(rename = "D")]
    pub threshold: f64,
    /// Population-size scale `a(N)`; no closed form is known, default 0.
    #[serde(rename = "aN")]
    pub scale: f64,
    pub beta: f64,
}

impl Default for TheoryParams {
    fn default() -> Self {
        Self {
            agents: 101,
            loss_ratio: 1.0,
            threshold: -4.0,
            scale: 0.0,
            beta: 0.0,
        }
    }
}

impl TheoryParams {
    pub fn validate(&self) -> Result<()> {
        if self.agents < 1 {
            return Err(Error::config("N", "must be at least 1"));
        }
        if !(self.loss_ratio >= 1.0) {
            return Err(Error::config("R", "must be >= 1"));
        }
        crate::engine::RunConfig {
            beta: self.beta,
            ..Default::default()
        }
        .validate()
    }

    fn threshold_term(&self) -> f64 {
        self.scale * self.threshold
    }
}

/// Winning rate of strategy `g` in the plain evolutionary minority game.
pub fn tau(g: f64, agents: usize) -> f64 {
    0.5 - g * (1.0 - g) / (agents as f64).sqrt()
}

/// Unnormalized strategy density `1 / (1/2 - tau(g))`.
pub fn emg_density(g: f64, agents: usize) -> Result<f64> {
    if !(g > 0.0 && g < 1.0) {
        return Err(Error::Singularity(format!(
            "strategy density diverges at g = {g}; needs 0 < g < 1"
        )));
    }
    Ok(1.0 / (0.5 - tau(g, agents)))
}

/// Density normalized over `[DENSITY_CUTOFF, 1 - DENSITY_CUTOFF]`, zero
/// outside that interval.
pub fn emg_density_normalized(g: f64, agents: usize) -> Result<f64> {
    if !(DENSITY_CUTOFF..=1.0 - DENSITY_CUTOFF).contains(&g) {
        return Ok(0.0);
    }
    Ok(emg_density(g, agents)? / density_mass(agents))
}

/// Composite Simpson integral of the density over the truncated interval.
/// Nodes are spaced uniformly in log-odds, where the integrand is smooth.
pub fn density_mass(agents: usize) -> f64 {
    const PANELS: usize = 4096;
    let lo = logit(DENSITY_CUTOFF);
    let hi = logit(1.0 - DENSITY_CUTOFF);
    let h = (hi - lo) / PANELS as f64;
    // g = sigmoid(u) and dg = g(1-g) du
    let f = |u: f64| {
        let g = 1.0 / (1.0 + (-u).exp());
        emg_density(g, agents).expect("interior point") * g * (1.0 - g)
    };
    let mut acc = f(lo) + f(hi);
    for k in 1..PANELS {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + k as f64 * h);
    }
    acc * h / 3.0
}

fn logit(g: f64) -> f64 {
    (g / (1.0 - g)).ln()
}

/// Round-trip transaction-price profit when the whole population buys at
/// one step and sells at the next: `sqrt(N) (1 - 2 beta)`.
pub fn majority_roundtrip_profit(agents: usize, beta: f64) -> f64 {
    (agents as f64).sqrt() * (1.0 - 2.0 * beta)
}

/// Lower edge of the surviving strategies in a `g > 1/2` population.
pub fn critical_strategy_high(params: &TheoryParams) -> f64 {
    (params.threshold_term() + params.loss_ratio) / (1.0 + params.loss_ratio)
}

/// Upper edge of the surviving strategies in a `g < 1/2` population.
pub fn critical_strategy_low(params: &TheoryParams) -> f64 {
    (1.0 - params.threshold_term()) / (1.0 + params.loss_ratio)
}
