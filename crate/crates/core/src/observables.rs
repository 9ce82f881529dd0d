//! Measured quantities of a run: strategy spread and mean, price-change
//! fluctuation, history-conditioned predictability, winning probability,
//! strategy histograms and ordinary least-squares fits.
//!
//! Standard deviations use the population (divide-by-n) raw-moment form.

use serde::{Deserialize, Serialize};

use crate::engine::Agent;
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSummary {
    pub sigma_g: f64,
    pub g_mean: f64,
    /// Strategy mass per equal-width bin over `[0, 1]`.
    pub histogram: Vec<f64>,
    /// `None` when the measurement window is empty.
    pub sigma_p: Option<f64>,
    pub h: Option<f64>,
    pub p_w: Option<f64>,
    pub n_agents: usize,
    pub n_price_samples: u64,
    pub n_trades: u64,
}

impl ObservableSummary {
    pub fn has_price_window(&self) -> bool {
        self.n_price_samples > 0
    }
}

/// Per-history occurrence counts and price-change sums.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConditionalStats {
    counts: Vec<u64>,
    sums: Vec<f64>,
}

impl ConditionalStats {
    pub fn new(states: usize) -> Self {
        Self {
            counts: vec![0; states],
            sums: vec![0.0; states],
        }
    }

    pub fn from_series(states: usize, series: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut stats = Self::new(states);
        for (state, dp) in series {
            stats.record(state, dp);
        }
        stats
    }

    #[inline]
    pub fn record(&mut self, state: usize, price_change: f64) {
        self.counts[state] += 1;
        self.sums[state] += price_change;
    }

    pub fn states(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, state: usize) -> u64 {
        self.counts[state]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Empirical frequency of `state`.
    pub fn frequency(&self, state: usize) -> f64 {
        match self.total() {
            0 => 0.0,
            n => self.counts[state] as f64 / n as f64,
        }
    }

    /// Mean price change after `state`; `None` if it was never visited.
    pub fn conditional_mean(&self, state: usize) -> Option<f64> {
        match self.counts[state] {
            0 => None,
            c => Some(self.sums[state] / c as f64),
        }
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn raw_moment_sd(xs: &[f64]) -> f64 {
    let m1 = mean(xs);
    let m2 = xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64;
    (m2 - m1 * m1).max(0.0).sqrt()
}

/// Population standard deviation of the strategies.
pub fn strategy_sigma(strategies: &[f64]) -> Result<f64> {
    if strategies.is_empty() {
        return Err(Error::Domain("strategy_sigma of an empty population".into()));
    }
    Ok(raw_moment_sd(strategies))
}

/// Population standard deviation of the price changes in the window.
pub fn price_sigma(price_changes: &[f64]) -> Result<f64> {
    if price_changes.is_empty() {
        return Err(Error::Domain("price_sigma over an empty window".into()));
    }
    Ok(raw_moment_sd(price_changes))
}

/// Frequency-weighted sum of squared conditional mean price changes.
/// Unvisited states contribute nothing; an empty record gives zero.
pub fn predictability(conditional: &ConditionalStats) -> f64 {
    let total = conditional.total();
    if total == 0 {
        return 0.0;
    }
    (0..conditional.states())
        .filter_map(|s| {
            conditional
                .conditional_mean(s)
                .map(|m| conditional.count(s) as f64 / total as f64 * m * m)
        })
        .sum()
}

/// Fraction of winning round trips across the population, from the
/// agents' window counters. Zero when nobody traded.
pub fn winning_probability(agents: &[Agent]) -> f64 {
    let (wins, trades) = agents
        .iter()
        .fold((0u64, 0u64), |(w, n), a| (w + a.wins, n + a.trades));
    if trades == 0 {
        0.0
    } else {
        wins as f64 / trades as f64
    }
}

/// Normalized mass in `bins` equal-width bins over `[0, 1]`; the last bin is
/// closed on the right so `g = 1` lands there.
pub fn strategy_histogram(strategies: &[f64], bins: usize) -> Result<Vec<f64>> {
    if bins < 2 {
        return Err(Error::Domain(format!("histogram needs at least 2 bins, got {bins}")));
    }
    let mut counts = vec![0u64; bins];
    for &g in strategies {
        let idx = ((g * bins as f64).floor() as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = strategies.len() as f64;
    Ok(counts
        .into_iter()
        .map(|c| if n > 0.0 { c as f64 / n } else { 0.0 })
        .collect())
}

pub fn mean_strategy(strategies: &[f64]) -> Result<f64> {
    if strategies.is_empty() {
        return Err(Error::Domain("mean_strategy of an empty population".into()));
    }
    Ok(mean(strategies))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// One when the residuals vanish, including a flat `y`.
    pub r_squared: f64,
    pub n_points: usize,
}

impl LinearFit {
    /// Correlation coefficient, signed like the slope.
    pub fn r(&self) -> f64 {
        self.r_squared.sqrt().copysign(self.slope)
    }
}

/// Ordinary least squares `y = slope * x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::Domain(format!(
            "linear_fit: {} x values but {} y values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::Domain("linear_fit needs at least two points".into()));
    }
    let mx = mean(xs);
    let my = mean(ys);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::Domain("linear_fit: all x values are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
        n_points: xs.len(),
    })
}
