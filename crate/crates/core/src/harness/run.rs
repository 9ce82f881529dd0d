use serde::{Deserialize, Serialize};

use crate::engine::{init_run, RunConfig, StepRecord};
use crate::error::Result;
use crate::observables::{
    mean_strategy, predictability, price_sigma, strategy_histogram, strategy_sigma,
    winning_probability, ConditionalStats, ObservableSummary, DEFAULT_BINS,
};

/// Relaxation steps kept in a trajectory dump ahead of the measurement window.
pub const TRAJECTORY_RELAX_TAIL: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub t: u64,
    /// Price at the start of step `t`.
    pub price: f64,
    pub excess_demand: i64,
    pub transaction_price: f64,
}

impl From<&StepRecord> for TrajectoryPoint {
    fn from(rec: &StepRecord) -> Self {
        Self {
            t: rec.t,
            price: rec.price_before,
            excess_demand: rec.excess_demand,
            transaction_price: rec.transaction_price,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub seed: u64,
    pub summary: ObservableSummary,
    pub trajectory: Option<Vec<TrajectoryPoint>>,
}

/// Relax without measuring, then measure for `measure_steps`.
///
/// Win/trade counters restart with the measurement window, so round trips
/// closed inside it count even if they were opened earlier. Strategy
/// observables describe the population after the window.
pub fn run_single(config: &RunConfig, dump_trajectory: bool) -> Result<RunOutput> {
    let mut sim = init_run(config)?;
    let mut rec = StepRecord::default();
    let mut trajectory = dump_trajectory.then(Vec::new);

    let tail_start = config.relax_steps.saturating_sub(TRAJECTORY_RELAX_TAIL);
    for t in 0..config.relax_steps {
        sim.step_into(&mut rec)?;
        if let Some(traj) = trajectory.as_mut().filter(|_| t >= tail_start) {
            traj.push(TrajectoryPoint::from(&rec));
        }
    }

    for agent in &mut sim.agents {
        agent.reset_counters();
    }
    let mut changes = Vec::with_capacity(config.measure_steps as usize);
    let mut conditional = ConditionalStats::new(1 << config.memory);
    for _ in 0..config.measure_steps {
        sim.step_into(&mut rec)?;
        changes.push(rec.price_change());
        conditional.record(rec.state, rec.price_change());
        if let Some(traj) = trajectory.as_mut() {
            traj.push(TrajectoryPoint::from(&rec));
        }
    }

    let strategies = sim.strategies();
    let n_trades = sim.agents.iter().map(|a| a.trades).sum();
    let has_window = !changes.is_empty();
    let summary = ObservableSummary {
        sigma_g: strategy_sigma(&strategies)?,
        g_mean: mean_strategy(&strategies)?,
        histogram: strategy_histogram(&strategies, DEFAULT_BINS)?,
        sigma_p: if has_window { Some(price_sigma(&changes)?) } else { None },
        h: has_window.then(|| predictability(&conditional)),
        p_w: has_window.then(|| winning_probability(&sim.agents)),
        n_agents: strategies.len(),
        n_price_samples: changes.len() as u64,
        n_trades,
    };
    Ok(RunOutput {
        seed: config.seed,
        summary,
        trajectory,
    })
}
