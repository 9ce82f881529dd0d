//! One seeded run of the game: agents, shared market state and the per-step
//! protocol.

mod agent;
mod config;
mod market;

pub use agent::{
    decide, maybe_mutate, reflect_unit, settle_round_trip, Action, Agent, Movement, OpenPosition,
    Transaction,
};
pub use config::{RunConfig, MAX_MEMORY};
pub use market::{aggregate_demand, transaction_price, update_price, MarketState};

use crate::draw::{seeded, Draw, RunRng};
use crate::error::{Error, Result};
use market::mix_price;

/// Everything that happened during one step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StepRecord {
    /// Step counter before the step ran.
    pub t: u64,
    /// History state the agents saw.
    pub state: usize,
    pub prediction: Option<Movement>,
    /// One action per agent, in agent order.
    pub actions: Vec<Action>,
    pub excess_demand: i64,
    pub price_before: f64,
    pub price_after: f64,
    pub transaction_price: f64,
    pub realized: Option<Movement>,
    /// Round trips closed this step, in agent order.
    pub transactions: Vec<Transaction>,
    /// Agents whose strategy was replaced this step.
    pub mutated: Vec<usize>,
}

impl StepRecord {
    pub fn price_change(&self) -> f64 {
        self.price_after - self.price_before
    }
}

#[derive(Debug, Clone)]
pub struct Simulation<R = RunRng> {
    pub agents: Vec<Agent>,
    pub market: MarketState,
    config: RunConfig,
    draw: R,
}

/// Seeded initial state.
///
/// Draw order from the run's single stream: one uniform strategy per agent
/// in index order; then, only with `initial_holding`, one coin per agent
/// deciding whether it starts with a share; then `m` history coins (oldest
/// first); then `2^m` table coins (state 0 upward).
pub fn init_run(config: &RunConfig) -> Result<Simulation<RunRng>> {
    config.validate()?;
    let mut rng = seeded(config.seed);
    let mut agents: Vec<Agent> = (0..config.agents).map(|_| Agent::new(rng.unit())).collect();
    if config.initial_holding {
        for agent in &mut agents {
            if rng.coin() {
                agent.position = Some(OpenPosition {
                    entry_price: config.initial_price,
                    t_buy: 0,
                });
            }
        }
    }
    let market = MarketState::random(config.initial_price, config.memory, &mut rng);
    Ok(Simulation {
        agents,
        market,
        config: config.clone(),
        draw: rng,
    })
}

impl<R: Draw> Simulation<R> {
    /// Assemble a run from explicit parts, e.g. for scripted scenarios.
    pub fn from_parts(config: RunConfig, agents: Vec<Agent>, market: MarketState, draw: R) -> Result<Self> {
        config.validate()?;
        if agents.len() != config.agents {
            return Err(Error::config(
                "N",
                format!("config says {} agents, {} supplied", config.agents, agents.len()),
            ));
        }
        if market.memory() != config.memory {
            return Err(Error::config(
                "m",
                format!("config says m={}, market has {}", config.memory, market.memory()),
            ));
        }
        if let Some(i) = agents.iter().position(|a| !(0.0..=1.0).contains(&a.g)) {
            return Err(Error::Domain(format!("agent {i} strategy outside [0, 1]")));
        }
        Ok(Self {
            agents,
            market,
            config,
            draw,
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn draw_mut(&mut self) -> &mut R {
        &mut self.draw
    }

    pub fn strategies(&self) -> Vec<f64> {
        self.agents.iter().map(|a| a.g).collect()
    }

    pub fn step(&mut self) -> Result<StepRecord> {
        let mut rec = StepRecord::default();
        self.step_into(&mut rec)?;
        Ok(rec)
    }

    /// Advance one step, overwriting `rec`.
    ///
    /// Order: predict; every agent decides (index order, one draw each);
    /// aggregate demand; new price; transaction price; buyers open at the
    /// transaction price; sellers settle at the same price; each seller is
    /// checked for mutation (index order); the history absorbs the realized
    /// movement (a coin flip when demand is zero); the clock ticks.
    pub fn step_into(&mut self, rec: &mut StepRecord) -> Result<()> {
        let t = self.market.t;
        let state = self.market.state();
        let prediction = self.market.predict();

        rec.actions.clear();
        let mut demand = 0i64;
        for agent in &self.agents {
            let action = decide(agent, prediction, &mut self.draw);
            demand += action.value();
            rec.actions.push(action);
        }

        let price_before = self.market.price;
        let price_after = update_price(price_before, demand);
        let p_tr = mix_price(price_before, price_after, self.config.beta);

        rec.transactions.clear();
        rec.mutated.clear();
        for (agent, action) in self.agents.iter_mut().zip(&rec.actions) {
            if *action == Action::Buy {
                debug_assert!(!agent.holds_stock());
                agent.position = Some(OpenPosition {
                    entry_price: p_tr,
                    t_buy: t,
                });
            }
        }
        for (id, (agent, action)) in self.agents.iter_mut().zip(&rec.actions).enumerate() {
            if *action == Action::Sell {
                let tx = settle_round_trip(agent, id, p_tr, t, self.config.loss_ratio)?;
                rec.transactions.push(tx);
            }
        }
        for tx in &rec.transactions {
            let agent = &mut self.agents[tx.agent_id];
            if maybe_mutate(agent, self.config.threshold, self.config.epsilon, &mut self.draw) {
                rec.mutated.push(tx.agent_id);
            }
        }

        let realized = match demand.signum() {
            1 => Movement::Up,
            -1 => Movement::Down,
            _ => Movement::from_coin(&mut self.draw),
        };
        self.market.update_history_and_table(realized);
        self.market.price = price_after;
        self.market.t = t + 1;

        rec.t = t;
        rec.state = state;
        rec.prediction = Some(prediction);
        rec.excess_demand = demand;
        rec.price_before = price_before;
        rec.price_after = price_after;
        rec.transaction_price = p_tr;
        rec.realized = Some(realized);
        Ok(())
    }

    /// Run `steps` steps, discarding the records.
    pub fn advance(&mut self, steps: u64) -> Result<()> {
        let mut rec = StepRecord::default();
        for _ in 0..steps {
            self.step_into(&mut rec)?;
        }
        Ok(())
    }
}
