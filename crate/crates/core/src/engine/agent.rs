use serde::{Deserialize, Serialize};

use crate::draw::Draw;
use crate::error::{Error, Result};

/// Direction of one price change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Movement {
    Up,
    Down,
}

impl Movement {
    /// History bit: up = 1, down = 0.
    #[inline]
    pub fn bit(self) -> usize {
        match self {
            Movement::Up => 1,
            Movement::Down => 0,
        }
    }

    #[inline]
    pub fn from_bit(bit: usize) -> Self {
        if bit & 1 == 1 {
            Movement::Up
        } else {
            Movement::Down
        }
    }

    /// Fair coin: up when the draw falls below one half.
    pub fn from_coin(draw: &mut impl Draw) -> Self {
        if draw.coin() {
            Movement::Up
        } else {
            Movement::Down
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Movement::Up => 'U',
            Movement::Down => 'D',
        }
    }
}

/// One agent's order for a step. The discriminant is the contribution to
/// excess demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    Buy = 1,
    Sell = -1,
    Hold = 0,
}

impl Action {
    #[inline]
    pub fn value(self) -> i64 {
        self as i64
    }
}

/// An open long position of one share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpenPosition {
    pub entry_price: f64,
    pub t_buy: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    /// Probability of following the shared prediction.
    pub g: f64,
    /// Loss-weighted accumulated round-trip profit since `g` was adopted.
    pub score: f64,
    /// `Some` exactly while the agent holds stock.
    pub position: Option<OpenPosition>,
    pub wins: u64,
    pub trades: u64,
}

impl Agent {
    pub fn new(g: f64) -> Self {
        Self {
            g,
            score: 0.0,
            position: None,
            wins: 0,
            trades: 0,
        }
    }

    #[inline]
    pub fn holds_stock(&self) -> bool {
        self.position.is_some()
    }

    pub fn entry_price(&self) -> Option<f64> {
        self.position.map(|p| p.entry_price)
    }

    pub fn reset_counters(&mut self) {
        self.wins = 0;
        self.trades = 0;
    }
}

/// A completed buy-then-sell round trip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transaction {
    pub agent_id: usize,
    pub p_buy: f64,
    pub p_sell: f64,
    pub t_buy: u64,
    pub t_sell: u64,
    pub profit: f64,
}

/// Choose an action given the shared prediction. Consumes exactly one draw.
///
/// A down prediction makes selling the favoured move: a holder sells with
/// probability `g`, a flat agent buys with probability `1 - g`. An up
/// prediction mirrors this: a flat agent buys with probability `g`, a holder
/// sells with probability `1 - g`. Otherwise the agent holds.
pub fn decide(agent: &Agent, prediction: Movement, draw: &mut impl Draw) -> Action {
    let (action, probability) = match (prediction, agent.holds_stock()) {
        (Movement::Down, true) => (Action::Sell, agent.g),
        (Movement::Down, false) => (Action::Buy, 1.0 - agent.g),
        (Movement::Up, false) => (Action::Buy, agent.g),
        (Movement::Up, true) => (Action::Sell, 1.0 - agent.g),
    };
    if draw.unit() < probability {
        action
    } else {
        Action::Hold
    }
}

/// Close the agent's position at `p_sell` and book the result in its score.
///
/// Gains enter the score as-is; losses are multiplied by `loss_ratio`.
pub fn settle_round_trip(
    agent: &mut Agent,
    agent_id: usize,
    p_sell: f64,
    t_sell: u64,
    loss_ratio: f64,
) -> Result<Transaction> {
    let open = agent.position.take().ok_or_else(|| {
        Error::Logic(format!("agent {agent_id} sold at t={t_sell} without a position"))
    })?;
    let profit = p_sell - open.entry_price;
    if profit >= 0.0 {
        agent.score += profit;
        agent.wins += 1;
    } else {
        agent.score += loss_ratio * profit;
    }
    agent.trades += 1;
    Ok(Transaction {
        agent_id,
        p_buy: open.entry_price,
        p_sell,
        t_buy: open.t_buy,
        t_sell,
        profit,
    })
}

/// Replace the strategy when the score has fallen strictly below `threshold`.
///
/// The new strategy is uniform on `[g - epsilon, g + epsilon]`, reflected
/// back into `[0, 1]`. The score resets to zero; any open position is kept.
pub fn maybe_mutate(agent: &mut Agent, threshold: f64, epsilon: f64, draw: &mut impl Draw) -> bool {
    if !(agent.score < threshold) {
        return false;
    }
    let proposal = agent.g + epsilon * (2.0 * draw.unit() - 1.0);
    agent.g = reflect_unit(proposal);
    agent.score = 0.0;
    true
}

/// Reflect a value in `[-1, 2]` into `[0, 1]`.
#[inline]
pub fn reflect_unit(x: f64) -> f64 {
    let r = if x < 0.0 {
        -x
    } else if x > 1.0 {
        2.0 - x
    } else {
        x
    };
    debug_assert!((0.0..=1.0).contains(&r), "reflection left [0,1]: {x} -> {r}");
    r
}
