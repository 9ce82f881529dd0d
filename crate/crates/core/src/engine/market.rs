use serde::{Deserialize, Serialize};

use super::agent::{Action, Movement};
use super::config::check_beta;
use crate::draw::Draw;
use crate::error::Result;

/// Public market state: price, the last `m` movements and the shared
/// prediction table.
///
/// The history is kept as an `m`-bit integer, oldest movement in the highest
/// bit and newest in bit 0 (up = 1). That integer is also the state index
/// into the prediction table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketState {
    pub price: f64,
    memory: usize,
    history: usize,
    table: Vec<Movement>,
    pub t: u64,
}

impl MarketState {
    /// Builds a state from an explicit oldest-first history and a table
    /// indexed by history state.
    ///
    /// # Panics
    /// If `history` is empty or the table does not have `2^m` entries.
    pub fn new(price: f64, history: &[Movement], table: Vec<Movement>) -> Self {
        let memory = history.len();
        assert!(memory >= 1, "history must hold at least one movement");
        assert_eq!(table.len(), 1 << memory, "prediction table needs 2^m entries");
        let history = history.iter().fold(0usize, |acc, mv| (acc << 1) | mv.bit());
        Self {
            price,
            memory,
            history,
            table,
            t: 0,
        }
    }

    /// Fair-coin history (m draws, oldest first) followed by a fair-coin
    /// table (2^m draws, state 0 upward).
    pub fn random(price: f64, memory: usize, draw: &mut impl Draw) -> Self {
        let history: Vec<Movement> = (0..memory).map(|_| Movement::from_coin(draw)).collect();
        let table = (0..1usize << memory)
            .map(|_| Movement::from_coin(draw))
            .collect();
        Self::new(price, &history, table)
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    /// Index of the current history, `0..2^m`.
    #[inline]
    pub fn state(&self) -> usize {
        self.history
    }

    /// Oldest-first view of the history window.
    pub fn history(&self) -> Vec<Movement> {
        (0..self.memory)
            .rev()
            .map(|shift| Movement::from_bit(self.history >> shift))
            .collect()
    }

    pub fn table(&self) -> &[Movement] {
        &self.table
    }

    /// Movement that followed the most recent earlier occurrence of the
    /// current history.
    #[inline]
    pub fn predict(&self) -> Movement {
        self.table[self.history]
    }

    /// Record the outcome of the current history and slide the window.
    #[inline]
    pub fn update_history_and_table(&mut self, realized: Movement) {
        self.table[self.history] = realized;
        let mask = (1usize << self.memory) - 1;
        self.history = ((self.history << 1) | realized.bit()) & mask;
    }
}

/// Excess demand: buyers minus sellers.
pub fn aggregate_demand(actions: &[Action]) -> i64 {
    actions.iter().map(|a| a.value()).sum()
}

/// Price moves by the signed square root of excess demand.
#[inline]
pub fn update_price(price: f64, excess_demand: i64) -> f64 {
    match excess_demand.signum() {
        0 => price,
        s => price + s as f64 * (excess_demand.unsigned_abs() as f64).sqrt(),
    }
}

/// Executed price: a `beta`-weighted mix of the pre- and post-trade prices.
pub fn transaction_price(price_now: f64, price_next: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(mix_price(price_now, price_next, beta))
}

#[inline]
pub(crate) fn mix_price(price_now: f64, price_next: f64, beta: f64) -> f64 {
    // rounding can leave the interval by an ulp
    ((1.0 - beta) * price_now + beta * price_next)
        .clamp(price_now.min(price_next), price_now.max(price_next))
}
