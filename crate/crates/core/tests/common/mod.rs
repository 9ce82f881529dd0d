//! Scripted scenarios and invariant checkers shared by the engine suite and
//! the acceptance runner. Each checker returns a list of mismatches instead of
//! panicking so both callers can report on it.
#![allow(dead_code)]

use emg_impact::draw::ScriptedDraws;
use emg_impact::engine::*;
use Movement::{Down as D, Up as U};

pub const SQRT2: f64 = 1.4142135623730951;
pub const SQRT3: f64 = 1.7320508075688772;

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

macro_rules! expect {
    ($errs:ident, $cond:expr, $($fmt:tt)+) => {
        if !$cond {
            $errs.push(format!($($fmt)+));
        }
    };
}

/// Pen-and-paper trace: N = 3, m = 1, D = -1, R = 2, beta = 0.5.
///
/// g = [0.2, 0.5, 0.9], all flat, P = 0, history [U], table {D -> D, U -> U}.
///
/// t0: pred U; flat agents buy w.p. g; draws .1 .7 .3 -> B H B; A = 2,
///     P = sqrt2, P_tr = sqrt2/2. Realized U, table[U] = U.
/// t1: pred U; a0 holds sells w.p. .8 (.5 -> S), a1 buys w.p. .5 (.4 -> B),
///     a2 sells w.p. .1 (.5 -> H); A = 0, P stays sqrt2, P_tr = sqrt2.
///     a0 profit sqrt2/2 (win). Coin .8 -> D, table[U] = D.
/// t2: pred table[D] = D; a0 flat buys w.p. .8 (.9 -> H), a1 sells w.p. .5
///     (.2 -> S), a2 sells w.p. .9 (.6 -> S); A = -2, P = 0, P_tr = sqrt2/2.
///     a1 profit -sqrt2/2, score -sqrt2 < -1 -> mutates, draw .75 ->
///     g = .5 + .125 * .5 = .5625, score 0. a2 profit 0 (win).
/// t3: pred table[D] = D; all flat; buy w.p. 1-g = .8, .4375, .1; draws
///     0 .1 .05 -> B B B; A = 3, P = sqrt3, P_tr = sqrt3/2.
/// t4: pred table[U] = D; all hold; sell w.p. g = .2, .5625, .9; draws
///     .1 .3 .95 -> S S H; A = -2, P = sqrt3 - sqrt2,
///     P_tr = sqrt3 - sqrt2/2. a0, a1 profit sqrt3/2 - sqrt2/2 (wins).
pub fn hand_trace_mismatches() -> Vec<String> {
    let mut errs = Vec::new();
    let draws = ScriptedDraws::new([
        0.1, 0.7, 0.3, // t0
        0.5, 0.4, 0.5, 0.8, // t1 + coin
        0.9, 0.2, 0.6, 0.75, // t2 + mutation
        0.0, 0.1, 0.05, // t3
        0.1, 0.3, 0.95, // t4
    ]);
    let config = RunConfig {
        agents: 3,
        memory: 1,
        threshold: -1.0,
        loss_ratio: 2.0,
        beta: 0.5,
        ..Default::default()
    };
    let agents = [0.2, 0.5, 0.9].map(Agent::new).to_vec();
    let market = MarketState::new(0.0, &[U], vec![D, U]);
    let mut sim = Simulation::from_parts(config, agents, market, draws).unwrap();
    let recs: Vec<StepRecord> = (0..5).map(|_| sim.step().unwrap()).collect();

    let demand: Vec<i64> = recs.iter().map(|r| r.excess_demand).collect();
    expect!(errs, demand == [2, 0, -2, 3, -2], "excess demand {demand:?}");
    let expect_prices = [SQRT2, SQRT2, 0.0, SQRT3, SQRT3 - SQRT2];
    let expect_ptr = [SQRT2 / 2.0, SQRT2, SQRT2 / 2.0, SQRT3 / 2.0, SQRT3 - SQRT2 / 2.0];
    for (t, rec) in recs.iter().enumerate() {
        expect!(errs, close(rec.price_after, expect_prices[t]), "price t{t}: {}", rec.price_after);
        expect!(errs, close(rec.transaction_price, expect_ptr[t]), "p_tr t{t}: {}", rec.transaction_price);
    }
    let realized: Vec<Movement> = recs.iter().map(|r| r.realized.unwrap()).collect();
    expect!(errs, realized == [U, D, D, U, D], "realized {realized:?}");
    let predictions: Vec<Movement> = recs.iter().map(|r| r.prediction.unwrap()).collect();
    expect!(errs, predictions == [U, U, D, D, D], "predictions {predictions:?}");

    let txs: Vec<(u64, usize, u64, f64)> = recs
        .iter()
        .flat_map(|r| r.transactions.iter().map(|t| (t.t_sell, t.agent_id, t.t_buy, t.profit)))
        .collect();
    let gain4 = SQRT3 / 2.0 - SQRT2 / 2.0;
    let expected = [
        (1, 0, 0, SQRT2 / 2.0),
        (2, 1, 1, -SQRT2 / 2.0),
        (2, 2, 0, 0.0),
        (4, 0, 3, gain4),
        (4, 1, 3, gain4),
    ];
    expect!(errs, txs.len() == expected.len(), "{} transactions", txs.len());
    for (got, want) in txs.iter().zip(expected) {
        let same = (got.0, got.1, got.2) == (want.0, want.1, want.2) && close(got.3, want.3);
        expect!(errs, same, "transaction {got:?} vs {want:?}");
    }
    expect!(errs, recs[2].mutated == [1], "mutations at t2: {:?}", recs[2].mutated);

    let a = &sim.agents;
    let g = [a[0].g, a[1].g, a[2].g];
    expect!(errs, g == [0.2, 0.5625, 0.9], "final strategies {g:?}");
    let scores = [a[0].score, a[1].score, a[2].score];
    let ok = close(scores[0], SQRT3 / 2.0) && close(scores[1], gain4) && scores[2] == 0.0;
    expect!(errs, ok, "final scores {scores:?}");
    let tallies: Vec<(u64, u64)> = a.iter().map(|x| (x.wins, x.trades)).collect();
    expect!(errs, tallies == [(2, 2), (1, 2), (1, 1)], "win tallies {tallies:?}");
    expect!(errs, !a[0].holds_stock() && !a[1].holds_stock(), "agents 0 and 1 should be flat");
    expect!(errs, a[2].entry_price().is_some_and(|p| close(p, SQRT3 / 2.0)), "agent 2 entry");
    expect!(errs, sim.market.history() == [D], "history {:?}", sim.market.history());
    expect!(errs, sim.market.table() == [U, D], "table {:?}", sim.market.table());
    expect!(errs, sim.draw_mut().remaining() == 0, "unused draws");
    errs
}

/// Whole population buys at one step and sells at the next from a flat
/// state; returns each agent's round-trip profit.
pub fn all_in_all_out(agents: usize, beta: f64) -> Vec<f64> {
    let config = RunConfig { agents, memory: 1, beta, ..Default::default() };
    let population = vec![Agent::new(0.5); agents];
    let market = MarketState::new(0.0, &[U], vec![U, D]);
    // every draw 0 < 1/2 acts; extra draws cover mutations
    let draws = ScriptedDraws::repeat(0.0, 3 * agents + 4);
    let mut sim = Simulation::from_parts(config, population, market, draws).unwrap();
    let buy = sim.step().unwrap();
    assert_eq!(buy.excess_demand, agents as i64);
    let sell = sim.step().unwrap();
    assert_eq!(sell.excess_demand, -(agents as i64));
    sell.transactions.iter().map(|t| t.profit).collect()
}

/// Steps a seeded run and checks the per-step invariants along the way.
/// Returns the number of agent-steps covered and the violations found.
pub fn run_invariant_violations(config: &RunConfig, steps: u64) -> (u64, Vec<String>) {
    let mut errs = Vec::new();
    let mut sim = init_run(config).unwrap();
    let bound = (config.agents as f64).sqrt();
    let mut logs: Vec<Vec<f64>> = vec![Vec::new(); config.agents];
    let mut agent_steps = 0;
    for _ in 0..steps {
        let before: Vec<bool> = sim.agents.iter().map(|a| a.holds_stock()).collect();
        let rec = sim.step().unwrap();
        let t = rec.t;
        for (i, (held, action)) in before.iter().zip(&rec.actions).enumerate() {
            let ok = match action {
                Action::Sell => *held,
                Action::Buy => !held,
                Action::Hold => true,
            };
            expect!(errs, ok, "t{t}: agent {i} {action:?} with holding = {held}");
        }
        agent_steps += rec.actions.len() as u64;

        let dp = rec.price_change().abs();
        expect!(errs, dp <= bound + 1e-12, "t{t}: |dP| = {dp} above sqrt(N)");
        if (dp - bound).abs() < 1e-12 {
            let full = rec.excess_demand.unsigned_abs() as usize == config.agents;
            expect!(errs, full, "t{t}: |dP| = sqrt(N) without unanimous demand");
        }
        let (lo, hi) = (rec.price_before.min(rec.price_after), rec.price_before.max(rec.price_after));
        let p = rec.transaction_price;
        expect!(errs, lo <= p && p <= hi, "t{t}: transaction price {p} outside [{lo}, {hi}]");

        for tx in &rec.transactions {
            expect!(errs, tx.t_sell > tx.t_buy, "t{t}: sell before buy for agent {}", tx.agent_id);
            expect!(errs, tx.profit == tx.p_sell - tx.p_buy, "t{t}: profit mismatch");
            logs[tx.agent_id].push(tx.profit);
        }
        for &id in &rec.mutated {
            logs[id].clear();
        }
        for (i, (agent, log)) in sim.agents.iter().zip(&logs).enumerate() {
            let rebuilt: f64 = log
                .iter()
                .map(|p| if *p >= 0.0 { *p } else { config.loss_ratio * p })
                .sum();
            expect!(errs, (agent.score - rebuilt).abs() <= 1e-9, "t{t}: agent {i} score {} vs log {rebuilt}", agent.score);
            expect!(errs, (0.0..=1.0).contains(&agent.g), "t{t}: agent {i} g = {}", agent.g);
            expect!(errs, agent.wins <= agent.trades, "t{t}: agent {i} wins exceed trades");
        }
        if errs.len() > 20 {
            break;
        }
    }
    (agent_steps, errs)
}
