//! Row-oriented result tables and their CSV encoding.
//!
//! Floats are written with 17 significant digits so every value parses back
//! to the identical `f64`. Missing values (e.g. price observables of a run
//! with an empty measurement window) are empty fields.

use crate::harness::{PointResult, RegimeFit, RunRow, Stat, TrajectoryPoint};
use crate::theory::{self, TheoryParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File name, including the `.csv` extension.
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: Vec<&'static str>) -> Self {
        Self {
            name: name.into(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn mean_se(stat: Option<Stat>) -> [String; 2] {
    match stat {
        Some(s) => [fmt_float(s.mean), fmt_float(s.se)],
        None => [String::new(), String::new()],
    }
}

pub const POINT_HEADER: [&str; 13] = [
    "beta",
    "R",
    "sigma_g_mean",
    "sigma_g_se",
    "sigma_p_mean",
    "sigma_p_se",
    "H_mean",
    "H_se",
    "pw_mean",
    "pw_se",
    "n_runs",
    "n_low_regime",
    "n_high_regime",
];

pub fn point_results_table(points: &[PointResult]) -> Table {
    let mut table = Table::new("point_results.csv", POINT_HEADER.to_vec());
    for p in points {
        let a = &p.overall;
        let mut row = vec![fmt_float(p.beta), fmt_float(p.r)];
        for stat in [a.sigma_g, a.sigma_p, a.h, a.p_w] {
            row.extend(mean_se(stat));
        }
        row.push(a.n_runs.to_string());
        row.push(p.low.n_runs.to_string());
        row.push(p.high.n_runs.to_string());
        table.push(row);
    }
    table
}

pub const PER_RUN_HEADER: [&str; 8] = ["seed", "beta", "R", "g_mean", "sigma_g", "sigma_p", "H", "pw"];

pub fn per_run_table<'a>(rows: impl IntoIterator<Item = &'a RunRow>) -> Table {
    let mut table = Table::new("per_run.csv", PER_RUN_HEADER.to_vec());
    for r in rows {
        let s = &r.summary;
        table.push(vec![
            r.seed.to_string(),
            fmt_float(r.beta),
            fmt_float(r.r),
            fmt_float(s.g_mean),
            fmt_float(s.sigma_g),
            fmt_opt(s.sigma_p),
            fmt_opt(s.h),
            fmt_opt(s.p_w),
        ]);
    }
    table
}

/// Replicate-averaged histogram per grid point.
pub fn histogram_table<'a>(points: impl IntoIterator<Item = (f64, f64, &'a [f64])>) -> Table {
    let mut table = Table::new("histogram.csv", vec!["beta", "R", "bin_left", "bin_right", "mass"]);
    for (beta, r, masses) in points {
        let bins = masses.len() as f64;
        for (i, mass) in masses.iter().enumerate() {
            table.push(vec![
                fmt_float(beta),
                fmt_float(r),
                fmt_float(i as f64 / bins),
                fmt_float((i + 1) as f64 / bins),
                fmt_float(*mass),
            ]);
        }
    }
    table
}

pub fn trajectory_table(seed: u64, trajectory: &[TrajectoryPoint]) -> Table {
    let mut table = Table::new(format!("trajectory_{seed}.csv"), vec!["t", "price", "A", "p_tr"]);
    for p in trajectory {
        table.push(vec![
            p.t.to_string(),
            fmt_float(p.price),
            p.excess_demand.to_string(),
            fmt_float(p.transaction_price),
        ]);
    }
    table
}

pub fn fit_table(fits: &[RegimeFit]) -> Table {
    let mut table = Table::new("fit.csv", vec!["regime", "a", "b", "r_squared", "n_points"]);
    for f in fits {
        let (a, b, r2) = match f.fit {
            Some(fit) => (fmt_float(fit.slope), fmt_float(fit.intercept), fmt_float(fit.r_squared)),
            None => Default::default(),
        };
        table.push(vec![f.regime.to_string(), a, b, r2, f.n_points.to_string()]);
    }
    table
}

/// Density, winning rate, impact profit and critical strategies on fixed
/// grids: `g` in steps of 0.01, beta in steps of 0.05, R in steps of 0.5.
pub fn theory_tables(params: &TheoryParams) -> Vec<Table> {
    let n = params.agents;
    let mut density = Table::new(
        "theory_density.csv",
        vec!["g", "tau", "density", "density_normalized"],
    );
    for i in 1..100 {
        let g = i as f64 / 100.0;
        let d = theory::emg_density(g, n).expect("interior grid");
        let dn = theory::emg_density_normalized(g, n).expect("interior grid");
        density.push(vec![
            fmt_float(g),
            fmt_float(theory::tau(g, n)),
            fmt_float(d),
            fmt_float(dn),
        ]);
    }

    let mut profit = Table::new("theory_profit.csv", vec!["beta", "profit"]);
    for i in 0..=20 {
        let beta = i as f64 / 20.0;
        profit.push(vec![fmt_float(beta), fmt_float(theory::majority_roundtrip_profit(n, beta))]);
    }

    let mut critical = Table::new("theory_critical.csv", vec!["R", "g_high", "g_low"]);
    for i in 0..=20 {
        let p = TheoryParams {
            loss_ratio: 1.0 + i as f64 * 0.5,
            ..*params
        };
        critical.push(vec![
            fmt_float(p.loss_ratio),
            fmt_float(theory::critical_strategy_high(&p)),
            fmt_float(theory::critical_strategy_low(&p)),
        ]);
    }
    vec![density, profit, critical]
}
