use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{run_single, TrajectoryPoint};
use super::seeds::derive_seed;
use crate::engine::RunConfig;
use crate::error::{Error, Result};
use crate::observables::{ObservableSummary, DEFAULT_BINS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: RunConfig,
    pub beta_values: Vec<f64>,
    pub r_values: Vec<f64>,
    pub runs_per_point: usize,
    pub base_seed: u64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            base: RunConfig::default(),
            beta_values: vec![0.0],
            r_values: vec![1.0],
            runs_per_point: 100,
            base_seed: 0,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.beta_values.is_empty() {
            return Err(Error::config("beta_values", "grid axis is empty"));
        }
        if self.r_values.is_empty() {
            return Err(Error::config("r_values", "grid axis is empty"));
        }
        if self.runs_per_point == 0 {
            return Err(Error::config("runs_per_point", "must be positive"));
        }
        for &beta in &self.beta_values {
            RunConfig { beta, ..self.base.clone() }
                .validate()
                .map_err(|e| rename_field(e, "beta", "beta_values"))?;
        }
        for &loss_ratio in &self.r_values {
            RunConfig { loss_ratio, ..self.base.clone() }
                .validate()
                .map_err(|e| rename_field(e, "R", "r_values"))?;
        }
        derive_seed(
            self.base_seed,
            self.beta_values.len() - 1,
            self.r_values.len() - 1,
            self.runs_per_point - 1,
        )?;
        Ok(())
    }

    pub fn points(&self) -> usize {
        self.beta_values.len() * self.r_values.len()
    }

    /// Config of one replicate at one grid cell.
    pub fn run_config(&self, beta_index: usize, r_index: usize, replicate: usize) -> Result<RunConfig> {
        Ok(RunConfig {
            beta: self.beta_values[beta_index],
            loss_ratio: self.r_values[r_index],
            seed: derive_seed(self.base_seed, beta_index, r_index, replicate)?,
            ..self.base.clone()
        })
    }
}

fn rename_field(err: Error, from: &str, to: &str) -> Error {
    match err {
        Error::Config { field, reason } if field == from => Error::Config {
            field: to.to_string(),
            reason,
        },
        other => other,
    }
}

/// One replicate's outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub replicate: usize,
    pub seed: u64,
    pub beta: f64,
    pub r: f64,
    pub summary: ObservableSummary,
}

/// Mean and standard error of the mean over the replicates that define a
/// quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub se: f64,
    pub n: usize,
}

impl Stat {
    /// `None` for an empty sample. The standard error uses the n-1 sample
    /// variance and is zero for a single value.
    pub fn of(values: &[f64]) -> Option<Stat> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let se = if n < 2 {
            0.0
        } else {
            let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (n - 1) as f64 / n as f64).sqrt()
        };
        Some(Stat { mean, se, n })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Aggregate {
    pub n_runs: usize,
    pub sigma_g: Option<Stat>,
    pub g_mean: Option<Stat>,
    pub sigma_p: Option<Stat>,
    pub h: Option<Stat>,
    pub p_w: Option<Stat>,
    /// Replicate-averaged strategy histogram.
    pub histogram: Vec<f64>,
}

impl Aggregate {
    /// Rows are reduced in the order given; callers pass replicate order.
    pub fn of<'a>(rows: impl IntoIterator<Item = &'a RunRow>) -> Aggregate {
        let rows: Vec<&RunRow> = rows.into_iter().collect();
        let collect = |f: &dyn Fn(&ObservableSummary) -> Option<f64>| -> Option<Stat> {
            Stat::of(&rows.iter().filter_map(|r| f(&r.summary)).collect::<Vec<_>>())
        };
        let bins = rows.first().map_or(DEFAULT_BINS, |r| r.summary.histogram.len());
        let mut histogram = vec![0.0; bins];
        for row in &rows {
            for (acc, mass) in histogram.iter_mut().zip(&row.summary.histogram) {
                *acc += mass;
            }
        }
        if !rows.is_empty() {
            for acc in &mut histogram {
                *acc /= rows.len() as f64;
            }
        }
        Aggregate {
            n_runs: rows.len(),
            sigma_g: collect(&|s| Some(s.sigma_g)),
            g_mean: collect(&|s| Some(s.g_mean)),
            sigma_p: collect(&|s| s.sigma_p),
            h: collect(&|s| s.h),
            p_w: collect(&|s| s.p_w),
            histogram,
        }
    }
}

/// Partition rows by final mean strategy: below one half goes low, the rest
/// (including exactly one half) goes high.
pub fn regime_split<'a>(rows: impl IntoIterator<Item = &'a RunRow>) -> (Vec<&'a RunRow>, Vec<&'a RunRow>) {
    rows.into_iter().partition(|r| r.summary.g_mean < 0.5)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub beta: f64,
    pub r: f64,
    pub beta_index: usize,
    pub r_index: usize,
    pub overall: Aggregate,
    pub low: Aggregate,
    pub high: Aggregate,
    /// Replicate rows in replicate order.
    pub rows: Vec<RunRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    /// Grid order: beta outer, R inner.
    pub points: Vec<PointResult>,
    /// `(seed, trajectory)` in the same order as the rows, when requested.
    pub trajectories: Vec<(u64, Vec<TrajectoryPoint>)>,
}

impl SweepOutput {
    pub fn rows(&self) -> impl Iterator<Item = &RunRow> {
        self.points.iter().flat_map(|p| p.rows.iter())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global pool. Never affects results.
    pub threads: Option<usize>,
    pub dump_trajectories: bool,
}

/// Run every replicate of every grid cell and aggregate per cell.
///
/// Jobs run in parallel but results are collected in index order, so the
/// output is identical for any thread count.
pub fn sweep(spec: &SweepSpec, options: &SweepOptions) -> Result<SweepOutput> {
    spec.validate()?;
    let mut jobs = Vec::with_capacity(spec.points() * spec.runs_per_point);
    for bi in 0..spec.beta_values.len() {
        for ri in 0..spec.r_values.len() {
            for rep in 0..spec.runs_per_point {
                jobs.push((bi, ri, rep, spec.run_config(bi, ri, rep)?));
            }
        }
    }

    let execute = || -> Result<Vec<_>> {
        jobs.par_iter()
            .map(|(_, _, _, config)| run_single(config, options.dump_trajectories))
            .collect()
    };
    let outputs = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Logic(format!("thread pool: {e}")))?
            .install(execute)?,
        None => execute()?,
    };

    let mut points = Vec::with_capacity(spec.points());
    let mut trajectories = Vec::new();
    let mut outputs = outputs.into_iter();
    let mut jobs = jobs.into_iter();
    for bi in 0..spec.beta_values.len() {
        for ri in 0..spec.r_values.len() {
            let mut rows = Vec::with_capacity(spec.runs_per_point);
            for _ in 0..spec.runs_per_point {
                let (_, _, rep, config) = jobs.next().expect("one job per replicate");
                let out = outputs.next().expect("one output per job");
                if let Some(traj) = out.trajectory {
                    trajectories.push((out.seed, traj));
                }
                rows.push(RunRow {
                    replicate: rep,
                    seed: config.seed,
                    beta: config.beta,
                    r: config.loss_ratio,
                    summary: out.summary,
                });
            }
            let (low, high) = regime_split(&rows);
            let (low, high) = (Aggregate::of(low), Aggregate::of(high));
            points.push(PointResult {
                beta: spec.beta_values[bi],
                r: spec.r_values[ri],
                beta_index: bi,
                r_index: ri,
                overall: Aggregate::of(&rows),
                low,
                high,
                rows,
            });
        }
    }
    Ok(SweepOutput {
        points,
        trajectories,
    })
}
