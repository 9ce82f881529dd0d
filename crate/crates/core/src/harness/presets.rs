//! Named sweep presets (`fig1a` … `fig7`): grid, replicate count and
//! post-processing, all on the default model (N = 101, m = 3, D = -4,
//! 100000 relaxation + 1000 measured steps per run).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sweep::{regime_split, RunRow, SweepSpec};
use crate::engine::RunConfig;
use crate::error::{Error, Result};
use crate::observables::{linear_fit, LinearFit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FigureName {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureName {
    pub const ALL: [FigureName; 8] = [
        FigureName::Fig1a,
        FigureName::Fig1b,
        FigureName::Fig2,
        FigureName::Fig3,
        FigureName::Fig4,
        FigureName::Fig5,
        FigureName::Fig6,
        FigureName::Fig7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::Fig1a => "fig1a",
            FigureName::Fig1b => "fig1b",
            FigureName::Fig2 => "fig2",
            FigureName::Fig3 => "fig3",
            FigureName::Fig4 => "fig4",
            FigureName::Fig5 => "fig5",
            FigureName::Fig6 => "fig6",
            FigureName::Fig7 => "fig7",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(|f| f.as_str()).join(", ")
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownPreset {
                given: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

/// Which observable a figure plots against its x axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    SigmaG,
    SigmaP,
    H,
    PW,
}

impl Column {
    pub fn csv_name(self) -> &'static str {
        match self {
            Column::SigmaG => "sigma_g_mean",
            Column::SigmaP => "sigma_p_mean",
            Column::H => "H_mean",
            Column::PW => "pw_mean",
        }
    }
}

/// What to produce from a figure's sweep beyond the point table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostProcess {
    pub column: Column,
    /// x axis of the point plot is R rather than beta.
    pub against_r: bool,
    pub histograms: bool,
    pub trajectories: bool,
    pub regime_fit: bool,
    /// Also plot winning probability against predictability.
    pub pw_vs_h: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigurePreset {
    pub name: FigureName,
    pub spec: SweepSpec,
    pub post: PostProcess,
}

/// `0, 0.05, ..., 1`.
pub fn beta_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 / 20.0).collect()
}

/// `1, 1.05, 2, 3, ..., 11`.
pub fn r_grid() -> Vec<f64> {
    let mut grid = vec![1.0, 1.05];
    grid.extend((2..=11).map(|r| r as f64));
    grid
}

pub fn figure_preset(name: &str) -> Result<FigurePreset> {
    Ok(preset(name.parse()?))
}

pub fn preset(name: FigureName) -> FigurePreset {
    let post = |column| PostProcess {
        column,
        against_r: false,
        histograms: false,
        trajectories: false,
        regime_fit: false,
        pw_vs_h: false,
    };
    let spec = |beta_values: Vec<f64>, r_values: Vec<f64>| SweepSpec {
        base: RunConfig::default(),
        beta_values,
        r_values,
        runs_per_point: 100,
        base_seed: 0,
    };
    let (spec, post) = match name {
        FigureName::Fig1a => (
            spec(vec![0.2], vec![1.0, 2.0, 5.0]),
            PostProcess { histograms: true, ..post(Column::SigmaG) },
        ),
        FigureName::Fig1b => (
            spec(vec![0.8], vec![1.0, 1.05, 5.0]),
            PostProcess { histograms: true, ..post(Column::SigmaG) },
        ),
        FigureName::Fig2 => (
            spec(beta_grid(), vec![1.0, 1.02, 1.05, 1.2, 2.0, 5.0]),
            post(Column::SigmaG),
        ),
        FigureName::Fig3 => (
            SweepSpec {
                runs_per_point: 10,
                ..spec(vec![0.2, 0.8], vec![1.0, 1.05, 1.2, 5.0])
            },
            PostProcess { trajectories: true, ..post(Column::SigmaP) },
        ),
        FigureName::Fig4 => (spec(beta_grid(), vec![1.0, 2.0, 5.0]), post(Column::SigmaP)),
        FigureName::Fig5 => (
            spec(vec![0.2], vec![1.0, 2.0, 5.0]),
            PostProcess { regime_fit: true, ..post(Column::SigmaP) },
        ),
        FigureName::Fig6 => (
            spec(vec![0.0, 0.2, 0.4], r_grid()),
            PostProcess { against_r: true, ..post(Column::H) },
        ),
        FigureName::Fig7 => (
            spec(vec![0.0, 0.2, 0.4], r_grid()),
            PostProcess { against_r: true, pw_vs_h: true, ..post(Column::PW) },
        ),
    };
    FigurePreset { name, spec, post }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeFit {
    pub regime: &'static str,
    pub n_points: usize,
    /// `None` with fewer than two runs or a degenerate mean strategy.
    pub fit: Option<LinearFit>,
}

/// Fit price fluctuation against mean strategy separately in each regime,
/// using one point per run.
pub fn regime_fits<'a>(rows: impl IntoIterator<Item = &'a RunRow>) -> [RegimeFit; 2] {
    let (low, high) = regime_split(rows);
    let fit = |regime, rows: Vec<&RunRow>| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = rows
            .iter()
            .filter_map(|r| r.summary.sigma_p.map(|sp| (r.summary.g_mean, sp)))
            .unzip();
        RegimeFit {
            regime,
            n_points: xs.len(),
            fit: linear_fit(&xs, &ys).ok(),
        }
    };
    [fit("low", low), fit("high", high)]
}
