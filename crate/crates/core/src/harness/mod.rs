//! Replicated runs, parameter sweeps and figure presets.

mod presets;
mod run;
mod seeds;
mod sweep;

pub use presets::{
    beta_grid, figure_preset, preset, r_grid, regime_fits, Column, FigureName, FigurePreset,
    PostProcess, RegimeFit,
};
pub use run::{run_single, RunOutput, TrajectoryPoint, TRAJECTORY_RELAX_TAIL};
pub use seeds::{derive_seed, splitmix64, MAX_GRID_AXIS, MAX_REPLICATES};
pub use sweep::{
    regime_split, sweep, Aggregate, PointResult, RunRow, Stat, SweepOptions, SweepOutput,
    SweepSpec,
};
