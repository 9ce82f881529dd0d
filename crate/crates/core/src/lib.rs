//! Agent-based stock market built on the evolutionary minority game, with a
//! tunable market impact on transaction prices and asymmetric sensitivity to
//! losses in strategy scoring.
//!
//! - [`engine`]: one seeded run, stepped one trade round at a time.
//! - [`observables`]: strategy spread, price fluctuation, predictability,
//!   winning probability, histograms and line fits.
//! - [`theory`]: closed-form predictions to overlay on simulation output.
//! - [`harness`]: replicated runs, parameter sweeps and figure presets.
//! - [`io`] and [`cli`]: config parsing, CSV/manifest output, command line.

pub mod cli;
pub mod draw;
pub mod engine;
pub mod error;
pub mod harness;
pub mod io;
pub mod observables;
pub mod theory;

pub use error::{Error, Result};
