//! Configuration input and result output.

mod config;
mod manifest;
mod plot;
mod tables;

use std::path::Path;

pub use config::{
    load_run_config, load_sweep_spec, parse_config, ConfigEntries, Entry, ParsedConfig, RUN_KEYS,
    SWEEP_KEYS, THEORY_KEYS,
};
pub use manifest::{sha256_hex, unix_ms, FileDigest, Manifest};
pub use plot::{run_script, sweep_script, theory_script, PLOT_SCRIPT};
pub use tables::{
    fit_table, fmt_float, fmt_opt, histogram_table, per_run_table, point_results_table,
    theory_tables, trajectory_table, Table, PER_RUN_HEADER, POINT_HEADER,
};

use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Write every table as CSV plus the plot script into `out_dir`, then the
/// manifest with a digest of each file. Returns the completed manifest.
pub fn write_results(out_dir: &Path, tables: &[Table], plot_script: &str, mut manifest: Manifest) -> Result<Manifest> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let files = tables
        .iter()
        .map(|t| (t.name.as_str(), t.to_csv()))
        .chain(std::iter::once((PLOT_SCRIPT, plot_script.to_string())));
    for (name, body) in files {
        let path = out_dir.join(name);
        std::fs::write(&path, body.as_bytes()).map_err(|e| Error::io(&path, e))?;
        manifest.files.push(FileDigest::of(name, body.as_bytes()));
    }
    manifest.finished_unix_ms = unix_ms();
    let path = out_dir.join(MANIFEST_FILE);
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Logic(format!("manifest serialization: {e}")))?;
    std::fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}
