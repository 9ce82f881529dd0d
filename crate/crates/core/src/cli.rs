//! Command-line entry point.
//!
//! Exit codes: 0 on success, 2 for usage errors (unknown command, flag or
//! preset, bad config key or value), 1 for runtime failures such as I/O.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::engine::RunConfig;
use crate::error::{Error, Result};
use crate::harness::{
    figure_preset, regime_fits, run_single, sweep, PostProcess, RunRow, SweepOptions, SweepSpec,
};
use crate::io::{
    fit_table, histogram_table, load_run_config, load_sweep_spec, per_run_table,
    point_results_table, run_script, sweep_script, theory_script, theory_tables, trajectory_table,
    write_results, ConfigEntries, Manifest, Table,
};

#[derive(Debug, Parser)]
#[command(name = "emg-impact", version, about = "Evolutionary minority game with market impact and asymmetric loss sensitivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one simulation.
    Run(CommonArgs),
    /// Sweep a (beta, R) grid with replicated runs.
    Sweep(SweepArgs),
    /// Run a named figure preset.
    Figure {
        /// fig1a, fig1b, fig2, fig3, fig4, fig5, fig6 or fig7.
        name: String,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Tabulate the closed-form predictions.
    Theory {
        /// Override a parameter (N, R, D, aN, beta).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long, value_name = "DIR", default_value = "results")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Key-value config file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed of the run, or base seed of a sweep.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Override one config key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, value_name = "DIR", default_value = "results")]
    out: PathBuf,
    /// Worker threads; never changes results.
    #[arg(long, value_name = "K")]
    threads: Option<usize>,
    /// Write price trajectories.
    #[arg(long)]
    dump_trajectory: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Replicates per grid point.
    #[arg(long, value_name = "K")]
    runs: Option<usize>,
}

/// Parse `argv` (including the program name), execute, and return the exit
/// code. Diagnostics go to standard error.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(manifest) => {
            for f in &manifest.files {
                println!("{}  {}", f.sha256, f.path);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config { .. } | Error::Parse { .. } | Error::UnknownPreset { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn execute(command: Command) -> Result<Manifest> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => {
            let base = SweepSpec::default();
            let post = PostProcess {
                column: crate::harness::Column::SigmaG,
                against_r: false,
                histograms: true,
                trajectories: false,
                regime_fit: false,
                pw_vs_h: false,
            };
            cmd_sweep("sweep", base, post, args)
        }
        Command::Figure { name, args } => {
            let preset = figure_preset(&name)?;
            cmd_sweep(&format!("figure {name}"), preset.spec, preset.post, args)
        }
        Command::Theory { set, out } => {
            let params = ConfigEntries::from_overrides(&set)?.to_theory_params()?;
            let manifest = Manifest::begin("theory", to_json(&params)?, 0, None);
            write_results(&out, &theory_tables(&params), &theory_script(), manifest)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::Logic(format!("config serialization: {e}")))
}

fn cmd_run(args: CommonArgs) -> Result<Manifest> {
    let mut config: RunConfig = load_run_config(args.config.as_deref(), &args.set)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let manifest = Manifest::begin("run", to_json(&config)?, config.seed, args.threads);
    let out = run_single(&config, args.dump_trajectory)?;
    let row = RunRow {
        replicate: 0,
        seed: config.seed,
        beta: config.beta,
        r: config.loss_ratio,
        summary: out.summary,
    };
    let mut tables = vec![
        per_run_table([&row]),
        histogram_table([(row.beta, row.r, row.summary.histogram.as_slice())]),
    ];
    let mut traj_files = Vec::new();
    if let Some(traj) = &out.trajectory {
        let t = trajectory_table(config.seed, traj);
        traj_files.push(t.name.clone());
        tables.push(t);
    }
    write_results(&args.out, &tables, &run_script(&traj_files), manifest)
}

fn cmd_sweep(command: &str, base: SweepSpec, post: PostProcess, args: SweepArgs) -> Result<Manifest> {
    let common = args.common;
    let mut spec = load_sweep_spec(common.config.as_deref(), &common.set, base)?;
    if let Some(seed) = common.seed {
        spec.base_seed = seed;
    }
    if let Some(runs) = args.runs {
        spec.runs_per_point = runs;
    }
    spec.validate()?;
    let manifest = Manifest::begin(command, to_json(&spec)?, spec.base_seed, common.threads);
    let options = SweepOptions {
        threads: common.threads,
        dump_trajectories: common.dump_trajectory || post.trajectories,
    };
    let result = sweep(&spec, &options)?;
    let tables = sweep_tables(&result, &post);
    let traj_files: Vec<String> = tables
        .iter()
        .filter(|t| t.name.starts_with("trajectory_"))
        .map(|t| t.name.clone())
        .collect();
    write_results(&common.out, &tables, &sweep_script(&post, &traj_files), manifest)
}

/// Tables written for a sweep under the given post-processing directive.
pub fn sweep_tables(result: &crate::harness::SweepOutput, post: &PostProcess) -> Vec<Table> {
    let mut tables = vec![
        point_results_table(&result.points),
        per_run_table(result.rows()),
        histogram_table(
            result
                .points
                .iter()
                .map(|p| (p.beta, p.r, p.overall.histogram.as_slice())),
        ),
    ];
    if post.regime_fit {
        tables.push(fit_table(&regime_fits(result.rows())));
    }
    for (seed, traj) in &result.trajectories {
        tables.push(trajectory_table(*seed, traj));
    }
    tables
}

/// Convenience for callers that only need the output directory's manifest.
pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join(crate::io::MANIFEST_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        reason: e.to_string(),
    })
}
