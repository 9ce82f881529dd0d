//! Plain gnuplot scripts that read the CSV outputs by relative path.

use std::fmt::Write;

use crate::harness::{Column, PostProcess};

pub const PLOT_SCRIPT: &str = "plot.gp";

fn preamble(out: &mut String) {
    out.push_str("set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 800,600\n");
}

/// Script for a sweep: the point table against beta (or R), plus whatever
/// extra tables the post-processing produced.
pub fn sweep_script(post: &PostProcess, trajectory_files: &[String]) -> String {
    let mut s = String::new();
    preamble(&mut s);
    let column = post.column.csv_name();
    let (x, label) = if post.against_r { ("R", "R") } else { ("beta", "beta") };
    let _ = writeln!(s, "\nset output '{column}.png'\nset xlabel '{label}'\nset ylabel '{column}'");
    let _ = writeln!(
        s,
        "plot 'point_results.csv' using (column('{x}')):(column('{column}')):(column('{se}')) with yerrorbars",
        se = column.replace("_mean", "_se"),
    );
    if post.histograms {
        s.push_str("\nset output 'histogram.png'\nset xlabel 'g'\nset ylabel 'P(g)'\n");
        s.push_str("plot 'histogram.csv' using ((column('bin_left')+column('bin_right'))/2):(column('mass')) with linespoints\n");
    }
    if post.regime_fit {
        s.push_str("\nset output 'sigma_p_vs_g.png'\nset xlabel 'mean g'\nset ylabel 'sigma_p'\n");
        s.push_str("plot 'per_run.csv' using (column('g_mean')):(column('sigma_p')) with points\n");
    }
    if post.pw_vs_h || matches!(post.column, Column::PW) {
        s.push_str("\nset output 'pw_vs_h.png'\nset xlabel 'H'\nset ylabel 'P_W'\n");
        s.push_str("plot 'point_results.csv' using (column('H_mean')):(column('pw_mean')) with points\n");
    }
    trajectory_block(&mut s, trajectory_files);
    s
}

pub fn run_script(trajectory_files: &[String]) -> String {
    let mut s = String::new();
    preamble(&mut s);
    s.push_str("\nset output 'histogram.png'\nset xlabel 'g'\nset ylabel 'P(g)'\n");
    s.push_str("plot 'histogram.csv' using ((column('bin_left')+column('bin_right'))/2):(column('mass')) with boxes\n");
    trajectory_block(&mut s, trajectory_files);
    s
}

pub fn theory_script() -> String {
    let mut s = String::new();
    preamble(&mut s);
    s.push_str("\nset output 'theory_density.png'\nplot 'theory_density.csv' using (column('g')):(column('density_normalized')) with lines\n");
    s.push_str("\nset output 'theory_profit.png'\nplot 'theory_profit.csv' using (column('beta')):(column('profit')) with lines\n");
    s.push_str("\nset output 'theory_critical.png'\nplot 'theory_critical.csv' using (column('R')):(column('g_high')) with lines, '' using (column('R')):(column('g_low')) with lines\n");
    s
}

fn trajectory_block(s: &mut String, files: &[String]) {
    for file in files {
        let stem = file.trim_end_matches(".csv");
        let _ = writeln!(
            s,
            "\nset output '{stem}.png'\nset xlabel 't'\nset ylabel 'P(t)'\nplot '{file}' using (column('t')):(column('price')) with lines"
        );
    }
}
