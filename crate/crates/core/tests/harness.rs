use emg_impact::engine::RunConfig;
use emg_impact::harness::*;

fn quick_base() -> RunConfig {
    RunConfig { relax_steps: 300, measure_steps: 100, ..Default::default() }
}

#[test]
fn empty_window_keeps_strategy_observables() {
    let config = RunConfig { relax_steps: 50, measure_steps: 0, ..Default::default() };
    let s = run_single(&config, false).unwrap().summary;
    assert!(!s.has_price_window());
    assert_eq!((s.sigma_p, s.h, s.p_w), (None, None, None));
    assert!(s.sigma_g > 0.0 && (0.0..=1.0).contains(&s.g_mean));
    assert_eq!(s.histogram.len(), 20);
}

#[test]
fn trajectory_covers_relax_tail_and_window() {
    let config = RunConfig { relax_steps: 1500, measure_steps: 200, ..Default::default() };
    let traj = run_single(&config, true).unwrap().trajectory.unwrap();
    assert_eq!(traj.len() as u64, TRAJECTORY_RELAX_TAIL + 200);
    assert_eq!(traj[0].t, 500);
    assert_eq!(traj.last().unwrap().t, 1699);
    let short = RunConfig { relax_steps: 10, measure_steps: 5, ..config };
    assert_eq!(run_single(&short, true).unwrap().trajectory.unwrap().len(), 15);
}

#[test]
fn single_cell_sweep_equals_run_single() {
    let spec = SweepSpec {
        base: quick_base(),
        beta_values: vec![0.4],
        r_values: vec![2.0],
        runs_per_point: 1,
        base_seed: 123,
    };
    let out = sweep(&spec, &SweepOptions::default()).unwrap();
    let seed = derive_seed(123, 0, 0, 0).unwrap();
    let direct = run_single(&RunConfig { beta: 0.4, loss_ratio: 2.0, seed, ..quick_base() }, false).unwrap();
    assert_eq!(out.points.len(), 1);
    assert_eq!(out.points[0].rows[0].seed, seed);
    assert_eq!(out.points[0].rows[0].summary, direct.summary);
}

#[test]
fn sweep_is_reproducible_and_thread_independent() {
    let spec = SweepSpec {
        base: quick_base(),
        beta_values: vec![0.2, 0.8],
        r_values: vec![1.0],
        runs_per_point: 6,
        base_seed: 5,
    };
    let serial = sweep(&spec, &SweepOptions { threads: Some(1), dump_trajectories: true }).unwrap();
    let parallel = sweep(&spec, &SweepOptions { threads: Some(4), dump_trajectories: true }).unwrap();
    let again = sweep(&spec, &SweepOptions { threads: Some(1), dump_trajectories: true }).unwrap();
    assert_eq!(serial, parallel);
    assert_eq!(serial, again);
}

#[test]
fn point_bookkeeping() {
    let spec = SweepSpec {
        base: quick_base(),
        beta_values: vec![0.0, 0.5, 1.0],
        r_values: vec![1.0, 3.0],
        runs_per_point: 4,
        base_seed: 9,
    };
    let out = sweep(&spec, &SweepOptions::default()).unwrap();
    assert_eq!(out.points.len(), 6);
    let coords: Vec<(f64, f64)> = out.points.iter().map(|p| (p.beta, p.r)).collect();
    assert_eq!(coords, vec![(0.0, 1.0), (0.0, 3.0), (0.5, 1.0), (0.5, 3.0), (1.0, 1.0), (1.0, 3.0)]);
    for p in &out.points {
        assert_eq!(p.rows.len(), 4);
        assert_eq!(p.overall.n_runs, 4);
        assert_eq!(p.low.n_runs + p.high.n_runs, 4);
        assert_eq!(p.rows.iter().map(|r| r.replicate).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        for stat in [p.overall.sigma_g, p.overall.sigma_p, p.overall.h, p.overall.p_w].into_iter().flatten() {
            assert!(stat.se >= 0.0);
        }
        assert!((p.overall.histogram.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn preset_grids_match_captions() {
    let grid = |name: &str| {
        let p = figure_preset(name).unwrap();
        assert_eq!((p.spec.base.agents, p.spec.base.memory, p.spec.base.threshold), (101, 3, -4.0));
        assert_eq!((p.spec.base.relax_steps, p.spec.base.measure_steps), (100_000, 1000));
        (p.spec.beta_values, p.spec.r_values, p.spec.runs_per_point, p.post)
    };
    let betas: Vec<f64> = (0..=20).map(|i| i as f64 * 0.05).collect();
    for (a, b) in beta_grid().iter().zip(&betas) {
        assert!((a - b).abs() < 1e-12);
    }

    let (b, r, n, post) = grid("fig1a");
    assert_eq!((b, r, n), (vec![0.2], vec![1.0, 2.0, 5.0], 100));
    assert!(post.histograms);
    let (b, r, _, post) = grid("fig1b");
    assert_eq!((b, r), (vec![0.8], vec![1.0, 1.05, 5.0]));
    assert!(post.histograms);
    let (b, r, n, post) = grid("fig2");
    assert_eq!((b.len(), r, n), (21, vec![1.0, 1.02, 1.05, 1.2, 2.0, 5.0], 100));
    assert_eq!(post.column, Column::SigmaG);
    let (b, r, _, post) = grid("fig3");
    assert_eq!((b, r), (vec![0.2, 0.8], vec![1.0, 1.05, 1.2, 5.0]));
    assert!(post.trajectories);
    let (b, r, _, post) = grid("fig4");
    assert_eq!((b.len(), r), (21, vec![1.0, 2.0, 5.0]));
    assert_eq!(post.column, Column::SigmaP);
    let (b, r, _, post) = grid("fig5");
    assert_eq!((b, r), (vec![0.2], vec![1.0, 2.0, 5.0]));
    assert!(post.regime_fit);
    let (b, r, _, post) = grid("fig6");
    assert_eq!((b, r.first(), r.last(), r.len()), (vec![0.0, 0.2, 0.4], Some(&1.0), Some(&11.0), 12));
    assert_eq!((post.column, post.against_r), (Column::H, true));
    let (b, r6, _, post) = grid("fig7");
    assert_eq!((b, r6), (vec![0.0, 0.2, 0.4], r));
    assert!(post.pw_vs_h);

    assert!(figure_preset("fig99").is_err());
}

#[test]
fn regime_fits_recover_opposite_lines() {
    use emg_impact::observables::ObservableSummary;
    let row = |g: f64, sp: f64| RunRow {
        replicate: 0,
        seed: 0,
        beta: 0.2,
        r: 1.0,
        summary: ObservableSummary {
            sigma_g: 0.1,
            g_mean: g,
            histogram: vec![0.05; 20],
            sigma_p: Some(sp),
            h: Some(1.0),
            p_w: Some(0.5),
            n_agents: 101,
            n_price_samples: 1000,
            n_trades: 10,
        },
    };
    let mut rows: Vec<RunRow> = (0..10).map(|i| { let g = 0.1 + 0.03 * i as f64; row(g, 7.0 - 6.0 * g) }).collect();
    rows.extend((0..10).map(|i| { let g = 0.6 + 0.03 * i as f64; row(g, 4.0 * g + 1.0) }));
    let [low, high] = regime_fits(&rows);
    let (lf, hf) = (low.fit.unwrap(), high.fit.unwrap());
    assert!((lf.slope + 6.0).abs() < 1e-9 && (hf.slope - 4.0).abs() < 1e-9);
    assert_eq!((low.n_points, high.n_points), (10, 10));
    let [_, none] = regime_fits(&rows[..10]);
    assert!(none.fit.is_none());
}
