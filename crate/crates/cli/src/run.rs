//! Scenario execution: limit reports for each λ, then CSV, SVG and JSON
//! artifacts.

use std::path::{Path, PathBuf};

use darboux_core::curve::{ellipse_polarized_curve, PoleOrder, PolarizedCurve};
use darboux_core::projective::{ProjectivePoint, StereoChart};
use darboux_core::transform::{
    limit_report, DarbouxTransform, LimitReport, SpacelikeRegime, TrackKind, TransformOptions, Verdict,
};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{InitialSpec, Scenario};
use crate::error::CliError;
use crate::report::{chart_xy, emit_report, write_csv, LambdaJson, ReportJson};
use crate::svg::{render, Figure};

/// Samples per octave of t used for the plotted tracks.
pub const PLOT_SAMPLES_PER_OCTAVE: u32 = 8;
const CURVE_SAMPLES: usize = 200;
const CIRCLE_SAMPLES: usize = 240;

/// Command-line overrides of the scenario file.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub k_max: Option<u32>,
    /// Replaces the limit tolerance (distance to ⟨c(0)⟩ and to circles).
    pub tol: Option<f64>,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub report: ReportJson,
    pub written: Vec<PathBuf>,
}

struct LambdaRun {
    report: LimitReport,
    plot: Vec<Vec<[f64; 2]>>,
}

fn chart() -> StereoChart {
    StereoChart::standard(4).expect("dimension 4 is valid")
}

fn chart_point(ch: &StereoChart, xy: [f64; 2]) -> Result<ProjectivePoint, CliError> {
    ch.lift(&DVector::from_row_slice(&xy))
        .and_then(ProjectivePoint::new)
        .map_err(|e| CliError::Config(format!("initial point {xy:?}: {e}")))
}

fn resolve_initials(
    scenario: &Scenario,
    pc: &PolarizedCurve,
    lambda: f64,
    opts: &TransformOptions,
) -> Result<Vec<ProjectivePoint>, CliError> {
    let ch = chart();
    let mut out = Vec::new();
    for spec in &scenario.initials {
        match spec {
            InitialSpec::Random { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                for _ in 0..*count {
                    let xy = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
                    out.push(chart_point(&ch, xy)?);
                }
            }
            InitialSpec::Coords { coords } => out.push(chart_point(&ch, *coords)?),
            InitialSpec::OnLimitCircle { on_limit_circle: s } => {
                let regime = SpacelikeRegime::new(pc, lambda, scenario.p, &opts.step).map_err(|e| {
                    CliError::Config(format!("on_limit_circle initial at λ = {lambda}: {e}"))
                })?;
                out.push(regime.circle_point(*s).map_err(|e| CliError::Numerical(e.to_string()))?);
            }
        }
    }
    Ok(out)
}

fn plot_times(p: f64, k_max: u32) -> Vec<f64> {
    (0..=k_max * PLOT_SAMPLES_PER_OCTAVE)
        .map(|j| p * 2f64.powf(-(j as f64) / PLOT_SAMPLES_PER_OCTAVE as f64))
        .collect()
}

/// Dense chart track of each Darboux track that produced samples. Tracks on
/// the limit circle use the exceptional representation, which stays on the
/// unstable rotating solution all the way down.
fn plot_tracks(pc: &PolarizedCurve, report: &LimitReport, opts: &TransformOptions) -> Vec<Vec<[f64; 2]>> {
    let ch = chart();
    let ts = plot_times(report.p, opts.k_max);
    let mut out = Vec::new();
    for tr in report.tracks.iter().filter(|t| t.kind == TrackKind::Darboux && !t.samples.is_empty()) {
        let Some(init) = tr.initial.as_ref().and_then(|x| ProjectivePoint::new(x.clone()).ok()) else { continue };
        let reps = if tr.on_limit_circle {
            let asc: Vec<f64> = ts.iter().rev().copied().collect();
            SpacelikeRegime::new(pc, report.lambda, report.p, &opts.step)
                .and_then(|r| r.circle_preimage(&init).and_then(|w| r.exceptional_darboux_reps(&w, &asc)))
                .map(|mut v| {
                    v.reverse();
                    v
                })
        } else {
            DarbouxTransform::new(pc, report.lambda, report.p, &init, &opts.step).and_then(|d| d.track_reps(&ts))
        };
        if let Ok(reps) = reps {
            out.push(reps.iter().map(|x| chart_xy(&ch, x).unwrap_or([f64::NAN; 2])).collect());
        }
    }
    out
}

fn run_lambda(scenario: &Scenario, pc: &PolarizedCurve, lambda: f64, opts: &TransformOptions) -> Result<LambdaRun, CliError> {
    let initials = resolve_initials(scenario, pc, lambda, opts)?;
    let report = limit_report(pc, lambda, scenario.p, &initials, opts)
        .map_err(|e| CliError::Numerical(format!("λ = {lambda}: {e}")))?;
    let plot = plot_tracks(pc, &report, opts);
    Ok(LambdaRun { report, plot })
}

fn figure(scenario: &Scenario, pc: &PolarizedCurve, runs: &[LambdaRun]) -> Figure {
    let ch = chart();
    let b = pc.domain_b();
    let curve = (0..=CURVE_SAMPLES)
        .filter_map(|i| chart_xy(&ch, &pc.point(b * i as f64 / CURVE_SAMPLES as f64)))
        .collect();
    let mut fig = Figure { title: scenario.name.clone(), curve, ..Figure::default() };
    for run in runs {
        fig.tracks.extend(run.plot.iter().cloned());
        let r = &run.report;
        for c in [&r.limit_circle, &r.curvature_circle0].into_iter().flatten() {
            if let Ok(pts) = c.sample_points(CIRCLE_SAMPLES) {
                let mut xy: Vec<[f64; 2]> = pts.iter().map(|q| chart_xy(&ch, q.rep()).unwrap_or([f64::NAN; 2])).collect();
                xy.push(xy[0]);
                fig.circles.push(xy);
            }
        }
    }
    if let Some(r) = runs.first() {
        fig.markers.extend(chart_xy(&ch, &r.report.c0));
    }
    fig
}

fn write_file(dir: &Path, name: &str, bytes: &[u8], written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    written.push(path);
    Ok(())
}

pub fn run_scenario(path: &Path, run: &RunOptions) -> Result<RunSummary, CliError> {
    let scenario = Scenario::load(path)?;
    run_loaded(scenario, run)
}

/// Runs a validated scenario. Artifacts are written even when some tracks
/// fail numerically; the failure is reported afterwards and names the
/// tracks.
pub fn run_loaded(mut scenario: Scenario, run: &RunOptions) -> Result<RunSummary, CliError> {
    if let Some(k) = run.k_max {
        scenario.k_max = k;
    }
    if let Some(t) = run.tol {
        scenario.tolerances.limit = t;
    }
    scenario.validate()?;
    let opts = scenario.transform_options();
    let c = &scenario.curve;
    let pc = ellipse_polarized_curve(c.a, c.b_axis, scenario.pole_order(), c.domain_b)
        .map_err(|e| CliError::Config(e.to_string()))?;
    debug_assert_ne!(pc.pole_order(), PoleOrder::Regular);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(run.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let results: Vec<Result<LambdaRun, CliError>> =
        pool.install(|| scenario.lambdas.par_iter().map(|&l| run_lambda(&scenario, &pc, l, &opts)).collect());
    let mut runs = Vec::with_capacity(results.len());
    for r in results {
        runs.push(r?);
    }
    let mut next_id = 0;
    for run in &mut runs {
        for tr in &mut run.report.tracks {
            tr.id = next_id;
            next_id += 1;
        }
    }

    let ch = chart();
    let report = ReportJson {
        scenario: scenario.name.clone(),
        pole_order: scenario.pole_order,
        p: scenario.p,
        k_max: scenario.k_max,
        reports: runs.iter().map(|r| LambdaJson::new(&ch, &r.report)).collect(),
    };

    std::fs::create_dir_all(&run.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", run.out_dir.display())))?;
    let mut written = Vec::new();
    let out = &scenario.outputs;
    if let Some(name) = &out.csv {
        let mut buf = Vec::new();
        let reports: Vec<LimitReport> = runs.iter().map(|r| r.report.clone()).collect();
        write_csv(&mut buf, &ch, &reports)?;
        write_file(&run.out_dir, name, &buf, &mut written)?;
    }
    if let Some(name) = &out.svg {
        write_file(&run.out_dir, name, render(&figure(&scenario, &pc, &runs)).as_bytes(), &mut written)?;
    }
    if let Some(name) = &out.report {
        write_file(&run.out_dir, name, emit_report(&report).as_bytes(), &mut written)?;
    }

    // Tracks without samples never got past integration; verdict-level
    // failures are results and only appear in the report.
    let broken: Vec<String> = runs
        .iter()
        .flat_map(|r| r.report.tracks.iter())
        .filter(|t| t.verdict == Verdict::Failed && t.samples.is_empty())
        .map(|t| format!("track {} ({}, λ = {}): {}", t.id, t.kind.as_str(), t.lambda, t.note))
        .collect();
    if !broken.is_empty() {
        return Err(CliError::Numerical(broken.join("; ")));
    }
    Ok(RunSummary { report, written })
}
