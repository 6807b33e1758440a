//! JSON reports and CSV track tables.

use std::io::Write;

use darboux_core::minkowski::MinkVector;
use darboux_core::projective::{vector_line_distance, CircleSubspace, ProjectivePoint, StereoChart};
use darboux_core::transform::{LimitReport, Track};
use serde::Serialize;

use crate::error::CliError;

/// Stereographic coordinates of ⟨x⟩, or `None` at the projection centre.
pub fn chart_xy(chart: &StereoChart, x: &MinkVector) -> Option<[f64; 2]> {
    let p = ProjectivePoint::new(x.clone()).ok()?;
    let v = chart.project(&p).ok()?;
    (v.iter().all(|c| c.is_finite())).then(|| [v[0], v[1]])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointJson {
    /// Euclidean-unit representative in ℝ^{n+2}.
    pub rep: Vec<f64>,
    pub chart: Option<[f64; 2]>,
}

impl PointJson {
    pub fn new(chart: &StereoChart, x: &MinkVector) -> Self {
        let u = x / x.norm();
        Self { rep: u.iter().copied().collect(), chart: chart_xy(chart, &u) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleJson {
    /// Orthonormal (Euclidean) basis of the spanning subspace.
    pub basis: Vec<Vec<f64>>,
    /// (positive, negative, zero) eigenvalue counts of the restricted metric.
    pub signature: [usize; 3],
    /// Centre and radius in the chart; absent when the circle passes
    /// through the projection centre (a line in the chart).
    pub chart_center: Option<[f64; 2]>,
    pub chart_radius: Option<f64>,
}

/// Circle through three chart points, or `None` if they are collinear.
pub fn circumcircle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<([f64; 2], f64)> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    let scale = [a, b, c].iter().map(|p| p[0].abs() + p[1].abs()).fold(1.0, f64::max);
    if d.abs() <= 1e-12 * scale * scale {
        return None;
    }
    let n = |p: [f64; 2]| p[0] * p[0] + p[1] * p[1];
    let ux = (n(a) * (b[1] - c[1]) + n(b) * (c[1] - a[1]) + n(c) * (a[1] - b[1])) / d;
    let uy = (n(a) * (c[0] - b[0]) + n(b) * (a[0] - c[0]) + n(c) * (b[0] - a[0])) / d;
    let r = ((a[0] - ux).powi(2) + (a[1] - uy).powi(2)).sqrt();
    Some(([ux, uy], r))
}

impl CircleJson {
    pub fn new(chart: &StereoChart, c: &CircleSubspace) -> Self {
        let s = c.signature(1e-9);
        let basis = (0..c.rank()).map(|j| c.basis().column(j).iter().copied().collect()).collect();
        let pts: Vec<[f64; 2]> = c
            .sample_points(3)
            .unwrap_or_default()
            .iter()
            .filter_map(|q| chart_xy(chart, q.rep()))
            .collect();
        let cc = if pts.len() == 3 { circumcircle(pts[0], pts[1], pts[2]) } else { None };
        Self {
            basis,
            signature: [s.positive, s.negative, s.zero],
            chart_center: cc.map(|c| c.0),
            chart_radius: cc.map(|c| c.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterJson {
    pub point: PointJson,
    pub distance_to_c0: f64,
    pub distance_to_cbar0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrackJson {
    pub track_id: usize,
    pub kind: &'static str,
    pub lambda: f64,
    pub initial: Option<PointJson>,
    pub on_limit_circle: bool,
    pub verdict: &'static str,
    pub note: String,
    pub samples: usize,
    pub final_t: Option<f64>,
    pub final_distance_to_c0: Option<f64>,
    pub final_gap: Option<f64>,
    pub max_gap_late: Option<f64>,
    pub final_distance_to_limit_circle: Option<f64>,
    pub rotation_rate: Option<f64>,
    pub limit_estimate: Option<PointJson>,
    pub clusters: Vec<ClusterJson>,
}

impl TrackJson {
    pub fn new(chart: &StereoChart, tr: &Track, c0: &MinkVector, cbar0: Option<&MinkVector>) -> Self {
        let late = tr.gaps.len().saturating_sub(7);
        Self {
            track_id: tr.id,
            kind: tr.kind.as_str(),
            lambda: tr.lambda,
            initial: tr.initial.as_ref().map(|x| PointJson::new(chart, x)),
            on_limit_circle: tr.on_limit_circle,
            verdict: tr.verdict.as_str(),
            note: tr.note.clone(),
            samples: tr.samples.len(),
            final_t: tr.samples.last().map(|s| s.t),
            final_distance_to_c0: tr.final_distance(),
            final_gap: tr.final_gap(),
            max_gap_late: tr.gaps[late..].iter().copied().reduce(f64::max),
            final_distance_to_limit_circle: tr.samples.last().and_then(|s| s.distance_to_circle),
            rotation_rate: tr.rotation_rate,
            limit_estimate: tr.limit_estimate().map(|x| PointJson::new(chart, x)),
            clusters: tr
                .clusters
                .iter()
                .map(|c| ClusterJson {
                    point: PointJson::new(chart, c),
                    distance_to_c0: vector_line_distance(c, c0).unwrap_or(f64::NAN),
                    distance_to_cbar0: cbar0.map(|b| vector_line_distance(c, b).unwrap_or(f64::NAN)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaJson {
    pub lambda: f64,
    pub c0: PointJson,
    pub cbar0: Option<PointJson>,
    pub curvature_circle0: Option<CircleJson>,
    pub limit_circle: Option<CircleJson>,
    pub tracks: Vec<TrackJson>,
}

impl LambdaJson {
    pub fn new(chart: &StereoChart, r: &LimitReport) -> Self {
        Self {
            lambda: r.lambda,
            c0: PointJson::new(chart, &r.c0),
            cbar0: r.cbar0.as_ref().map(|x| PointJson::new(chart, x)),
            curvature_circle0: r.curvature_circle0.as_ref().map(|c| CircleJson::new(chart, c)),
            limit_circle: r.limit_circle.as_ref().map(|c| CircleJson::new(chart, c)),
            tracks: r.tracks.iter().map(|t| TrackJson::new(chart, t, &r.c0, r.cbar0.as_ref())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub scenario: String,
    pub pole_order: u8,
    pub p: f64,
    pub k_max: u32,
    pub reports: Vec<LambdaJson>,
}

impl ReportJson {
    pub fn tracks(&self) -> impl Iterator<Item = &TrackJson> {
        self.reports.iter().flat_map(|r| r.tracks.iter())
    }
}

/// Deterministic pretty-printed JSON; non-finite numbers become `null`.
pub fn emit_report(report: &ReportJson) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report types serialize");
    s.push('\n');
    s
}

pub const CSV_HEADER: [&str; 8] =
    ["track_id", "kind", "lambda", "t", "x", "y", "distance_to_c0", "distance_to_limit_circle"];

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else {
        String::new()
    }
}

/// One row per (track, t_k); chart coordinates and the limit-circle distance
/// are left empty where undefined.
pub fn write_csv<W: Write>(out: W, chart: &StereoChart, reports: &[LimitReport]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        for tr in &r.tracks {
            for s in &tr.samples {
                let xy = chart_xy(chart, &s.point);
                w.write_record([
                    tr.id.to_string(),
                    tr.kind.as_str().to_string(),
                    num(tr.lambda),
                    num(s.t),
                    xy.map_or(String::new(), |c| num(c[0])),
                    xy.map_or(String::new(), |c| num(c[1])),
                    num(s.distance_to_c0),
                    s.distance_to_circle.map_or(String::new(), num),
                ])
                .map_err(io)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_serializes() {
        let r = ReportJson { scenario: "empty".into(), pole_order: 1, p: 0.5, k_max: 4, reports: vec![] };
        let v: serde_json::Value = serde_json::from_str(&emit_report(&r)).unwrap();
        assert_eq!(v["reports"].as_array().unwrap().len(), 0);
        assert_eq!(r.tracks().count(), 0);
    }

    #[test]
    fn circumcircle_of_unit_points() {
        let (c, r) = circumcircle([1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]).unwrap();
        assert!(c[0].abs() < 1e-15 && c[1].abs() < 1e-15);
        assert!((r - 1.0).abs() < 1e-15);
        assert!(circumcircle([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]).is_none());
    }

    #[test]
    fn csv_has_header_only_without_reports() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &StereoChart::standard(4).unwrap(), &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), CSV_HEADER.join(",") + "\n");
    }
}
