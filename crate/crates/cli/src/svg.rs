//! Self-contained SVG plots in the stereographic chart: the base curve solid,
//! transform tracks dashed, circles dotted.

use std::fmt::Write;

#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub title: String,
    pub curve: Vec<[f64; 2]>,
    pub tracks: Vec<Vec<[f64; 2]>>,
    pub circles: Vec<Vec<[f64; 2]>>,
    pub markers: Vec<[f64; 2]>,
}

const SIZE: f64 = 600.0;
const MARGIN: f64 = 0.35;

struct View {
    x0: f64,
    y1: f64,
    scale: f64,
    lo: [f64; 2],
    hi: [f64; 2],
}

impl View {
    fn fit(points: &[[f64; 2]]) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points.iter().filter(|p| p[0].is_finite() && p[1].is_finite()) {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        if !lo[0].is_finite() {
            lo = [-1.0, -1.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-6) * (1.0 + 2.0 * MARGIN);
        let cx = 0.5 * (lo[0] + hi[0]);
        let cy = 0.5 * (lo[1] + hi[1]);
        let lo = [cx - span / 2.0, cy - span / 2.0];
        let hi = [cx + span / 2.0, cy + span / 2.0];
        Self { x0: lo[0], y1: hi[1], scale: SIZE / span, lo, hi }
    }

    fn inside(&self, p: &[f64; 2]) -> bool {
        p[0].is_finite() && p[1].is_finite() && (0..2).all(|i| p[i] >= self.lo[i] && p[i] <= self.hi[i])
    }

    fn map(&self, p: &[f64; 2]) -> (f64, f64) {
        ((p[0] - self.x0) * self.scale, (self.y1 - p[1]) * self.scale)
    }

    /// Maximal runs of consecutive visible points.
    fn runs(&self, pts: &[[f64; 2]]) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = String::new();
        let mut n = 0;
        for p in pts {
            if self.inside(p) {
                let (x, y) = self.map(p);
                let _ = write!(cur, "{}{x:.2},{y:.2}", if n > 0 { " " } else { "" });
                n += 1;
            } else {
                if n > 1 {
                    out.push(std::mem::take(&mut cur));
                }
                cur.clear();
                n = 0;
            }
        }
        if n > 1 {
            out.push(cur);
        }
        out
    }
}

/// Renders the figure; the view is fitted to the curve and markers.
pub fn render(fig: &Figure) -> String {
    let mut anchor = fig.curve.clone();
    anchor.extend_from_slice(&fig.markers);
    let view = View::fit(&anchor);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&fig.title));
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for c in &fig.circles {
        for pts in view.runs(c) {
            let _ = writeln!(
                s,
                r##"<polyline class="circle" points="{pts}" fill="none" stroke="#888888" stroke-width="0.8" stroke-dasharray="1 3"/>"##
            );
        }
    }
    for pts in view.runs(&fig.curve) {
        let _ = writeln!(s, r##"<polyline class="curve" points="{pts}" fill="none" stroke="#000000" stroke-width="2"/>"##);
    }
    for (i, t) in fig.tracks.iter().enumerate() {
        for pts in view.runs(t) {
            let _ = writeln!(
                s,
                r##"<polyline class="track" data-track="{i}" points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.2" stroke-dasharray="6 4"/>"##
            );
        }
    }
    for m in fig.markers.iter().filter(|m| view.inside(m)) {
        let (x, y) = view.map(m);
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#c0392b"/>"##);
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dashed_tracks_and_solid_curve() {
        let fig = Figure {
            title: "a < b".into(),
            curve: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]],
            tracks: vec![vec![[0.2, 0.2], [0.5, 0.5], [1e9, 0.0], [0.6, 0.6], [0.7, 0.7]]],
            circles: vec![],
            markers: vec![[1.0, 0.0]],
        };
        let s = render(&fig);
        assert_eq!(s.matches(r#"class="curve""#).count(), 1);
        // the far point splits the track into two visible runs
        assert_eq!(s.matches(r#"class="track""#).count(), 2);
        assert!(s.contains("stroke-dasharray=\"6 4\""));
        assert!(s.contains("a &lt; b"));
        assert!(!s.contains("href"));
    }
}
