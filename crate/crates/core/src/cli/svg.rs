//! Static SVG figures of a critical graph, optionally with root markers.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::graph::CriticalGraph;
use crate::tracer::{Fate, TrajectoryRecord};

const SIZE: f64 = 800.0;

/// Square window `[c − h, c + h]` in both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub center: Complex64,
    pub half_width: f64,
}

impl Window {
    /// Smallest centered square around the points, padded by 30%.
    pub fn around(points: &[Complex64]) -> Self {
        let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in points {
            lo_re = lo_re.min(z.re);
            hi_re = hi_re.max(z.re);
            lo_im = lo_im.min(z.im);
            hi_im = hi_im.max(z.im);
        }
        let center = Complex64::new(0.5 * (lo_re + hi_re), 0.5 * (lo_im + hi_im));
        let half = 0.5 * (hi_re - lo_re).max(hi_im - lo_im);
        Self {
            center,
            half_width: 1.3 * half + 0.2,
        }
    }

    fn map(&self, z: Complex64) -> (f64, f64) {
        let k = SIZE / (2.0 * self.half_width);
        (
            (z.re - self.center.re + self.half_width) * k,
            (self.center.im + self.half_width - z.im) * k,
        )
    }
}

fn fate_color(f: Fate) -> &'static str {
    match f {
        Fate::ToPoleMinus1 => "#1f77b4",
        Fate::ToPolePlus1 => "#2ca02c",
        Fate::ToInfinity => "#9467bd",
        Fate::ToOtherZero => "#d62728",
        Fate::ToSameZero => "#ff7f0e",
        Fate::ClosedLoop => "#8c564b",
        Fate::Truncated => "#7f7f7f",
    }
}

fn path_data(w: &Window, t: &TrajectoryRecord) -> String {
    let mut d = String::new();
    for (k, &z) in t.polyline.points().iter().enumerate() {
        // Far points are clamped so the coordinates stay printable.
        let z = if (z - w.center).norm() > 100.0 * w.half_width {
            w.center + (z - w.center) * (100.0 * w.half_width / (z - w.center).norm())
        } else {
            z
        };
        let (x, y) = w.map(z);
        let _ = write!(d, "{}{x:.2} {y:.2}", if k == 0 { "M" } else { " L" });
    }
    d
}

/// One `<path>` per trajectory record (critical traces, then loop probes);
/// traces forming short trajectories are drawn highlighted.
pub fn render(g: &CriticalGraph, w: &Window, roots: &[Complex64]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(s, "<title>{}</title>", escape(&g.params.to_string()));
    let in_short: Vec<bool> = (0..g.trajectories.len())
        .map(|i| g.shorts.iter().any(|sh| sh.forward == i || sh.backward == Some(i)))
        .collect();
    for (i, t) in g.trajectories.iter().enumerate() {
        let (width, class) = if in_short[i] { (3.0, "short") } else { (1.2, "critical") };
        let _ = writeln!(
            s,
            r#"<path class="{class}" d="{}" fill="none" stroke="{}" stroke-width="{width}"/>"#,
            path_data(w, t),
            fate_color(t.fate)
        );
    }
    for l in &g.loops {
        let _ = writeln!(
            s,
            r#"<path class="loop" d="{}" fill="none" stroke="{}" stroke-width="1" stroke-dasharray="4 3"/>"#,
            path_data(w, &l.trajectory),
            fate_color(l.trajectory.fate)
        );
    }
    for pole in [-1.0, 1.0] {
        let (x, y) = w.map(Complex64::new(pole, 0.0));
        let _ = writeln!(
            s,
            r#"<g class="pole" stroke="black" stroke-width="2"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"#,
            x - 6.0,
            y - 6.0,
            x + 6.0,
            y + 6.0,
            x - 6.0,
            y + 6.0,
            x + 6.0,
            y - 6.0
        );
    }
    for z in g.params.zeros() {
        let (x, y) = w.map(z);
        let _ = writeln!(s, r#"<circle class="zero" cx="{x:.2}" cy="{y:.2}" r="5" fill="black"/>"#);
    }
    for &r in roots {
        let (x, y) = w.map(r);
        let _ = writeln!(s, r##"<circle class="root" cx="{x:.2}" cy="{y:.2}" r="2.5" fill="#e377c2"/>"##);
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
