//! Polylines in the complex plane and the elementary geometry used by the
//! tracer and the period computations: point/segment distances, Hausdorff
//! distance, winding numbers and crossing counts.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An oriented discretized arc: ordered points with cumulative arclength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathPolyline {
    points: Vec<Complex64>,
    cumlen: Vec<f64>,
}

impl PathPolyline {
    pub fn new(points: Vec<Complex64>) -> Self {
        let mut cumlen = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        for (i, p) in points.iter().enumerate() {
            if i > 0 {
                acc += (p - points[i - 1]).norm();
            }
            cumlen.push(acc);
        }
        Self { points, cumlen }
    }

    /// Straight segment discretized into `n` equal pieces.
    pub fn segment(from: Complex64, to: Complex64, n: usize) -> Self {
        let n = n.max(1);
        Self::new(
            (0..=n)
                .map(|k| from + (to - from) * (k as f64 / n as f64))
                .collect(),
        )
    }

    /// Counter-clockwise circle (closed: last point equals first).
    pub fn circle(center: Complex64, radius: f64, n: usize) -> Self {
        let n = n.max(3);
        let mut pts: Vec<Complex64> = (0..n)
            .map(|k| {
                center + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64)
            })
            .collect();
        pts.push(pts[0]);
        Self::new(pts)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumlen
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn arclength(&self) -> f64 {
        self.cumlen.last().copied().unwrap_or(0.0)
    }

    pub fn first(&self) -> Option<Complex64> {
        self.points.first().copied()
    }

    pub fn last(&self) -> Option<Complex64> {
        self.points.last().copied()
    }

    pub fn is_closed(&self) -> bool {
        self.len() > 2 && self.points[0] == self.points[self.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.points.iter().rev().copied().collect())
    }

    /// Appends `other`, dropping its first point when it duplicates our last.
    pub fn concat(&self, other: &PathPolyline) -> Self {
        let mut pts = self.points.clone();
        let mut it = other.points.iter().copied().peekable();
        if let (Some(&last), Some(&first)) = (pts.last(), it.peek()) {
            if last == first {
                it.next();
            }
        }
        pts.extend(it);
        Self::new(pts)
    }

    /// Closes the polyline by appending its first point if needed.
    pub fn closed(&self) -> Self {
        if self.is_closed() || self.is_empty() {
            return self.clone();
        }
        let mut pts = self.points.clone();
        pts.push(pts[0]);
        Self::new(pts)
    }

    pub fn with_endpoints(&self, start: Complex64, end: Complex64) -> Self {
        let mut pts = self.points.clone();
        if let Some(p) = pts.first_mut() {
            *p = start;
        }
        if let Some(p) = pts.last_mut() {
            *p = end;
        }
        Self::new(pts)
    }

    pub fn require_points(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            return Err(Error::PathTooShort {
                needed,
                got: self.len(),
            });
        }
        Ok(())
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    /// Exact minimum distance from `z` to the polyline.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        match self.len() {
            0 => f64::INFINITY,
            1 => (z - self.points[0]).norm(),
            _ => self
                .segments()
                .map(|(p, q)| point_segment_distance(z, p, q))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Point at arclength `s` (clamped), linear along segments.
    pub fn point_at(&self, s: f64) -> Complex64 {
        let n = self.len();
        if n == 0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        if s <= 0.0 || n == 1 {
            return self.points[0];
        }
        if s >= self.arclength() {
            return self.points[n - 1];
        }
        let k = self.cumlen.partition_point(|&c| c <= s).min(n - 1);
        let (s0, s1) = (self.cumlen[k - 1], self.cumlen[k]);
        let t = if s1 > s0 { (s - s0) / (s1 - s0) } else { 0.0 };
        self.points[k - 1] + (self.points[k] - self.points[k - 1]) * t
    }

    /// Resamples at `n+1` equally spaced arclength stations.
    pub fn resample(&self, n: usize) -> Vec<Complex64> {
        let l = self.arclength();
        (0..=n).map(|k| self.point_at(l * k as f64 / n as f64)).collect()
    }

    /// Signed winding number of the closed polyline (closing chord implied)
    /// around `z`. Each straight chord subtends less than pi, so the principal
    /// argument of the ratio is the exact swept angle.
    pub fn winding_number(&self, z: Complex64) -> i32 {
        (self.winding_angle(z) / std::f64::consts::TAU).round() as i32
    }

    pub fn winding_angle(&self, z: Complex64) -> f64 {
        if self.len() < 2 {
            return 0.0;
        }
        let mut total = 0.0;
        let closed = self.closed();
        for (p, q) in closed.segments() {
            total += ((q - z) / (p - z)).arg();
        }
        total
    }

    /// Number of proper crossings between the segment `[p, q]` and this
    /// polyline; `None` when a crossing is too close to a vertex or the
    /// segment is nearly collinear with an edge.
    pub fn crossings_with_segment(&self, p: Complex64, q: Complex64) -> Option<usize> {
        let mut count = 0;
        for (u, v) in self.segments() {
            match segment_intersection(p, q, u, v) {
                Crossing::None => {}
                Crossing::Proper => count += 1,
                Crossing::Degenerate => return None,
            }
        }
        Some(count)
    }
}

pub fn point_segment_distance(z: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - p).norm();
    }
    let t = ((z - p) * d.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (z - (p + d * t)).norm()
}

/// Symmetric Hausdorff distance between two polylines (vertices against
/// segments).
pub fn hausdorff(a: &PathPolyline, b: &PathPolyline) -> f64 {
    let one_sided = |x: &PathPolyline, y: &PathPolyline| {
        x.points()
            .iter()
            .map(|&z| y.distance_to(z))
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    None,
    Proper,
    Degenerate,
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Classifies the intersection of segments `[p, q]` and `[u, v]`.
pub fn segment_intersection(p: Complex64, q: Complex64, u: Complex64, v: Complex64) -> Crossing {
    let r = q - p;
    let s = v - u;
    let denom = cross(r, s);
    let scale = r.norm() * s.norm();
    if scale == 0.0 {
        return Crossing::None;
    }
    let w = u - p;
    if denom.abs() <= 1e-12 * scale {
        // Parallel: only a problem when collinear and overlapping.
        if cross(w, r).abs() <= 1e-12 * r.norm() * w.norm().max(r.norm()) {
            let t0 = (w * r.conj()).re / r.norm_sqr();
            let t1 = ((v - p) * r.conj()).re / r.norm_sqr();
            let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
            if hi >= 0.0 && lo <= 1.0 {
                return Crossing::Degenerate;
            }
        }
        return Crossing::None;
    }
    let t = cross(w, s) / denom;
    let v_param = cross(w, r) / denom;
    let eps = 1e-9;
    let inside = |x: f64| x > eps && x < 1.0 - eps;
    let near_end = |x: f64| x.abs() <= eps || (x - 1.0).abs() <= eps;
    if inside(t) && inside(v_param) {
        Crossing::Proper
    } else if (near_end(t) || near_end(v_param))
        && (-eps..=1.0 + eps).contains(&t)
        && (-eps..=1.0 + eps).contains(&v_param)
    {
        Crossing::Degenerate
    } else {
        Crossing::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cumulative_arclength() {
        let p = PathPolyline::new(vec![c(0., 0.), c(3., 0.), c(3., 4.)]);
        assert_eq!(p.cumulative(), &[0.0, 3.0, 7.0]);
        assert_eq!(p.point_at(5.0), c(3., 2.));
    }

    #[test]
    fn winding_of_circles() {
        let circ = PathPolyline::circle(c(1., 0.), 0.5, 64);
        assert_eq!(circ.winding_number(c(1., 0.)), 1);
        assert_eq!(circ.winding_number(c(-1., 0.)), 0);
        assert_eq!(circ.reversed().winding_number(c(1., 0.)), -1);
        let twice = circ.concat(&circ);
        assert_eq!(twice.winding_number(c(1.2, 0.1)), 2);
    }

    #[test]
    fn distances() {
        let seg = PathPolyline::segment(c(0., 0.), c(2., 0.), 1);
        assert!((seg.distance_to(c(1., 1.)) - 1.0).abs() < 1e-15);
        assert!((seg.distance_to(c(3., 0.)) - 1.0).abs() < 1e-15);
        let other = PathPolyline::segment(c(0., 0.5), c(2., 0.5), 4);
        assert!((hausdorff(&seg, &other) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn crossings() {
        let arc = PathPolyline::new(vec![c(-1., 0.), c(0., 1.), c(1., 0.)]);
        assert_eq!(arc.crossings_with_segment(c(0.2, 0.), c(0.2, 2.)), Some(1));
        assert_eq!(arc.crossings_with_segment(c(0., 0.), c(0., 0.5)), Some(0));
        assert_eq!(arc.crossings_with_segment(c(-2., 0.5), c(2., 0.5)), Some(2));
        // Through a vertex.
        assert_eq!(arc.crossings_with_segment(c(0., 0.), c(0., 2.0)), None);
    }
}
