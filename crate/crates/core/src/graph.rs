//! Assembly of the critical graph: the six critical trajectories, their
//! pairing into short trajectories and self-loops, closed trajectories around
//! circle-type poles, and the topology label.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{hausdorff, PathPolyline};
use crate::periods::{classify_arc, trajectory_integral, PeriodReport};
use crate::qdiff::{classify_poles, property_p, residues, PoleType, PoleTypes, PropertyPReport, QDParams, ResidueSet};
use crate::tracer::{trace, trace_critical, Fate, StepLimits, TrajectoryRecord, ZeroId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    OneShortTwoInfinite,
    /// One short, a self-loop of one zero around a pole, two infinite.
    OneShortLoopTwoInfinite,
    TwoShortJordanCurve,
    RealLoopsPlusSegment,
    RealLoopsCommonEdge,
    NoShort,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PoleId {
    Minus1,
    Plus1,
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortTrajectory {
    /// Polyline from `a` to `b` with endpoints snapped.
    pub polyline: PathPolyline,
    pub period: PeriodReport,
    /// Indices into `CriticalGraph::trajectories` of the a-side and b-side traces.
    pub forward: usize,
    pub backward: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfLoop {
    pub zero: ZeroId,
    pub polyline: PathPolyline,
    /// Winding numbers around `−1` and `+1`.
    pub winding: (i32, i32),
    pub traces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleLoop {
    pub pole: PoleId,
    pub trajectory: TrajectoryRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalGraph {
    pub params: QDParams,
    pub residues: ResidueSet,
    pub pole_types: PoleTypes,
    pub property_p: PropertyPReport,
    pub trajectories: Vec<TrajectoryRecord>,
    pub shorts: Vec<ShortTrajectory>,
    pub self_loops: Vec<SelfLoop>,
    pub loops: Vec<PoleLoop>,
    pub topology: Topology,
    /// Shorts exist exactly when Property P holds.
    pub consistent: bool,
    /// Whether the graph had to be re-traced with tighter tolerances.
    pub refined: bool,
    pub warnings: Vec<String>,
}

impl CriticalGraph {
    pub fn has_short(&self) -> bool {
        !self.shorts.is_empty()
    }

    pub fn infinite_fates(&self) -> Vec<Fate> {
        let used: Vec<usize> = self
            .shorts
            .iter()
            .flat_map(|s| std::iter::once(s.forward).chain(s.backward))
            .chain(self.self_loops.iter().flat_map(|l| l.traces.iter().copied()))
            .collect();
        self.trajectories
            .iter()
            .enumerate()
            .filter(|(i, t)| !used.contains(i) && t.fate.is_infinite())
            .map(|(_, t)| t.fate)
            .collect()
    }
}

/// Merges an a-side and a b-side trace of the same short trajectory into one
/// polyline from `a` to `b`.
pub fn refine_short(p: &QDParams, forward: &TrajectoryRecord, backward: &TrajectoryRecord) -> Result<PathPolyline> {
    let lim = StepLimits::for_params(p);
    let limit = lim.delta_short;
    let back = backward.polyline.reversed();
    let distance = hausdorff(&forward.polyline, &back);
    if distance >= limit {
        return Err(Error::UnmatchedTraces { distance, limit });
    }
    let max_gap = 1e-6 * p.scale();
    for t in [forward, backward] {
        if t.fate != Fate::ToOtherZero || t.terminal_gap > max_gap {
            return Err(Error::ArcEndpoints { gap: t.terminal_gap });
        }
    }
    let lf = forward.polyline.arclength();
    let lb = back.arclength();
    let mut pts: Vec<Complex64> = forward
        .polyline
        .points()
        .iter()
        .zip(forward.polyline.cumulative())
        .filter(|(_, &s)| s <= 0.5 * lf)
        .map(|(&z, _)| z)
        .collect();
    pts.extend(
        back.points()
            .iter()
            .zip(back.cumulative())
            .filter(|(_, &s)| s > 0.5 * lb)
            .map(|(&z, _)| z),
    );
    let merged = PathPolyline::new(pts).with_endpoints(p.a(), p.b());
    Ok(merged)
}

fn snap_single(p: &QDParams, t: &TrajectoryRecord) -> PathPolyline {
    match t.origin.map(|o| o.zero) {
        Some(ZeroId::B) => t.polyline.reversed().with_endpoints(p.a(), p.b()),
        _ => t.polyline.with_endpoints(p.a(), p.b()),
    }
}

fn trace_all(p: &QDParams, limits: &StepLimits) -> Result<Vec<TrajectoryRecord>> {
    let jobs: Vec<(ZeroId, usize)> = [ZeroId::A, ZeroId::B]
        .iter()
        .flat_map(|&z| (0..3).map(move |k| (z, k)))
        .collect();
    jobs.par_iter()
        .map(|&(z, k)| trace_critical(p, z, k, limits))
        .collect()
}

fn pair_by_hausdorff(
    left: &[usize],
    right: &[usize],
    dist: impl Fn(usize, usize) -> f64,
    limit: f64,
) -> (Vec<(usize, usize)>, Vec<usize>, Vec<usize>) {
    let mut cand: Vec<(f64, usize, usize)> = left
        .iter()
        .flat_map(|&i| right.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| (dist(i, j), i, j))
        .filter(|(d, _, _)| *d < limit)
        .collect();
    cand.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used = Vec::new();
    let mut pairs = Vec::new();
    for (_, i, j) in cand {
        if !used.contains(&i) && !used.contains(&j) {
            used.push(i);
            used.push(j);
            pairs.push((i, j));
        }
    }
    let rest_l = left.iter().copied().filter(|i| !used.contains(i)).collect();
    let rest_r = right.iter().copied().filter(|i| !used.contains(i)).collect();
    (pairs, rest_l, rest_r)
}

fn probe_loops(p: &QDParams, types: &PoleTypes, limits: &StepLimits) -> Vec<(PoleId, Result<TrajectoryRecord>)> {
    let mut jobs = Vec::new();
    for (id, pole, ty) in [
        (PoleId::Minus1, Complex64::new(-1.0, 0.0), types.minus1),
        (PoleId::Plus1, Complex64::new(1.0, 0.0), types.plus1),
    ] {
        if ty != PoleType::Circle {
            continue;
        }
        let room = (pole - p.a()).norm().min((pole - p.b()).norm()).min(2.0);
        let rho = 0.25 * room;
        // Offset on the side facing away from the zeros.
        let away = pole - 0.5 * (p.a() + p.b());
        let dir = if away.norm() > 0.0 { away / away.norm() } else { Complex64::new(1.0, 0.0) };
        jobs.push((id, pole + dir * rho, dir * Complex64::new(0.0, 1.0)));
    }
    if types.inf == PoleType::Circle {
        let r = 10.0 * p.scale().max(p.a().norm()).max(p.b().norm());
        jobs.push((PoleId::Infinity, Complex64::new(r, 0.0), Complex64::new(0.0, 1.0)));
    }
    jobs.into_par_iter()
        .map(|(id, start, dir)| (id, trace(p, start, dir, limits)))
        .collect()
}

fn classify_topology(p: &QDParams, shorts: &[ShortTrajectory], self_loops: &[SelfLoop]) -> Topology {
    let m1 = Complex64::new(-1.0, 0.0);
    let p1 = Complex64::new(1.0, 0.0);
    match (shorts.len(), self_loops.len()) {
        (0, _) => Topology::NoShort,
        (1, 0) => Topology::OneShortTwoInfinite,
        (1, 1) => Topology::OneShortLoopTwoInfinite,
        (1, 2) => {
            let around: Vec<(i32, i32)> = self_loops.iter().map(|l| l.winding).collect();
            let separate = around.iter().any(|w| w.0 != 0 && w.1 == 0) && around.iter().any(|w| w.1 != 0 && w.0 == 0);
            if separate {
                Topology::RealLoopsPlusSegment
            } else {
                Topology::Other
            }
        }
        (2, 0) => {
            let curve = shorts[0].polyline.concat(&shorts[1].polyline.reversed());
            if curve.winding_number(m1).abs() == 1 && curve.winding_number(p1).abs() == 1 {
                Topology::TwoShortJordanCurve
            } else {
                Topology::Other
            }
        }
        (3, 0) => {
            // Some two shorts bound a loop around −1 only and some two around +1 only.
            let mut minus = false;
            let mut plus = false;
            for i in 0..3 {
                for j in i + 1..3 {
                    let curve = shorts[i].polyline.concat(&shorts[j].polyline.reversed());
                    let (w1, w2) = (curve.winding_number(m1).abs(), curve.winding_number(p1).abs());
                    minus |= w1 == 1 && w2 == 0;
                    plus |= w1 == 0 && w2 == 1;
                }
            }
            let _ = p;
            if minus && plus {
                Topology::RealLoopsCommonEdge
            } else {
                Topology::Other
            }
        }
        _ => Topology::Other,
    }
}

fn assemble(p: &QDParams, limits: &StepLimits) -> Result<CriticalGraph> {
    let res = residues(p);
    let pole_types = classify_poles(&res)?;
    let pp = property_p(p);
    let trajectories = trace_all(p, limits)?;
    let mut warnings = Vec::new();

    let from = |z: ZeroId, fate: Fate| -> Vec<usize> {
        trajectories
            .iter()
            .enumerate()
            .filter(|(_, t)| t.fate == fate && t.origin.map(|o| o.zero) == Some(z))
            .map(|(i, _)| i)
            .collect()
    };
    let limit = limits.delta_short;

    // Short trajectories: a-side traces against reversed b-side traces.
    let reversed: Vec<PathPolyline> = trajectories.iter().map(|t| t.polyline.reversed()).collect();
    let (pairs, lone_a, lone_b) = pair_by_hausdorff(
        &from(ZeroId::A, Fate::ToOtherZero),
        &from(ZeroId::B, Fate::ToOtherZero),
        |i, j| hausdorff(&trajectories[i].polyline, &reversed[j]),
        limit,
    );
    let mut shorts = Vec::new();
    for (i, j) in pairs {
        let polyline = refine_short(p, &trajectories[i], &trajectories[j])?;
        shorts.push((polyline, i, Some(j)));
    }
    for i in lone_a.into_iter().chain(lone_b) {
        warnings.push(format!("trace {i} reaches the other zero without a matching partner"));
        shorts.push((snap_single(p, &trajectories[i]), i, None));
    }
    let shorts: Vec<ShortTrajectory> = shorts
        .into_par_iter()
        .map(|(polyline, forward, backward)| {
            classify_arc(p, &polyline).map(|period| ShortTrajectory {
                polyline,
                period,
                forward,
                backward,
            })
        })
        .collect::<Result<_>>()?;

    // Self-loops: the two traces of one zero running around the same loop.
    let mut self_loops = Vec::new();
    for z in [ZeroId::A, ZeroId::B] {
        let idx = from(z, Fate::ToSameZero);
        let (pairs, lone, _) = pair_by_hausdorff(
            &idx,
            &idx,
            |i, j| hausdorff(&trajectories[i].polyline, &reversed[j]),
            limit,
        );
        let zero = z.point(p);
        let mut make = |traces: Vec<usize>| {
            let poly = trajectories[traces[0]].polyline.with_endpoints(zero, zero);
            let winding = (
                poly.winding_number(Complex64::new(-1.0, 0.0)),
                poly.winding_number(Complex64::new(1.0, 0.0)),
            );
            self_loops.push(SelfLoop {
                zero: z,
                polyline: poly,
                winding,
                traces,
            });
        };
        for (i, j) in pairs {
            make(vec![i, j]);
        }
        for i in lone {
            warnings.push(format!("self-loop trace {i} has no reverse partner"));
            make(vec![i]);
        }
    }

    let mut loops = Vec::new();
    for (pole, rec) in probe_loops(p, &pole_types, limits) {
        match rec {
            Ok(t) if t.fate == Fate::ClosedLoop => loops.push(PoleLoop { pole, trajectory: t }),
            Ok(t) => warnings.push(format!("probe near circle-type pole {pole:?} ended with {:?}", t.fate)),
            Err(e) => warnings.push(format!("probe near circle-type pole {pole:?} failed: {e}")),
        }
    }

    for (i, t) in trajectories.iter().enumerate() {
        match t.fate {
            Fate::Truncated => warnings.push(format!("trace {i} truncated after {} steps", t.steps)),
            Fate::ToInfinity if pole_types.inf == PoleType::Circle => {
                warnings.push(format!("trace {i} reaches infinity, which is a circle-type pole"))
            }
            _ => {}
        }
    }

    let topology = classify_topology(p, &shorts, &self_loops);
    let consistent = shorts.is_empty() != pp.satisfied;
    if !consistent {
        warnings.push(format!(
            "short trajectories found: {}, Property P satisfied: {}",
            shorts.len(),
            pp.satisfied
        ));
    }
    if shorts.len() >= 2 {
        for i in 0..shorts.len() {
            for j in i + 1..shorts.len() {
                let (x, y) = (&shorts[i].period.matched, &shorts[j].period.matched);
                if let (Some(x), Some(y)) = (x, y) {
                    if x.signs == y.signs {
                        warnings.push(format!("shorts {i} and {j} share the period class {}", x.signs));
                    }
                }
            }
        }
    }

    Ok(CriticalGraph {
        params: *p,
        residues: res,
        pole_types,
        property_p: pp,
        trajectories,
        shorts,
        self_loops,
        loops,
        topology,
        consistent,
        refined: false,
        warnings,
    })
}

/// Builds the critical graph with default limits; when the short-trajectory
/// verdict disagrees with Property P the graph is re-traced once with
/// tighter tolerances.
pub fn build_graph(p: &QDParams) -> Result<CriticalGraph> {
    build_graph_with(p, &StepLimits::for_params(p))
}

pub fn build_graph_with(p: &QDParams, limits: &StepLimits) -> Result<CriticalGraph> {
    let g = assemble(p, limits)?;
    if g.consistent && !g.trajectories.iter().any(|t| t.fate == Fate::Truncated) {
        return Ok(g);
    }
    let mut tighter = limits.refined(1e-2);
    tighter.gap_target = limits.gap_target.min(1e-8 * p.scale());
    let mut g2 = assemble(p, &tighter)?;
    g2.refined = true;
    Ok(g2)
}

/// `max |Im ∫ √φ/(t²−1) dt|` over the trajectory polylines of the graph,
/// each relative to `1 + arclength`, computed by the period quadrature.
pub fn level_invariant(p: &QDParams, g: &CriticalGraph) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t in &g.trajectories {
        let e = trajectory_integral(p, &t.polyline, true)?;
        worst = worst.max(e.value.im.abs() / (1.0 + t.arclength));
    }
    for l in &g.loops {
        let e = trajectory_integral(p, &l.trajectory.polyline, false)?;
        worst = worst.max(e.value.im.abs() / (1.0 + l.trajectory.arclength));
    }
    Ok(worst)
}
