//! Command-line front end. Parameters come from flags or a TOML file whose
//! keys mirror the flag names; flags win. Exit codes: 0 success, 1 failed
//! verification or consistency check, 2 usage error.

mod literal;
mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geom::PathPolyline;
use crate::graph::{build_graph, CriticalGraph, Topology};
use crate::jacobi;
use crate::periods::{arc_period, PeriodReport};
use crate::qdiff::{property_p_with, PoleTypes, PropertyPReport, QDParams, ResidueSet, Tolerances};
use crate::tracer::Fate;
use crate::verify::{self, VerifyConfig};

pub use literal::parse_complex;
pub use svg::Window;

#[derive(Debug, Parser)]
#[command(name = "qdgraph", version, about = "Critical graphs of λ²(z−a)(z−b)/(z²−1)² dz²")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Common {
    /// Zero a of the quadratic differential.
    #[arg(long = "a", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    /// Zero b of the quadratic differential.
    #[arg(long = "b", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Option<Complex64>,
    /// Scale factor lambda
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Option<Complex64>,
    /// Jacobi parameter A (alternative to a, b, lambda).
    #[arg(long = "A", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_a: Option<Complex64>,
    /// Jacobi parameter B.
    #[arg(long = "B", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_b: Option<Complex64>,
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Relative tolerance of the algebraic identities
    #[arg(long)]
    pub tol_root: Option<f64>,
    /// Relative tolerance for treating a residue as real
    #[arg(long)]
    pub tol_imag: Option<f64>,
    /// Relative tolerance for a vanishing imaginary part in Property P
    #[arg(long)]
    pub tol_p: Option<f64>,
    /// Minimum separation of zeros and poles
    #[arg(long)]
    pub tol_coincide: Option<f64>,
    /// Output file prefix.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Figure center.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub center: Option<Complex64>,
    /// Figure half-width.
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Seed of the random suites
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Property P.
    CheckP(Common),
    /// Trace the critical graph and write SVG, JSON and CSV.
    Graph(Common),
    /// Period of an arc read from a CSV polyline file.
    Periods {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        arc: PathBuf,
        /// Trajectory id inside the file; default is the first joining a and b.
        #[arg(long)]
        traj_id: Option<String>,
    },
    /// Zeros of the Jacobi polynomial against the critical graph.
    Jacobi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run the seeded invariant suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Include the graph-based suites.
        #[arg(long)]
        full: bool,
    },
}

/// Numeric literal in the config file: a number or a complex string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Literal {
    Num(f64),
    Text(String),
}

impl Literal {
    fn complex(&self, key: &str) -> Result<Complex64, Usage> {
        match self {
            Literal::Num(x) => Ok(Complex64::new(*x, 0.0)),
            Literal::Text(s) => parse_complex(s).map_err(|e| Usage(format!("config key `{key}`: {e}"))),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    a: Option<Literal>,
    b: Option<Literal>,
    lambda: Option<Literal>,
    #[serde(rename = "A")]
    big_a: Option<Literal>,
    #[serde(rename = "B")]
    big_b: Option<Literal>,
    tol_root: Option<f64>,
    tol_imag: Option<f64>,
    tol_p: Option<f64>,
    tol_coincide: Option<f64>,
    out: Option<PathBuf>,
    center: Option<Literal>,
    half_width: Option<f64>,
    seed: Option<u64>,
    n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamSource {
    Direct { a: Complex64, b: Complex64, lambda: Complex64 },
    Jacobi { big_a: Complex64, big_b: Complex64 },
}

/// Resolved configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Option<ParamSource>,
    pub tol: Tolerances,
    pub out: PathBuf,
    pub window: Option<Window>,
    pub seed: u64,
    pub n: Option<usize>,
}

/// Usage or validation error (exit code 2).
#[derive(Debug)]
struct Usage(String);

/// Runtime failure (exit code 1).
#[derive(Debug)]
struct Failure(String);

enum Exit {
    Usage(Usage),
    Failure(Failure),
}

impl From<Usage> for Exit {
    fn from(u: Usage) -> Self {
        Exit::Usage(u)
    }
}

impl From<Failure> for Exit {
    fn from(f: Failure) -> Self {
        Exit::Failure(f)
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

impl RunConfig {
    fn resolve(c: &Common, n: Option<usize>) -> Result<Self, Usage> {
        let file: FileConfig = match &c.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
                toml::from_str(&text).map_err(|e| Usage(format!("config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let lit = |flag: Option<Complex64>, file: &Option<Literal>, key: &str| -> Result<Option<Complex64>, Usage> {
            match (flag, file) {
                (Some(z), _) => Ok(Some(z)),
                (None, Some(l)) => l.complex(key).map(Some),
                (None, None) => Ok(None),
            }
        };
        let a = lit(c.a, &file.a, "a")?;
        let b = lit(c.b, &file.b, "b")?;
        let lambda = lit(c.lambda, &file.lambda, "lambda")?;
        let big_a = lit(c.big_a, &file.big_a, "A")?;
        let big_b = lit(c.big_b, &file.big_b, "B")?;
        let direct = [a, b, lambda].iter().filter(|x| x.is_some()).count();
        let jac = [big_a, big_b].iter().filter(|x| x.is_some()).count();
        let source = match (direct, jac) {
            (0, 0) => None,
            (3, 0) => Some(ParamSource::Direct {
                a: a.unwrap(),
                b: b.unwrap(),
                lambda: lambda.unwrap(),
            }),
            (0, 2) => Some(ParamSource::Jacobi {
                big_a: big_a.unwrap(),
                big_b: big_b.unwrap(),
            }),
            (d, 0) => return Err(Usage(format!("need all of --a, --b, --lambda (got {d} of 3)"))),
            (0, j) => return Err(Usage(format!("need both --A and --B (got {j} of 2)"))),
            _ => return Err(Usage("give either --a/--b/--lambda or --A/--B, not both".into())),
        };
        let d = Tolerances::default();
        let tol = Tolerances {
            root: pick(c.tol_root, file.tol_root).unwrap_or(d.root),
            imag: pick(c.tol_imag, file.tol_imag).unwrap_or(d.imag),
            p: pick(c.tol_p, file.tol_p).unwrap_or(d.p),
            coincide: pick(c.tol_coincide, file.tol_coincide).unwrap_or(d.coincide),
        };
        for (name, v) in [("tol-root", tol.root), ("tol-imag", tol.imag), ("tol-p", tol.p), ("tol-coincide", tol.coincide)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Usage(format!("--{name} must be positive, got {v}")));
            }
        }
        let center = lit(c.center, &file.center, "center")?;
        let half = pick(c.half_width, file.half_width);
        if let Some(h) = half {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Usage(format!("--half-width must be positive, got {h}")));
            }
        }
        let window = match (center, half) {
            (None, None) => None,
            (Some(center), Some(half_width)) => Some(Window { center, half_width }),
            _ => return Err(Usage("--center and --half-width go together".into())),
        };
        Ok(Self {
            source,
            tol,
            out: pick(c.out.clone(), file.out).unwrap_or_else(|| PathBuf::from("qdgraph")),
            window,
            seed: pick(c.seed, file.seed).unwrap_or(0),
            n: n.or(file.n),
        })
    }

    fn params(&self) -> Result<QDParams, Usage> {
        let r = match self.source {
            None => return Err(Usage("parameters required: --a/--b/--lambda or --A/--B".into())),
            Some(ParamSource::Direct { a, b, lambda }) => QDParams::validate_with(a, b, lambda, &self.tol),
            Some(ParamSource::Jacobi { big_a, big_b }) => QDParams::from_jacobi_with(big_a, big_b, &self.tol),
        };
        r.map_err(|e| Usage(format!("invalid parameters: {e}")))
    }

    fn window_for(&self, p: &QDParams) -> Window {
        self.window.unwrap_or_else(|| {
            Window::around(&[p.a(), p.b(), Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)])
        })
    }

    fn path(&self, suffix: &str) -> PathBuf {
        let mut s = self.out.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Exit::Usage(Usage(m))) => {
            eprintln!("error: {m}");
            2
        }
        Err(Exit::Failure(Failure(m))) => {
            eprintln!("error: {m}");
            1
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), Exit> {
    match cmd {
        Command::CheckP(c) => cmd_check_p(&RunConfig::resolve(&c, None)?),
        Command::Graph(c) => cmd_graph(&RunConfig::resolve(&c, None)?),
        Command::Periods { common, arc, traj_id } => {
            cmd_periods(&RunConfig::resolve(&common, None)?, &arc, traj_id.as_deref())
        }
        Command::Jacobi { common, n } => cmd_jacobi(&RunConfig::resolve(&common, n)?),
        Command::Verify { common, full } => cmd_verify(&RunConfig::resolve(&common, None)?, full),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

pub fn property_p_lines(p: &QDParams, rep: &PropertyPReport) -> Vec<String> {
    let mut out = vec![format!("params: {p}")];
    out.push(format!("{:<8} {:<36} {:<12} {:<9} class", "signs", "value", "imag", "vanishes"));
    for c in &rep.values {
        out.push(format!(
            "{:<8} {:<36} {:<12.3e} {:<9} {}",
            c.signs.to_string(),
            fmt_c(c.value),
            c.im,
            c.vanishes,
            c.class.map(|k| k.label()).unwrap_or("-")
        ));
    }
    let classes: Vec<String> = if p.origin().is_some() {
        rep.satisfied_jacobi_classes().iter().map(|c| c.label().to_string()).collect()
    } else {
        rep.satisfied_classes.iter().map(|s| s.to_string()).collect()
    };
    out.push(if rep.satisfied {
        format!("verdict: satisfied via {}", classes.join(", "))
    } else {
        "verdict: not satisfied".to_string()
    });
    out
}

fn cmd_check_p(cfg: &RunConfig) -> Result<(), Exit> {
    let p = cfg.params()?;
    let rep = property_p_with(&p, &cfg.tol);
    for line in property_p_lines(&p, &rep) {
        println!("{line}");
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct ParamsJson {
    a: Complex64,
    b: Complex64,
    lambda: Complex64,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    big_a: Option<Complex64>,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none")]
    big_b: Option<Complex64>,
}

impl ParamsJson {
    fn new(p: &QDParams) -> Self {
        Self {
            a: p.a(),
            b: p.b(),
            lambda: p.lambda(),
            big_a: p.origin().map(|o| o.a),
            big_b: p.origin().map(|o| o.b),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct PropertyPJson {
    values: Vec<Complex64>,
    im: Vec<f64>,
    signs: Vec<String>,
    satisfied: bool,
    classes: Vec<String>,
}

impl PropertyPJson {
    fn new(r: &PropertyPReport) -> Self {
        let classes = r
            .values
            .iter()
            .filter(|c| c.vanishes)
            .map(|c| c.class.map(|k| k.label().to_string()).unwrap_or_else(|| c.signs.to_string()))
            .collect();
        Self {
            values: r.values.iter().map(|c| c.value).collect(),
            im: r.im_parts(),
            signs: r.values.iter().map(|c| c.signs.to_string()).collect(),
            satisfied: r.satisfied,
            classes,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct TrajectoryJson {
    id: String,
    origin: Option<String>,
    angle_index: Option<usize>,
    fate: Fate,
    arclength: f64,
    terminal_gap: f64,
    n_points: usize,
}

#[derive(Debug, Clone, Serialize)]
struct ShortJson {
    id: String,
    period: Complex64,
    period_error: f64,
    class: Option<String>,
    winding: (i32, i32),
    n_points: usize,
}

#[derive(Debug, Clone, Serialize)]
struct LoopJson {
    id: String,
    kind: String,
    around: String,
    winding: Option<(i32, i32)>,
}

#[derive(Debug, Clone, Serialize)]
struct GraphJson {
    params: ParamsJson,
    residues: ResidueSet,
    pole_types: PoleTypes,
    property_p: PropertyPJson,
    trajectories: Vec<TrajectoryJson>,
    shorts: Vec<ShortJson>,
    loops: Vec<LoopJson>,
    topology: Topology,
    consistent: bool,
    refined: bool,
    warnings: Vec<String>,
}

fn traj_id(g: &CriticalGraph, i: usize) -> String {
    match g.trajectories[i].origin {
        Some(o) => format!("{}{}", o.zero.label().to_uppercase(), o.angle_index),
        None => format!("T{i}"),
    }
}

fn graph_json(g: &CriticalGraph) -> GraphJson {
    let p = &g.params;
    let trajectories = (0..g.trajectories.len())
        .map(|i| {
            let t = &g.trajectories[i];
            TrajectoryJson {
                id: traj_id(g, i),
                origin: t.origin.map(|o| o.zero.label().to_string()),
                angle_index: t.origin.map(|o| o.angle_index),
                fate: t.fate,
                arclength: t.arclength,
                terminal_gap: t.terminal_gap,
                n_points: t.polyline.len(),
            }
        })
        .collect();
    let shorts = g
        .shorts
        .iter()
        .enumerate()
        .map(|(k, s)| ShortJson {
            id: format!("short{k}"),
            period: s.period.value,
            period_error: s.period.est_error,
            class: s.period.matched.as_ref().map(|m| match m.class {
                Some(c) => c.label().to_string(),
                None => m.signs.to_string(),
            }),
            winding: s.period.winding,
            n_points: s.polyline.len(),
        })
        .collect();
    let mut loops: Vec<LoopJson> = g
        .self_loops
        .iter()
        .enumerate()
        .map(|(k, l)| LoopJson {
            id: format!("selfloop{k}"),
            kind: "critical".into(),
            around: match l.winding {
                (0, 0) => "none".into(),
                (w, 0) if w != 0 => "-1".into(),
                (0, _) => "1".into(),
                _ => "-1 and 1".into(),
            },
            winding: Some(l.winding),
        })
        .collect();
    loops.extend(g.loops.iter().enumerate().map(|(k, l)| LoopJson {
        id: format!("loop{k}"),
        kind: format!("{:?}", l.trajectory.fate),
        around: format!("{:?}", l.pole),
        winding: None,
    }));
    GraphJson {
        params: ParamsJson::new(p),
        residues: g.residues,
        pole_types: g.pole_types,
        property_p: PropertyPJson::new(&g.property_p),
        trajectories,
        shorts,
        loops,
        topology: g.topology,
        consistent: g.consistent,
        refined: g.refined,
        warnings: g.warnings.clone(),
    }
}

/// Rows `traj_id,s,re,im` for every trajectory record, pole loop and short.
pub fn graph_csv(g: &CriticalGraph) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["traj_id", "s", "re", "im"])?;
    let mut emit = |id: &str, path: &PathPolyline| -> Result<(), csv::Error> {
        for (z, s) in path.points().iter().zip(path.cumulative()) {
            w.write_record([id, &s.to_string(), &z.re.to_string(), &z.im.to_string()])?;
        }
        Ok(())
    };
    for (i, t) in g.trajectories.iter().enumerate() {
        emit(&traj_id(g, i), &t.polyline)?;
    }
    for (k, l) in g.loops.iter().enumerate() {
        emit(&format!("loop{k}"), &l.trajectory.polyline)?;
    }
    for (k, s) in g.shorts.iter().enumerate() {
        emit(&format!("short{k}"), &s.polyline)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

fn graph_for(p: &QDParams) -> Result<CriticalGraph, Failure> {
    build_graph(p).map_err(|e| Failure(format!("graph construction failed: {e}")))
}

fn cmd_graph(cfg: &RunConfig) -> Result<(), Exit> {
    let p = cfg.params()?;
    let g = graph_for(&p)?;
    let json = serde_json::to_string_pretty(&graph_json(&g)).expect("serializable") + "\n";
    let csv = graph_csv(&g).map_err(|e| Failure(format!("csv: {e}")))?;
    let svg = svg::render(&g, &cfg.window_for(&p), &[]);
    write_file(&cfg.path(".json"), json.as_bytes())?;
    write_file(&cfg.path(".csv"), &csv)?;
    write_file(&cfg.path(".svg"), svg.as_bytes())?;
    println!("params: {p}");
    println!("topology: {:?}", g.topology);
    println!("shorts: {}", g.shorts.len());
    for (i, t) in g.trajectories.iter().enumerate() {
        println!("  {} {:?} arclength {:.6} gap {:.3e}", traj_id(&g, i), t.fate, t.arclength, t.terminal_gap);
    }
    for w in &g.warnings {
        println!("warning: {w}");
    }
    println!("wrote {}.{{svg,json,csv}}", cfg.out.display());
    if !g.consistent {
        return Err(Failure(format!(
            "short trajectories ({}) disagree with Property P ({})",
            g.shorts.len(),
            g.property_p.satisfied
        ))
        .into());
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
struct Row {
    traj_id: String,
    #[allow(dead_code)]
    s: f64,
    re: f64,
    im: f64,
}

/// Polylines of a `traj_id,s,re,im` file, in file order.
pub fn read_polylines(path: &Path) -> Result<Vec<(String, PathPolyline)>, String> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let headers = rd.headers().map_err(|e| e.to_string())?.clone();
    if headers.iter().collect::<Vec<_>>() != ["traj_id", "s", "re", "im"] {
        return Err(format!("{}: header must be traj_id,s,re,im", path.display()));
    }
    let mut out: Vec<(String, Vec<Complex64>)> = Vec::new();
    for row in rd.deserialize::<Row>() {
        let row = row.map_err(|e| format!("{}: {e}", path.display()))?;
        let z = Complex64::new(row.re, row.im);
        match out.last_mut() {
            Some((id, pts)) if *id == row.traj_id => pts.push(z),
            _ => out.push((row.traj_id, vec![z])),
        }
    }
    Ok(out.into_iter().map(|(id, pts)| (id, PathPolyline::new(pts))).collect())
}

fn joins_zeros(p: &QDParams, path: &PathPolyline, tol: f64) -> bool {
    let (Some(f), Some(l)) = (path.first(), path.last()) else {
        return false;
    };
    ((f - p.a()).norm() <= tol && (l - p.b()).norm() <= tol) || ((f - p.b()).norm() <= tol && (l - p.a()).norm() <= tol)
}

pub fn period_lines(rep: &PeriodReport) -> Vec<String> {
    let mut out = vec![
        format!("value: {}", fmt_c(rep.value)),
        format!("error estimate: {:e}", rep.est_error),
        format!("orientation: {}", if rep.orientation >= 0 { "a -> b" } else { "b -> a" }),
        format!("winding about -1, 1 (against reference arc): {} {}", rep.winding.0, rep.winding.1),
    ];
    match &rep.matched {
        Some(m) => {
            out.push(format!("matched: signs {} sign {:+} distance {:e}", m.signs, m.sign, m.distance));
            if let (Some(c), Some(s)) = (m.class, m.jacobi_sign) {
                out.push(format!("class: -i*value = {}2*pi*i*({})", if s > 0 { "+" } else { "-" }, c.label()));
            }
        }
        None => out.push("matched: none".to_string()),
    }
    out
}

fn cmd_periods(cfg: &RunConfig, arc: &Path, id: Option<&str>) -> Result<(), Exit> {
    let p = cfg.params()?;
    let lines = read_polylines(arc).map_err(Usage)?;
    let snap = 1e-6 * p.scale();
    let (name, path) = match id {
        Some(id) => lines
            .into_iter()
            .find(|(k, _)| k == id)
            .ok_or_else(|| Usage(format!("no trajectory `{id}` in {}", arc.display())))?,
        None => lines
            .into_iter()
            .find(|(_, path)| joins_zeros(&p, path, snap))
            .ok_or_else(|| Failure(format!("no polyline in {} joins a and b", arc.display())))?,
    };
    // Endpoints within the refinement gap count as the zeros themselves.
    let path = match (path.first(), path.last()) {
        (Some(f), Some(l)) if (f - p.a()).norm() <= snap && (l - p.b()).norm() <= snap => path.with_endpoints(p.a(), p.b()),
        (Some(f), Some(l)) if (f - p.b()).norm() <= snap && (l - p.a()).norm() <= snap => path.with_endpoints(p.b(), p.a()),
        _ => path,
    };
    let rep = arc_period(&p, &path, true).map_err(|e| Failure(format!("arc `{name}`: {e}")))?;
    println!("params: {p}");
    println!("arc: {name} ({} points)", path.len());
    for line in period_lines(&rep) {
        println!("{line}");
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ComparisonJson<'a> {
    params: ParamsJson,
    n: usize,
    degree: usize,
    residual: f64,
    uncertainty: f64,
    iterations: usize,
    comparison: &'a jacobi::MeasureComparison,
}

fn roots_csv(roots: &[Complex64]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["root_id", "re", "im"])?;
    for (k, r) in roots.iter().enumerate() {
        w.write_record([k.to_string(), r.re.to_string(), r.im.to_string()])?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

fn cmd_jacobi(cfg: &RunConfig) -> Result<(), Exit> {
    let n = cfg.n.ok_or_else(|| Usage("jacobi needs --n".into()))?;
    let p = cfg.params()?;
    let origin = p.origin().ok_or_else(|| Usage("jacobi needs --A and --B".into()))?;
    let roots_path = cfg.path("-roots.csv");
    if n == 0 {
        write_file(&roots_path, b"root_id,re,im\n")?;
        println!("notice: n = 0 gives an empty root set; comparison skipped");
        return Ok(());
    }
    let g = graph_for(&p)?;
    if g.shorts.is_empty() {
        for line in property_p_lines(&p, &g.property_p) {
            println!("{line}");
        }
        return Err(Failure("no short trajectory found; nothing to compare the roots with".into()).into());
    }
    let (rs, cmp) = jacobi::compare(origin.a, origin.b, n, &g).map_err(|e| Failure(format!("n = {n}: {e}")))?;
    let bytes = roots_csv(&rs.roots).map_err(|e| Failure(format!("csv: {e}")))?;
    write_file(&roots_path, &bytes)?;
    let json = ComparisonJson {
        params: ParamsJson::new(&p),
        n,
        degree: rs.len(),
        residual: rs.residual,
        uncertainty: rs.uncertainty,
        iterations: rs.report.iterations,
        comparison: &cmp,
    };
    let text = serde_json::to_string_pretty(&json).expect("serializable") + "\n";
    write_file(&cfg.path("-comparison.json"), text.as_bytes())?;
    let svg = svg::render(&g, &cfg.window_for(&p), &rs.roots);
    write_file(&cfg.path("-overlay.svg"), svg.as_bytes())?;
    println!("params: {p}");
    println!("n: {n}, roots: {}", rs.len());
    println!("mean distance to shorts: {:e}", cmp.mean_dist);
    println!("max distance to shorts: {:e}", cmp.max_dist);
    println!("outliers: {}", cmp.outliers);
    println!(
        "mass check (period/2pi): {} class {}",
        fmt_c(cmp.mass_check),
        cmp.mass_class.map(|c| c.label()).unwrap_or("-")
    );
    println!(
        "max Cauchy residual on |z| = {}: {:e}",
        cmp.ring_radius,
        cmp.cauchy_residuals.iter().copied().fold(0.0, f64::max)
    );
    println!("wrote {}-{{roots.csv,comparison.json,overlay.svg}}", cfg.out.display());
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, full: bool) -> Result<(), Exit> {
    let vc = VerifyConfig {
        seed: cfg.seed,
        tol: cfg.tol,
        full,
    };
    let results = verify::run_all(&vc);
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "seed: {}", cfg.seed);
    let _ = writeln!(out, "{:<22} {:>6} {:>12} {:>12}  status", "suite", "cases", "worst", "tol");
    for r in &results {
        let _ = writeln!(
            out,
            "{:<22} {:>6} {:>12.3e} {:>12.3e}  {}",
            r.name,
            r.cases,
            r.worst,
            r.tol,
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed()).collect();
    for r in &failed {
        let _ = writeln!(out, "failures in {} ({}):", r.name, r.failures.len());
        for f in r.failures.iter().take(10) {
            let _ = writeln!(out, "  {} :: {}", f.case, f.detail);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure(format!("{} suite(s) failed", failed.len())).into())
    }
}
