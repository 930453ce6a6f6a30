use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use qdgraph::periods::reference_arc;
use qdgraph::QDParams;

fn qdgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn value_line(out: &str) -> Complex64 {
    let line = out.lines().find(|l| l.starts_with("value: ")).expect("value line");
    let lit = line.trim_start_matches("value: ");
    qdgraph::cli::parse_complex(lit).expect("printed value parses")
}

fn write_arc(path: &Path, id: &str, pts: &[Complex64]) {
    let mut s = String::from("traj_id,s,re,im\n");
    for (k, z) in pts.iter().enumerate() {
        s.push_str(&format!("{id},{k},{},{}\n", z.re, z.im));
    }
    fs::write(path, s).unwrap();
}

#[test]
fn check_p_reports_class_one() {
    let o = qdgraph(&["check-p", "--A", "1+0.1i", "--B", "-1+0.1i"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("verdict: satisfied via 1"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 4);
}

#[test]
fn check_p_real_case_lists_all_values() {
    let o = qdgraph(&["check-p", "--A", "2", "--B", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('(')).count(), 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["check-p", "--A", "1+0.1x", "--B", "3"],
        vec!["check-p", "--A", "1", "--B", "2", "--a", "0.5"],
        vec!["check-p", "--a", "0.5", "--b", "0.2"],
        vec!["check-p"],
        vec!["check-p", "--A", "1", "--B", "2", "--tol-p", "-1"],
        vec!["check-p", "--a", "0.5", "--b", "0.5", "--lambda", "1"],
        vec!["jacobi", "--a", "0.5", "--b", "0.2", "--lambda", "1", "--n", "4"],
        vec!["frobnicate"],
    ] {
        let o = qdgraph(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "A = \"1+0.1i\"\nB = \"-1+0.1i\"\ntol_p = 1e-8\n").unwrap();
    let o = qdgraph(&["check-p", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), stdout(&qdgraph(&["check-p", "--A", "1+0.1i", "--B", "-1+0.1i"])));
    fs::write(&cfg, "A = 1\nbogus = 2\n").unwrap();
    assert_eq!(code(&qdgraph(&["check-p", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn graph_outputs_are_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("one");
    let p2 = dir.path().join("two");
    for p in [&p1, &p2] {
        let o = qdgraph(&["graph", "--A", "-1.1+0.1i", "--B", "1", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for ext in ["csv", "json"] {
        let a = fs::read(p1.with_extension(ext)).unwrap();
        let b = fs::read(p2.with_extension(ext)).unwrap();
        assert!(a == b, "{ext} differs between identical runs");
    }
    let json: serde_json::Value = serde_json::from_slice(&fs::read(p1.with_extension("json")).unwrap()).unwrap();
    for key in ["params", "residues", "pole_types", "property_p", "trajectories", "shorts", "topology"] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(json["topology"], "OneShortLoopTwoInfinite");
    assert_eq!(json["property_p"]["values"].as_array().unwrap().len(), 4);
    let n_traj = json["trajectories"].as_array().unwrap().len();
    let n_probe = json["loops"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["kind"] != "critical")
        .count();

    let svg = fs::read_to_string(p1.with_extension("svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).expect("well-formed SVG");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let paths = doc.descendants().filter(|n| n.has_tag_name("path")).count();
    assert_eq!(paths, n_traj + n_probe);

    let csv = fs::read_to_string(p1.with_extension("csv")).unwrap();
    assert!(csv.starts_with("traj_id,s,re,im\n"));
    assert!(!csv.contains('\r'));
}

#[test]
fn graph_csv_round_trips_through_periods() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("g");
    let params = ["--A", "1+0.1i", "--B", "-1+0.1i"];
    let mut args = vec!["graph"];
    args.extend(params);
    args.extend(["--out", prefix.to_str().unwrap()]);
    assert_eq!(code(&qdgraph(&args)), 0);
    let csv = prefix.with_extension("csv");

    let mut args = vec!["periods"];
    args.extend(params);
    args.extend(["--arc", csv.to_str().unwrap(), "--traj-id", "short0"]);
    let o = qdgraph(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = value_line(&stdout(&o));
    assert!((v.norm() - std::f64::consts::TAU).abs() < 1e-6, "{v}");
    assert!(stdout(&o).contains("(1)"));

    // Default selection also finds an arc joining the zeros.
    let mut args = vec!["periods"];
    args.extend(params);
    args.extend(["--arc", csv.to_str().unwrap()]);
    assert_eq!(code(&qdgraph(&args)), 0);

    // Unknown id is a usage error.
    let mut args = vec!["periods"];
    args.extend(params);
    args.extend(["--arc", csv.to_str().unwrap(), "--traj-id", "nope"]);
    assert_eq!(code(&qdgraph(&args)), 2);
}

#[test]
fn periods_reversal_and_pole_rejection() {
    let c = Complex64::new;
    let p = QDParams::validate(c(1., -1.), c(1., 2.), c(1., 0.5)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let fwd = dir.path().join("fwd.csv");
    let back = dir.path().join("back.csv");
    let through = dir.path().join("through.csv");
    let arc = reference_arc(&p);
    write_arc(&fwd, "arc", arc.points());
    write_arc(&back, "arc", arc.reversed().points());
    write_arc(&through, "arc", qdgraph::PathPolyline::segment(p.a(), p.b(), 12).points());
    let base = ["periods", "--a", "1-i", "--b", "1+2i", "--lambda", "1+0.5i", "--arc"];
    let run = |f: &Path| {
        let mut a = base.to_vec();
        a.push(f.to_str().unwrap());
        qdgraph(&a)
    };
    let o1 = run(&fwd);
    let o2 = run(&back);
    assert_eq!(code(&o1), 0, "{}", String::from_utf8_lossy(&o1.stderr));
    assert_eq!(code(&o2), 0);
    assert!(stdout(&o1).contains("matched: signs"));
    let (v1, v2) = (value_line(&stdout(&o1)), value_line(&stdout(&o2)));
    assert!((v1 + v2).norm() < 1e-9, "{v1} {v2}");
    assert_eq!(code(&run(&through)), 1);
}

#[test]
fn jacobi_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("j");
    let pre = prefix.to_str().unwrap();
    let o = qdgraph(&["jacobi", "--A", "1+0.1i", "--B", "-1+0.1i", "--n", "1", "--out", pre]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let roots = fs::read_to_string(format!("{pre}-roots.csv")).unwrap();
    let row: Vec<f64> = roots.lines().nth(1).unwrap().split(',').skip(1).map(|x| x.parse().unwrap()).collect();
    let (alpha, beta) = (Complex64::new(1.0, 0.1), Complex64::new(-1.0, 0.1));
    let exact = (beta - alpha) / (alpha + beta + 2.0);
    assert!((Complex64::new(row[0], row[1]) - exact).norm() < 1e-12);
    assert!(fs::metadata(format!("{pre}-comparison.json")).is_ok());
    let svg = fs::read_to_string(format!("{pre}-overlay.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.attribute("class") == Some("root")).count(), 1);

    let o = qdgraph(&["jacobi", "--A", "1+0.1i", "--B", "-1+0.1i", "--n", "0", "--out", pre]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("notice"));
    assert_eq!(fs::read_to_string(format!("{pre}-roots.csv")).unwrap(), "root_id,re,im\n");

    let o = qdgraph(&["jacobi", "--A", "1+0.1i", "--B", "-1+0.1i", "--n", "16", "--out", pre]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(format!("{pre}-roots.csv")).unwrap().lines().count(), 17);
}

#[test]
fn jacobi_rejects_direct_parameters() {
    let o = qdgraph(&["jacobi", "--a", "0.3+0.2i", "--b", "-0.4+0.5i", "--lambda", "1+0.7i", "--n", "8"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_is_deterministic_and_fails_on_impossible_tolerance() {
    let a = qdgraph(&["verify", "--seed", "7"]);
    let b = qdgraph(&["verify", "--seed", "7"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let bad = qdgraph(&["verify", "--tol-root", "1e-30"]);
    assert_eq!(code(&bad), 1);
    let out = stdout(&bad);
    assert!(out.contains("identities") && out.contains("FAIL"));
    assert!(out.contains("R(zeta+)"), "{out}");
}
