use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use qdgraph::cli::parse_complex;
use qdgraph::periods::{arc_period, reference_arc};
use qdgraph::qdiff::property_p;
use qdgraph::tracer::launch_directions;
use qdgraph::{jacobi, PathPolyline, QDParams};

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(x, y)| Complex64::new(x, y))
}

fn separated(a: Complex64, b: Complex64, d: f64) -> bool {
    let one = Complex64::new(1.0, 0.0);
    (a - b).norm() > d && [a, b].iter().all(|z| (z - one).norm() > d && (z + one).norm() > d)
}

fn params() -> impl Strategy<Value = QDParams> {
    (complex(2.0), complex(2.0), 0.5..2.0f64, 0.0..TAU)
        .prop_filter("zeros apart from each other and the poles", |(a, b, _, _)| separated(*a, *b, 0.3))
        .prop_map(|(a, b, r, t)| QDParams::validate(a, b, Complex64::from_polar(r, t)).unwrap())
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #[test]
    fn complex_literals_round_trip(re in -1e6..1e6f64, im in -1e6..1e6f64) {
        let z = Complex64::new(re, im);
        prop_assert_eq!(parse_complex(&format!("{re:?}{im:+?}i")).unwrap(), z);
        prop_assert_eq!(parse_complex(&format!("{re:e}{im:+e}i")).unwrap(), z);
    }

    #[test]
    fn property_p_is_symmetric(p in params()) {
        let base = property_p(&p);
        let abs_im = |r: &qdgraph::qdiff::PropertyPReport| sorted(r.values.iter().map(|c| c.im.abs()).collect());
        let scale = 1e-12 * (1.0 + p.lambda().norm()) * 10.0;
        let variants = [p.swapped(), p.conj(), p.with_lambda(-p.lambda()).unwrap()];
        for q in &variants {
            let r = property_p(q);
            prop_assert_eq!(r.satisfied, base.satisfied);
            for (x, y) in abs_im(&r).iter().zip(abs_im(&base)) {
                prop_assert!((x - y).abs() <= scale, "{} vs {}", x, y);
            }
        }
    }

    #[test]
    fn launch_directions_are_horizontal(p in params(), k in 0usize..3) {
        for zero in p.zeros() {
            let spec = launch_directions(&p, zero).unwrap();
            let d = spec.directions;
            for j in 0..3 {
                let gap = (d[(j + 1) % 3] - d[j]).rem_euclid(TAU);
                prop_assert!((gap - TAU / 3.0).abs() < 1e-12 || (gap - 2.0 * TAU / 3.0).abs() < 1e-12);
            }
            let t = 1e-5 * p.scale();
            let dir = Complex64::from_polar(1.0, d[k]);
            let w = p.q(zero + dir * t) * dir * dir;
            prop_assert!(w.re > 0.0);
            prop_assert!(w.im.abs() <= 1e-3 * w.norm(), "{}", w);
        }
    }

    #[test]
    fn polyline_reversal_negates_winding(
        pts in proptest::collection::vec(complex(3.0), 3..12),
        z in complex(3.0),
    ) {
        let poly = PathPolyline::new(pts);
        prop_assume!(poly.distance_to(z) > 1e-3 && poly.closed().distance_to(z) > 1e-3);
        prop_assert_eq!(poly.reversed().winding_number(z), -poly.winding_number(z));
        prop_assert!((poly.reversed().arclength() - poly.arclength()).abs() < 1e-9);
    }

    #[test]
    fn circles_wind_once(c in complex(3.0), r in 0.1..5.0f64, z in complex(3.0)) {
        prop_assume!(((z - c).norm() - r).abs() > 1e-2 * r);
        let circle = PathPolyline::circle(c, r, 64);
        let inside = (z - c).norm() < r;
        prop_assert_eq!(circle.winding_number(z), i32::from(inside));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn arc_periods_change_sign_under_reversal(p in params()) {
        let arc = reference_arc(&p);
        let fwd = arc_period(&p, &arc, true).unwrap();
        let back = arc_period(&p, &arc.reversed(), true).unwrap();
        let tol = 1e-8 * (1.0 + fwd.value.norm());
        prop_assert!((fwd.value + back.value).norm() <= tol, "{} {}", fwd.value, back.value);
        prop_assert_eq!(fwd.orientation, -back.orientation);
    }

    #[test]
    fn jacobi_roots_respect_reflections(n in 1usize..10, alpha in complex(3.0), beta in complex(3.0)) {
        let spec = jacobi::build(n, alpha, beta).unwrap();
        prop_assume!(spec.degree == n);
        let rs = jacobi::roots(&spec).unwrap();
        let close = |u: &[Complex64], v: &[Complex64]| {
            u.iter().all(|x| v.iter().any(|y| (x - y).norm() <= 1e-7 * (1.0 + x.norm())))
        };
        // P(α,β)(−z) = (−1)ⁿ P(β,α)(z).
        let swapped = jacobi::roots(&jacobi::build(n, beta, alpha).unwrap()).unwrap();
        let negated: Vec<Complex64> = swapped.roots.iter().map(|z| -z).collect();
        prop_assert!(close(&rs.roots, &negated), "{:?} vs {:?}", rs.roots, negated);
        let conj = jacobi::roots(&jacobi::build(n, alpha.conj(), beta.conj()).unwrap()).unwrap();
        let conjugated: Vec<Complex64> = conj.roots.iter().map(|z| z.conj()).collect();
        prop_assert!(close(&rs.roots, &conjugated));
    }
}
