//! Cross-module invariants checked on random inputs.

use logflex::curve::{check_balancing, cycle_basis, midpoint_is_centered, Ray};
use logflex::families;
use logflex::lattice::{orient, simplex, LatticePoint, Rational, RationalPoint};
use logflex::verify::VerifyOptions;
use logflex::{
    dual_curve, parabolic_locus, regular_subdivision, verify_theorem, PatchworkFamily, TropicalCurve,
    TropicalPolynomial,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn cross(o: RationalPoint, a: RationalPoint, b: RationalPoint) -> Rational {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn dot(o: RationalPoint, a: RationalPoint, b: RationalPoint) -> Rational {
    (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)
}

fn on_segment(p: RationalPoint, a: RationalPoint, b: RationalPoint) -> bool {
    cross(a, b, p).is_zero() && !dot(p, a, b).is_positive()
}

fn on_ray(p: RationalPoint, c: &TropicalCurve, r: &Ray) -> bool {
    let v = c.vertices[r.vertex];
    let tip = RationalPoint::new(
        v.x + Rational::from_integer(r.direction.dj as i128),
        v.y + Rational::from_integer(r.direction.dk as i128),
    );
    cross(v, tip, p).is_zero() && !dot(v, tip, p).is_negative()
}

fn on_curve(p: RationalPoint, c: &TropicalCurve) -> bool {
    c.edges.iter().any(|e| on_segment(p, c.vertices[e.endpoints[0]], c.vertices[e.endpoints[1]]))
        || c.rays.iter().any(|r| on_ray(p, c, r))
}

fn polynomial_on_simplex(d: i64, coeffs: &[i64]) -> TropicalPolynomial {
    let pts = simplex(d).lattice_points();
    TropicalPolynomial::from_terms(pts.into_iter().zip(coeffs.iter().map(|&a| Rational::from_integer(a as i128))))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The corner locus of the tropical polynomial, sampled on a grid and at
    /// the curve's own vertices, midpoints and ray points, coincides with
    /// the constructed curve.
    #[test]
    fn corner_locus_matches_curve(d in 1i64..=3, coeffs in prop::collection::vec(-6i64..=6, 10)) {
        let f = polynomial_on_simplex(d, &coeffs);
        let c = dual_curve(&f).unwrap();
        let mut samples: Vec<RationalPoint> = Vec::new();
        for i in -16..=16 {
            for j in -16..=16 {
                samples.push(RationalPoint::new(q(i, 2), q(j, 2)));
            }
        }
        samples.extend(c.vertices.iter().copied());
        for e in &c.edges {
            let (a, b) = (c.vertices[e.endpoints[0]], c.vertices[e.endpoints[1]]);
            samples.push(a.midpoint(b));
            samples.push(RationalPoint::new((a.x * 2 + b.x) / 3, (a.y * 2 + b.y) / 3));
        }
        for r in &c.rays {
            let v = c.vertices[r.vertex];
            samples.push(RationalPoint::new(v.x + q(r.direction.dj as i128, 3), v.y + q(r.direction.dk as i128, 3)));
        }
        for p in samples {
            let ev = f.eval_exact(p);
            prop_assert_eq!(ev.argmax.len() >= 2, on_curve(p, &c), "at {:?}", p);
            let spans_plane = ev.argmax.len() >= 3 && ev.argmax.iter().any(|&c| orient(ev.argmax[0], ev.argmax[1], c) != 0);
            if spans_plane {
                prop_assert!(c.vertices.contains(&p), "two-dimensional tie off the vertex set at {:?}", p);
            }
        }
    }

    #[test]
    fn subdivision_tiles_the_newton_polygon(d in 1i64..=4, coeffs in prop::collection::vec(-8i64..=8, 15)) {
        let f = polynomial_on_simplex(d, &coeffs);
        let sub = regular_subdivision(&f).unwrap();
        prop_assert_eq!(sub.total_area(), f.newton_polygon().area());
        if sub.is_smooth() {
            prop_assert!(sub.unused_points().is_empty());
        }
    }

    /// Counting and balancing identities on smooth curves from random
    /// strictly convex liftings.
    #[test]
    fn smooth_curve_identities(d in 1i64..=4, seed in any::<u64>()) {
        let delta = simplex(d);
        let Ok(fam) = families::random(&delta, seed) else { return Ok(()) };
        let c = dual_curve(&fam.tropicalization()).unwrap();
        prop_assert!(check_balancing(&c).is_empty());
        prop_assume!(c.is_smooth());
        let two_area = delta.doubled_area();
        prop_assert_eq!(2 * c.edges.len() as i64, 3 * two_area - delta.boundary_count());
        prop_assert_eq!(cycle_basis(&c).len() as i64, delta.interior_count());
        prop_assert_eq!(c.betti_number() as i64, delta.interior_count());
        let locus = parabolic_locus(&c).unwrap();
        prop_assert_eq!(locus.len(), c.edges.len());
        for p in &locus.points {
            prop_assert!(midpoint_is_centered(&c, p));
        }
    }

    #[test]
    fn family_json_round_trip(d in 1i64..=3, seed in any::<u64>()) {
        let Ok(fam) = families::random(&simplex(d), seed) else { return Ok(()) };
        let back = PatchworkFamily::from_json(&fam.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &fam);
        let c = dual_curve(&fam.tropicalization()).unwrap();
        prop_assert_eq!(TropicalCurve::from_json(&c.to_json().unwrap()).unwrap(), c);
    }
}

/// Along `t = e^{5·2^k}` the Hausdorff distance never increases, and at the
/// largest `t` every midpoint carries exactly two mapped points.
#[test]
fn hausdorff_is_monotone_on_doubling_grid() {
    let grid: Vec<f64> = (0..4).map(|k| (5.0 * 2f64.powi(k)).exp()).collect();
    for name in ["square", "square-flipped", "conic", "sheared-conic", "cubic"] {
        let fam = families::by_name(name).unwrap();
        let report = verify_theorem(&fam, &grid, &VerifyOptions::default()).unwrap();
        assert!(report.monotone, "{name}: {:?}", report.rows.iter().map(|r| r.hausdorff).collect::<Vec<_>>());
        let last = report.rows.last().unwrap();
        assert_eq!(last.critical_count, last.expected_count, "{name}");
        assert!(last.midpoints.iter().all(|m| m.count == 2), "{name}");
        assert!(last.conj_closed, "{name}");
    }
}

#[test]
fn unused_point_is_rejected_as_not_strictly_convex() {
    let pts = simplex(2).lattice_points();
    let lifting: Vec<Rational> =
        pts.iter().map(|p| Rational::from_integer(i128::from(*p == LatticePoint::new(1, 0)) * -9)).collect();
    let err = PatchworkFamily::new(&pts, &lifting, &vec![1; pts.len()], None).unwrap_err();
    assert!(err.to_string().contains("strictly convex"), "{err}");
}
