//! Bundled patchworking families used by tests, benchmarks and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lattice::{simplex, LatticePoint, LatticePolygon, Rational};
use crate::patchwork::PatchworkFamily;

fn r(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

fn quadratic_lifting(a: i64, b: i64, c: i64) -> impl Fn(LatticePoint) -> Rational {
    move |p| r(-(a * p.j * p.j + b * p.j * p.k + c * p.k * p.k))
}

/// `1 + z + w`: the tropical line, no bounded edges.
pub fn line() -> PatchworkFamily {
    PatchworkFamily::on_polygon(&simplex(1), |_| r(0), |_| 1).expect("valid family")
}

/// `1 + z + w + σ t zw` on the unit square.
pub fn square(top_sign: i8) -> PatchworkFamily {
    let unit = LatticePolygon::hull([(0, 0), (1, 0), (0, 1), (1, 1)].map(|(j, k)| LatticePoint::new(j, k))).unwrap();
    let top = LatticePoint::new(1, 1);
    PatchworkFamily::on_polygon(&unit, |p| r(i64::from(p == top)), |p| if p == top { top_sign } else { 1 })
        .expect("valid family")
}

/// Lifting `−(j² + jk + k²)` on `dΔ`: a smooth honeycomb curve of degree `d`,
/// all signs positive.
pub fn honeycomb(d: i64) -> PatchworkFamily {
    PatchworkFamily::on_polygon(&simplex(d), quadratic_lifting(1, 1, 1), |_| 1).expect("valid family")
}

/// Lifting `−(j² − jk + k²)` on `dΔ`. Its triangulation uses the other
/// diagonals, so bounded edges with same-parity opposite vertices occur.
pub fn sheared(d: i64) -> PatchworkFamily {
    PatchworkFamily::on_polygon(&simplex(d), quadratic_lifting(1, -1, 1), |_| 1).expect("valid family")
}

/// Lifting `−(j² + k²)` on `dΔ`. Strictly convex, but the induced
/// subdivision contains unit squares, so the tropical curve is not smooth.
pub fn separable(d: i64) -> PatchworkFamily {
    PatchworkFamily::on_polygon(&simplex(d), quadratic_lifting(1, 0, 1), |_| 1).expect("valid family")
}

/// A random family on `delta`: a strictly convex quadratic lifting plus a
/// small rational perturbation, and random signs. The result may fail
/// validation or be non-smooth; callers filter.
pub fn random(delta: &LatticePolygon, seed: u64) -> Result<PatchworkFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rng.random_range(1..=2);
    let b = rng.random_range(-1..=1);
    let c = rng.random_range(1..=2);
    let base = quadratic_lifting(a, b, c);
    let pts = delta.lattice_points();
    let lifting: Vec<Rational> = pts.iter().map(|&p| base(p) + Rational::new(rng.random_range(-3..=3), 16)).collect();
    let signs: Vec<i8> = pts.iter().map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    PatchworkFamily::new(&pts, &lifting, &signs, None)
}

/// Named bundled families, for the CLI and documentation.
pub fn by_name(name: &str) -> Option<PatchworkFamily> {
    Some(match name {
        "line" => line(),
        "square" => square(1),
        "square-flipped" => square(-1),
        "conic" => honeycomb(2),
        "cubic" => honeycomb(3),
        "quartic" => honeycomb(4),
        "sheared-conic" => sheared(2),
        "separable-conic" => separable(2),
        _ => return None,
    })
}

pub const NAMES: &[&str] =
    &["line", "square", "square-flipped", "conic", "cubic", "quartic", "sheared-conic", "separable-conic"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::dual_curve;

    #[test]
    fn bundled_families_validate() {
        for name in NAMES {
            let fam = by_name(name).unwrap();
            let c = dual_curve(&fam.tropicalization()).unwrap();
            assert_eq!(c.is_smooth(), *name != "separable-conic", "{name}");
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn random_families_are_reproducible() {
        let d = simplex(3);
        assert_eq!(random(&d, 7).unwrap(), random(&d, 7).unwrap());
    }
}
