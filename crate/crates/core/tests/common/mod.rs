//! Oracles shared by the integration tests. None of them call the code
//! they are used to check.
#![allow(dead_code)]

use logflex::cxcurve::{ComplexLaurentPoly, TorusPoint};
use logflex::LatticePoint;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

type C = Complex64;

/// Significant bits kept by [`Mp`].
const BITS: i64 = 256;

/// A complex number with rational parts rounded to `BITS` significant bits
/// after every operation.
#[derive(Clone, Debug)]
struct Mp {
    re: BigRational,
    im: BigRational,
}

fn round(q: BigRational) -> BigRational {
    if q.is_zero() {
        return q;
    }
    let e = q.numer().bits() as i64 - q.denom().bits() as i64;
    let k = BITS - e;
    let pow = |n: i64| BigRational::from_integer(BigInt::one() << n as usize);
    if k >= 0 {
        (q * pow(k)).round() / pow(k)
    } else {
        (q / pow(-k)).round() * pow(-k)
    }
}

impl Mp {
    fn new(re: BigRational, im: BigRational) -> Self {
        Self { re: round(re), im: round(im) }
    }

    fn from_c(c: C) -> Self {
        let q = |x: f64| BigRational::from_float(x).expect("finite");
        Self { re: q(c.re), im: q(c.im) }
    }

    fn real(x: f64) -> Self {
        Self::from_c(C::new(x, 0.0))
    }

    fn zero() -> Self {
        Self::real(0.0)
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn div(&self, o: &Self) -> Self {
        let d = &o.re * &o.re + &o.im * &o.im;
        Self::new((&self.re * &o.re + &self.im * &o.im) / &d, (&self.im * &o.re - &self.re * &o.im) / &d)
    }

    fn norm(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().expect("representable");
        f(&self.re).hypot(f(&self.im))
    }

    fn powi(&self, n: i64) -> Self {
        let base = if n < 0 { Self::real(1.0).div(self) } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::real(1.0), |acc, _| acc.mul(&base))
    }
}

/// `f` with its logarithmic partials `z ∂f/∂z` and `w ∂f/∂w`, evaluated in
/// multiprecision.
struct MpCurve {
    terms: Vec<(i64, i64, Mp)>,
}

impl MpCurve {
    fn new(f: &ComplexLaurentPoly) -> Self {
        Self { terms: f.terms().map(|(p, c)| (p.j, p.k, Mp::from_c(c))).collect() }
    }

    fn eval(&self, z: &Mp, w: &Mp) -> (Mp, Mp, Mp) {
        let mut zp = std::collections::BTreeMap::new();
        let mut wp = std::collections::BTreeMap::new();
        let mut out = (Mp::zero(), Mp::zero(), Mp::zero());
        for (j, k, c) in &self.terms {
            let zj = zp.entry(*j).or_insert_with(|| z.powi(*j));
            let wk = wp.entry(*k).or_insert_with(|| w.powi(*k));
            let m = c.mul(zj).mul(wk);
            out.1 = out.1.add(&m.mul(&Mp::real(*j as f64)));
            out.2 = out.2.add(&m.mul(&Mp::real(*k as f64)));
            out.0 = out.0.add(&m);
        }
        out
    }

    /// Newton in `w` with `z` fixed (`in_w`), or in `z` with `w` fixed.
    fn solve(&self, mut z: Mp, mut w: Mp, in_w: bool) -> (Mp, Mp) {
        for _ in 0..12 {
            let (f, fz, fw) = self.eval(&z, &w);
            let (step, scale) = if in_w { (f.mul(&w).div(&fw), w.norm()) } else { (f.mul(&z).div(&fz), z.norm()) };
            if in_w {
                w = w.sub(&step);
            } else {
                z = z.sub(&step);
            }
            if step.norm() < 1e-70 * scale {
                break;
            }
        }
        (z, w)
    }
}

/// Finite-difference test of criticality of the logarithmic Gauss map at a
/// point of `f = 0`. The curve is parametrized by `z = z₀(1+s)` or
/// `w = w₀(1+s)`, whichever coordinate has the smaller logarithmic
/// partial, and the affine chart of `(z f_z : w f_w)` is sampled at
/// `s = 0, ±δ, ±2δ` with `δ = 1e-5`. Returns `|r'| / |r''|` from the
/// five-point first derivative and the three-point second difference.
/// Evaluation is in 256-bit arithmetic so that cancellation among large
/// terms does not swamp the differences.
pub fn gauss_quotient(f: &ComplexLaurentPoly, p: TorusPoint) -> f64 {
    let curve = MpCurve::new(f);
    let (z0, w0) = (Mp::from_c(p.z), Mp::from_c(p.w));
    let (_, fz, fw) = curve.eval(&z0, &w0);
    let by_z = fw.norm() >= fz.norm();
    let delta = 1e-5;
    let chart = |s: f64| {
        let step = Mp::real(1.0).add(&Mp::real(s));
        let (z, w) = if by_z {
            curve.solve(z0.mul(&step), w0.clone(), true)
        } else {
            curve.solve(z0.clone(), w0.mul(&step), false)
        };
        let (_, fz, fw) = curve.eval(&z, &w);
        if by_z {
            fz.div(&fw)
        } else {
            fw.div(&fz)
        }
    };
    let r: Vec<Mp> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|k| chart(k * delta)).collect();
    let eight = Mp::real(8.0);
    let d1 = r[0].sub(&r[1].mul(&eight)).add(&r[3].mul(&eight)).sub(&r[4]).div(&Mp::real(12.0 * delta));
    let d2 = r[1].sub(&r[2].mul(&Mp::real(2.0))).add(&r[3]).div(&Mp::real(delta * delta));
    d1.norm() / d2.norm()
}

/// Critical points of the square family `1 + z + w + σ t zw`, solved by
/// hand: `z² = σ/t` and `w = −(1+z)/(1+σtz)`.
pub fn square_critical_points(t: f64, sigma: f64) -> Vec<TorusPoint> {
    let r = t.powf(-0.5);
    let zs = if sigma > 0.0 { [C::new(r, 0.0), C::new(-r, 0.0)] } else { [C::new(0.0, r), C::new(0.0, -r)] };
    zs.iter().map(|&z| TorusPoint::new(z, -(z + 1.0) / (z * sigma * t + 1.0))).collect()
}

/// Twice the area of a lattice polygon given by its vertices in order.
pub fn shoelace2(vertices: &[(i64, i64)]) -> i64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<i64>()
        .abs()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Boundary lattice points of a convex polygon with ordered vertices.
pub fn boundary_points(vertices: &[(i64, i64)]) -> i64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            gcd(b.0 - a.0, b.1 - a.1)
        })
        .sum()
}

/// Lattice points strictly inside a counterclockwise convex polygon, by
/// scanning its bounding box.
pub fn interior_points(vertices: &[(i64, i64)]) -> i64 {
    let n = vertices.len();
    let (x0, x1) = (vertices.iter().map(|v| v.0).min().unwrap(), vertices.iter().map(|v| v.0).max().unwrap());
    let (y0, y1) = (vertices.iter().map(|v| v.1).min().unwrap(), vertices.iter().map(|v| v.1).max().unwrap());
    let mut count = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let inside = (0..n).all(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0) > 0
            });
            count += inside as i64;
        }
    }
    count
}

/// Vertices of `dΔ`, counterclockwise.
pub fn simplex_vertices(d: i64) -> Vec<(i64, i64)> {
    vec![(0, 0), (d, 0), (0, d)]
}

/// The generic number of log-inflection points, `6·area − boundary`.
pub fn generic_count(vertices: &[(i64, i64)]) -> i64 {
    3 * shoelace2(vertices) - boundary_points(vertices)
}

pub fn lp(j: i64, k: i64) -> LatticePoint {
    LatticePoint::new(j, k)
}
