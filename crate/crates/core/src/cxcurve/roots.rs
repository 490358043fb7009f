//! Simultaneous root finding for univariate complex polynomials.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;
const RESIDUAL_BOUND: f64 = 1e-12;
/// Roots closer than this (relative) are merged by [`univariate_roots`].
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Coefficients in ascending order, normalized
/// to unit max modulus, with no zero leading or trailing coefficient.
struct Normalized {
    c: Vec<Complex64>,
    rev: Vec<Complex64>,
}

impl Normalized {
    fn degree(&self) -> usize {
        self.c.len() - 1
    }

    /// `p(z) / p'(z)`, evaluated through the reversed polynomial when |z| > 1.
    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        if z.norm() <= 1.0 {
            let (p, dp) = horner(&self.c, z);
            p / dp
        } else {
            let y = z.inv();
            let (q, dq) = horner(&self.rev, y);
            z * q / (self.degree() as f64 * q - y * dq)
        }
    }

    /// `|p(z)| / Σ |c_i| |z|^i`.
    fn relative_residual(&self, z: Complex64) -> f64 {
        let (coeffs, x) = if z.norm() <= 1.0 { (&self.c, z) } else { (&self.rev, z.inv()) };
        let (p, _) = horner(coeffs, x);
        let r = x.norm();
        let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
        if scale == 0.0 {
            0.0
        } else {
            p.norm() / scale
        }
    }
}

/// Value and derivative at `x` of `Σ c_i x^i`.
fn horner(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &ci in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + ci;
    }
    (p, dp)
}

/// Initial guesses on circles whose radii come from the upper convex hull
/// of `(i, ln|c_i|)`.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> =
        c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.norm().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) as f64 * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(c.len() - 1);
    for (s, w) in hull.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let n = b.0 - a.0;
        let radius = (-(b.1 - a.1) / n as f64).exp();
        for k in 0..n {
            let angle = TAU * k as f64 / n as f64 + 0.7 + 0.37 * s as f64;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

/// All roots of `Σ coeffs[i] z^i`, repeated according to multiplicity.
///
/// Trailing zero coefficients of high degree are ignored; zero low-degree
/// coefficients contribute roots at the origin.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let hi = coeffs.iter().rposition(|c| !c.is_zero()).ok_or(Error::ConstantPolynomial)?;
    let lo = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero coefficient exists");
    if hi == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut roots = vec![Complex64::zero(); lo];
    if hi == lo {
        return Ok(roots);
    }
    let max = coeffs[lo..=hi].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let c: Vec<Complex64> = coeffs[lo..=hi].iter().map(|v| v / max).collect();
    let rev: Vec<Complex64> = c.iter().rev().copied().collect();
    let p = Normalized { c, rev };
    let n = p.degree();

    let mut z = initial_guesses(&p.c);
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        if done.iter().all(|&d| d) {
            break;
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = p.newton_ratio(z[i]);
            if !ratio.is_finite() {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 =
                (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).filter(|v| v.is_finite()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            let step = if step.is_finite() { step } else { ratio };
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
    }
    // a few plain Newton steps tighten simple roots
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let r = p.newton_ratio(*zi);
            if r.is_finite() && r.norm() < 1e-6 * zi.norm() {
                *zi -= r;
            }
        }
    }
    let worst = z.iter().map(|&zi| p.relative_residual(zi)).fold(0.0, f64::max);
    if !(worst < RESIDUAL_BOUND) {
        return Err(Error::RootsNotConverged { iterations: MAX_ITERATIONS, residual: worst });
    }
    roots.extend(z);
    Ok(roots)
}

/// Distinct roots with multiplicities, merging roots within
/// [`CLUSTER_RADIUS`] relative distance.
pub fn univariate_roots(coeffs: &[Complex64]) -> Result<Vec<(Complex64, usize)>> {
    let roots = aberth(coeffs)?;
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for r in roots {
        let near = clusters.iter_mut().find(|(c, _)| {
            let scale = c.norm().max(r.norm());
            (c - r).norm() <= CLUSTER_RADIUS * scale || scale == 0.0
        });
        match near {
            Some((c, members)) => {
                members.push(r);
                *c = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => clusters.push((r, vec![r])),
        }
    }
    Ok(clusters.into_iter().map(|(c, m)| (c, m.len())).collect())
}
