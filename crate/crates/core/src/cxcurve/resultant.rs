//! Sylvester resultants of bivariate polynomials, eliminating `w`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rustfft::FftPlanner;

use super::{aberth, ComplexLaurentPoly};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

type C = Complex64;

/// A polynomial with nonnegative exponents stored as `coeffs[k][j]` for `z^j w^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    pub coeffs: Vec<Vec<C>>,
}

impl BiPoly {
    /// Multiplies by the monomial that makes all exponents nonnegative with
    /// minimal degrees, which also strips any monomial factor.
    pub fn from_laurent(f: &ComplexLaurentPoly) -> Self {
        let min = f.min_exponents().expect("nonzero polynomial");
        let g = f.mul_monomial(LatticeVector::new(-min.j, -min.k));
        let dz = g.terms().map(|(p, _)| p.j).max().unwrap_or(0) as usize;
        let dw = g.terms().map(|(p, _)| p.k).max().unwrap_or(0) as usize;
        let mut coeffs = vec![vec![C::zero(); dz + 1]; dw + 1];
        for (p, c) in g.terms() {
            coeffs[p.k as usize][p.j as usize] = c;
        }
        Self { coeffs }
    }

    pub fn degree_w(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree_z(&self) -> usize {
        self.coeffs.iter().map(|row| row.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, _)| j + k))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients in `w` (ascending) at a fixed `z`.
    pub fn at_z(&self, z: C) -> Vec<C> {
        self.coeffs.iter().map(|row| row.iter().rev().fold(C::zero(), |acc, &c| acc * z + c)).collect()
    }
}

/// Sylvester matrix of `a` and `b` given by ascending coefficients, with
/// their formal degrees `len − 1`.
pub fn sylvester_matrix(a: &[C], b: &[C]) -> DMatrix<C> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut s = DMatrix::from_element(size, size, C::zero());
    for r in 0..n {
        for (i, &c) in a.iter().rev().enumerate() {
            s[(r, r + i)] = c;
        }
    }
    for r in 0..m {
        for (i, &c) in b.iter().rev().enumerate() {
            s[(n + r, r + i)] = c;
        }
    }
    s
}

/// Relative size of `b` at a zero of `a(z, ·)` under which the two are taken
/// to vanish together there.
const COMMON_ZERO: f64 = 1e-8;

/// Whether `a(z, ·)` has a root where `b` vanishes relative to its terms.
fn shares_zero_at(a: &BiPoly, b: &BiPoly, z: C) -> bool {
    let Ok(ws) = aberth(&a.at_z(z)) else { return false };
    ws.into_iter().any(|w| {
        let (mut value, mut scale) = (C::zero(), 0.0);
        for (k, row) in b.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let term = c * z.powu(j as u32) * w.powu(k as u32);
                value += term;
                scale += term.norm();
            }
        }
        scale > 0.0 && value.norm() <= COMMON_ZERO * scale
    })
}

fn determinant(m: DMatrix<C>) -> C {
    if m.nrows() == 0 {
        return C::new(1.0, 0.0);
    }
    m.lu().determinant()
}

/// Spacing of the sampling radii, as a factor in `ln ρ`.
const LN_RADIUS_STEP: f64 = std::f64::consts::LN_2 * 2.0;

/// Largest `|k · ln ρ|` used when unscaling coefficients.
const MAX_LOG_SCALE: f64 = 300.0;

/// Relative size at which a coefficient counts as resolved.
const RESOLVED: f64 = 1e-4;

/// Relative size under which a coefficient is indistinguishable from
/// rounding noise at every sampled radius.
const NOISE: f64 = 1e-11;

/// Coefficients of `u ↦ Res_w(a, b)(ρu)` from samples at `ρ·ω^s`, with the
/// the radius `ρ`.
fn scaled_coefficients(a: &BiPoly, b: &BiPoly, rho: f64, samples: usize) -> Vec<C> {
    let mut values: Vec<C> = (0..samples)
        .map(|s| {
            let z = C::from_polar(rho, TAU * s as f64 / samples as f64);
            determinant(sylvester_matrix(&a.at_z(z), &b.at_z(z)))
        })
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(samples).process(&mut values);
    // samples at ω^s with ω = e^{2πi/N}: the forward DFT yields N·c_k
    values.into_iter().map(|v| v / samples as f64).collect()
}

/// Coefficients (ascending in `z`) of `Res_w(a, b)`.
///
/// The Sylvester determinant is sampled on circles `|z| = ρ` for a ladder
/// of radii and interpolated with a DFT on each. A coefficient is only
/// accurate relative to the largest one on its circle, so each `c_k` is
/// taken from the radius where `|c_k| ρ^k` is relatively largest. Roots of
/// widely different moduli are then all resolved.
pub fn resultant_in_w(a: &BiPoly, b: &BiPoly) -> Result<Vec<C>> {
    // a common component meets every vertical line; three generic ones
    // suffice to tell it from isolated common zeros
    let probes = [C::from_polar(0.73, 1.1), C::from_polar(1.37, 2.9), C::from_polar(1.09, 4.6)];
    if probes.iter().all(|&z| shares_zero_at(a, b, z)) {
        return Err(Error::ResultantVanishes);
    }
    let (m, n) = (a.degree_w(), b.degree_w());
    let bound = (n * a.degree_z() + m * b.degree_z()).min(a.total_degree() * b.total_degree());
    let samples = bound + 1;
    let steps = (MAX_LOG_SCALE / (bound.max(1) as f64 * LN_RADIUS_STEP)).floor() as i32;
    let mut best: Vec<(C, f64)> = vec![(C::zero(), 0.0); samples];
    let ladder = std::iter::once(0).chain((1..=steps).flat_map(|i| [i, -i]));
    for i in ladder {
        let ln_rho = i as f64 * LN_RADIUS_STEP;
        let q = scaled_coefficients(a, b, ln_rho.exp(), samples);
        let qmax = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !(qmax > 0.0) || !qmax.is_finite() {
            continue;
        }
        for (k, qk) in q.iter().enumerate() {
            let rel = qk.norm() / qmax;
            if rel > best[k].1 {
                best[k] = (qk * (-(k as f64) * ln_rho).exp(), rel);
            }
        }
        if best[0].1 > RESOLVED && best[bound].1 > RESOLVED {
            break;
        }
    }
    Ok(best.into_iter().map(|(c, rel)| if rel > NOISE { c } else { C::zero() }).collect())
}
