//! Complex Laurent polynomials in `(z, w)`, the logarithmic Gauss map and
//! its critical points (log-inflection points).

mod eval;
mod resultant;
mod roots;
mod solve;
mod track;

pub use resultant::{sylvester_matrix, BiPoly};
pub use roots::{aberth, univariate_roots};
pub use solve::{
    critical_points, critical_points_direct, critical_points_tracked, critical_points_with, SolverOptions,
};

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{det, rational_to_f64, LatticePoint, LatticePolygon, LatticeVector};
use crate::text::{parse_terms, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Z,
    W,
}

/// A finite sum `Σ c_{jk} z^j w^k` with `j, k ∈ Z`. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexLaurentPoly {
    coeffs: BTreeMap<LatticePoint, Complex64>,
}

impl ComplexLaurentPoly {
    /// Sums duplicate monomials and drops exact zeros.
    pub fn from_terms<I: IntoIterator<Item = (LatticePoint, Complex64)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for (p, c) in terms {
            *coeffs.entry(p).or_insert(Complex64::zero()) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw = parse_terms(text, Mode::Laurent)?;
        let p = Self::from_terms(raw.into_iter().map(|t| {
            let c = t
                .coeff
                .map(|l| Complex64::new(rational_to_f64(l.re), rational_to_f64(l.im)))
                .unwrap_or(Complex64::new(1.0, 0.0));
            (t.exponent, if t.negated { -c } else { c })
        }));
        if p.is_zero() {
            return Err(Error::EmptySupport);
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, p: LatticePoint) -> Complex64 {
        self.coeffs.get(&p).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, Complex64)> + '_ {
        self.coeffs.iter().map(|(p, c)| (*p, *c))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.coeffs.keys().copied().collect()
    }

    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        LatticePolygon::hull(self.coeffs.keys().copied())
    }

    /// True iff every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, p: TorusPoint) -> Complex64 {
        self.terms().map(|(e, c)| c * monomial(p, e)).sum()
    }

    /// Sum of the moduli of the terms at `p`, the natural scale for `|f(p)|`.
    pub fn term_scale(&self, p: TorusPoint) -> f64 {
        self.terms().map(|(e, c)| (c * monomial(p, e)).norm()).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(p, c)| (p, c * s)))
    }

    pub fn mul_monomial(&self, m: LatticeVector) -> Self {
        Self::from_terms(self.terms().map(|(p, c)| (p.offset(m), c)))
    }

    /// Smallest exponent in each coordinate.
    pub fn min_exponents(&self) -> Option<LatticePoint> {
        let j = self.coeffs.keys().map(|p| p.j).min()?;
        let k = self.coeffs.keys().map(|p| p.k).min()?;
        Some(LatticePoint::new(j, k))
    }
}

fn monomial(p: TorusPoint, e: LatticePoint) -> Complex64 {
    p.z.powi(e.j as i32) * p.w.powi(e.k as i32)
}

impl fmt::Display for ComplexLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{:e}", c.re)?;
            } else {
                write!(f, "({:e}{:+e}i)", c.re, c.im)?;
            }
            for (name, e) in [("z", p.j), ("w", p.k)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    e if e < 0 => write!(f, "*{name}^({e})")?,
                    e => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// A point of `(C^×)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub z: Complex64,
    pub w: Complex64,
}

impl TorusPoint {
    pub fn new(z: Complex64, w: Complex64) -> Self {
        Self { z, w }
    }

    pub fn real(z: f64, w: f64) -> Self {
        Self::new(Complex64::new(z, 0.0), Complex64::new(w, 0.0))
    }

    pub fn conj(self) -> Self {
        Self::new(self.z.conj(), self.w.conj())
    }

    /// Coordinatewise relative distance `max(|Δz|/|z|, |Δw|/|w|)`.
    pub fn relative_distance(self, other: Self) -> f64 {
        let dz = (self.z - other.z).norm() / self.z.norm().max(other.z.norm());
        let dw = (self.w - other.w).norm() / self.w.norm().max(other.w.norm());
        dz.max(dw)
    }
}

/// `z ∂f/∂z` or `w ∂f/∂w`.
pub fn log_derivative(f: &ComplexLaurentPoly, axis: Axis) -> ComplexLaurentPoly {
    ComplexLaurentPoly::from_terms(f.terms().map(|(p, c)| {
        let e = match axis {
            Axis::Z => p.j,
            Axis::W => p.k,
        };
        (p, c * e as f64)
    }))
}

/// Threshold, relative to the sum of term moduli of `f`, below which both
/// log-derivatives count as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

/// `(z f_z : w f_w)` at `p`, normalized so that the entry of larger modulus is 1.
pub fn log_gauss(f: &ComplexLaurentPoly, p: TorusPoint) -> Result<[Complex64; 2]> {
    let a = log_derivative(f, Axis::Z).eval(p);
    let b = log_derivative(f, Axis::W).eval(p);
    let scale = f.term_scale(p);
    if a.norm().max(b.norm()) <= SINGULAR_THRESHOLD * scale {
        return Err(Error::SingularPoint);
    }
    Ok(if a.norm() >= b.norm() { [Complex64::new(1.0, 0.0), b / a] } else { [a / b, Complex64::new(1.0, 0.0)] })
}

/// `h = (D_w f)^2 D_z^2 f − 2 D_z f D_w f D_z D_w f + (D_z f)^2 D_w^2 f`.
///
/// Expanded as `Σ_{i,j,k} c_i c_j c_k det(p_k,p_i) det(p_k,p_j) z^{p_i+p_j+p_k}`;
/// coefficients that cancel to within rounding of their contributions are
/// set to zero.
pub fn inflection_poly(f: &ComplexLaurentPoly) -> ComplexLaurentPoly {
    let terms: Vec<(LatticePoint, Complex64)> = f.terms().collect();
    let mut acc: BTreeMap<LatticePoint, (Complex64, f64)> = BTreeMap::new();
    for &(pk, ck) in &terms {
        for &(pi, ci) in &terms {
            let dki = det(as_vec(pk), as_vec(pi));
            if dki == 0 {
                continue;
            }
            for &(pj, cj) in &terms {
                let dkj = det(as_vec(pk), as_vec(pj));
                if dkj == 0 {
                    continue;
                }
                let e = LatticePoint::new(pi.j + pj.j + pk.j, pi.k + pj.k + pk.k);
                let v = ci * cj * ck * (dki * dkj) as f64;
                let slot = acc.entry(e).or_insert((Complex64::zero(), 0.0));
                slot.0 += v;
                slot.1 += v.norm();
            }
        }
    }
    ComplexLaurentPoly::from_terms(
        acc.into_iter().filter_map(|(e, (v, mag))| (v.norm() > 64.0 * f64::EPSILON * mag).then_some((e, v))),
    )
}

fn as_vec(p: LatticePoint) -> LatticeVector {
    LatticeVector::new(p.j, p.k)
}

/// Both coordinates have imaginary part below `tol` times their modulus.
pub fn is_real_point(p: TorusPoint, tol: f64) -> bool {
    p.z.im.abs() < tol * p.z.norm() && p.w.im.abs() < tol * p.w.norm()
}

/// Partition of a point list under complex conjugation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjPairing {
    pub real: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// Non-real points without a conjugate partner.
    pub anomalies: Vec<usize>,
}

/// Real points are self-paired; every other point is matched with the
/// nearest unmatched point within relative distance `tol` of its conjugate.
pub fn conj_pairs(points: &[TorusPoint], tol: f64) -> ConjPairing {
    let mut out = ConjPairing::default();
    let mut used = vec![false; points.len()];
    for (i, p) in points.iter().enumerate() {
        if is_real_point(*p, tol) {
            out.real.push(i);
            used[i] = true;
        }
    }
    for i in 0..points.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = points[i].conj();
        let best = (0..points.len())
            .filter(|&j| !used[j])
            .map(|j| (j, points[j].relative_distance(target)))
            .filter(|&(_, d)| d < tol)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, _)) => {
                used[j] = true;
                out.pairs.push((i, j));
            }
            None => out.anomalies.push(i),
        }
    }
    out
}

/// One computed log-inflection point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub point: TorusPoint,
    pub multiplicity: usize,
    /// `|f|` relative to the sum of term moduli of `f` at the point.
    pub resid_f: f64,
    /// Same for the inflection polynomial.
    pub resid_h: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    /// Candidates that failed refinement or tracking, with a reason.
    pub dropped: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CriticalPointDoc {
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
    mult: usize,
    resid_f: f64,
    resid_h: f64,
}

impl CriticalSet {
    /// Number of points counted with multiplicity.
    pub fn count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn torus_points(&self) -> Vec<TorusPoint> {
        self.points.iter().map(|p| p.point).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.resid_f.max(p.resid_h)).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        let docs: Vec<CriticalPointDoc> = self
            .points
            .iter()
            .map(|p| CriticalPointDoc {
                z_re: p.point.z.re,
                z_im: p.point.z.im,
                w_re: p.point.w.re,
                w_im: p.point.w.im,
                mult: p.multiplicity,
                resid_f: p.resid_f,
                resid_h: p.resid_h,
            })
            .collect();
        Ok(serde_json::to_string_pretty(&docs)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let docs: Vec<CriticalPointDoc> = serde_json::from_str(text)?;
        Ok(Self {
            points: docs
                .into_iter()
                .map(|d| CriticalPoint {
                    point: TorusPoint::new(Complex64::new(d.z_re, d.z_im), Complex64::new(d.w_re, d.w_im)),
                    multiplicity: d.mult,
                    resid_f: d.resid_f,
                    resid_h: d.resid_h,
                })
                .collect(),
            dropped: Vec::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(s: &str) -> ComplexLaurentPoly {
        ComplexLaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = poly("1 + z + w - 2.5zw + (1-2i)z^(-1)");
        assert_eq!(f.len(), 5);
        assert_eq!(f.coefficient(LatticePoint::new(1, 1)), c(-2.5, 0.0));
        assert_eq!(f.coefficient(LatticePoint::new(-1, 0)), c(1.0, -2.0));
        assert_eq!(poly(&f.to_string()), f);
        assert!(matches!(ComplexLaurentPoly::parse("z - z"), Err(Error::EmptySupport)));
    }

    #[test]
    fn log_derivative_examples() {
        assert_eq!(log_derivative(&poly("1+z+w"), Axis::Z), poly("z"));
        let t = 7.0;
        let f = ComplexLaurentPoly::from_terms([
            (LatticePoint::new(0, 0), c(1.0, 0.0)),
            (LatticePoint::new(1, 0), c(1.0, 0.0)),
            (LatticePoint::new(0, 1), c(1.0, 0.0)),
            (LatticePoint::new(1, 1), c(t, 0.0)),
        ]);
        assert_eq!(log_derivative(&f, Axis::Z), poly("z + 7zw"));
        let g = poly("zw - 1");
        assert_eq!(log_derivative(&g, Axis::Z), poly("zw"));
        assert_eq!(log_derivative(&g, Axis::W), poly("zw"));
    }

    #[test]
    fn log_gauss_examples() {
        let g = log_gauss(&poly("1+z+w"), TorusPoint::real(1.0, -2.0)).unwrap();
        assert!((g[0] - c(-0.5, 0.0)).norm() < 1e-15 && g[1] == c(1.0, 0.0));
        let g = log_gauss(&poly("z - w"), TorusPoint::real(3.0, 3.0)).unwrap();
        assert_eq!(g, [c(1.0, 0.0), c(-1.0, 0.0)]);
        let g = log_gauss(&poly("zw - 1"), TorusPoint::new(c(0.3, 2.0), c(-1.0, 0.5))).unwrap();
        assert_eq!(g, [c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(log_gauss(&poly("z + z^(-1)"), TorusPoint::real(1.0, 1.0)), Err(Error::SingularPoint)));
    }

    #[test]
    fn log_gauss_is_scale_invariant() {
        let f = poly("1 + 2z - w + 0.5zw + 3w^2");
        let p = TorusPoint::new(c(0.7, -0.2), c(-1.1, 0.4));
        let g = log_gauss(&f, p).unwrap();
        for s in [c(-3.0, 0.0), c(1e-5, 2e-5), c(1e8, 0.0)] {
            let h = log_gauss(&f.scale(s), p).unwrap();
            assert!((g[0] - h[0]).norm() < 1e-14 && (g[1] - h[1]).norm() < 1e-14);
        }
    }

    #[test]
    fn inflection_poly_examples() {
        assert_eq!(inflection_poly(&poly("1+z+w")), poly("z^2w + zw^2"));
        assert!(inflection_poly(&poly("zw - 1")).is_zero());
    }

    /// Polynomial identity testing of the factored form at random points.
    #[test]
    fn inflection_poly_of_square_factors() {
        let t = 5.0;
        let f = ComplexLaurentPoly::from_terms([
            (LatticePoint::new(0, 0), c(1.0, 0.0)),
            (LatticePoint::new(1, 0), c(1.0, 0.0)),
            (LatticePoint::new(0, 1), c(1.0, 0.0)),
            (LatticePoint::new(1, 1), c(t, 0.0)),
        ]);
        let h = inflection_poly(&f);
        for (z, w) in [(c(0.3, 1.1), c(-0.7, 0.2)), (c(2.0, -1.0), c(0.5, 0.5)), (c(-1.3, 0.0), c(0.9, -2.0))] {
            let expect = z * w * (1.0 + t * z) * (1.0 + t * w) * (z + w);
            assert!((h.eval(TorusPoint::new(z, w)) - expect).norm() < 1e-12 * expect.norm());
        }
    }

    /// The closed formula agrees with the definition through log-derivatives.
    #[test]
    fn inflection_poly_matches_log_derivative_form() {
        let f = poly("1 - 2z + (0.5+i)w + 3zw - z^2 + 0.25w^2 - 1.5z^2w");
        let (dz, dw) = (log_derivative(&f, Axis::Z), log_derivative(&f, Axis::W));
        let (dzz, dzw, dww) =
            (log_derivative(&dz, Axis::Z), log_derivative(&dz, Axis::W), log_derivative(&dw, Axis::W));
        let h = inflection_poly(&f);
        for p in [TorusPoint::new(c(0.4, 0.9), c(1.2, -0.3)), TorusPoint::new(c(-2.0, 0.1), c(0.2, 0.2))] {
            let (a, b) = (dz.eval(p), dw.eval(p));
            let expect = b * b * dzz.eval(p) - 2.0 * a * b * dzw.eval(p) + a * a * dww.eval(p);
            assert!((h.eval(p) - expect).norm() < 1e-12 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn real_points_and_pairs() {
        assert!(is_real_point(TorusPoint::real(0.5, -0.25), 1e-6));
        let a = TorusPoint::new(c(1.0, 0.5), c(-2.0, 0.75));
        let tiny = TorusPoint::new(c(0.0, 1e-9), c(0.0, -1e-9));
        let pts = [a, TorusPoint::real(0.5, -0.25), a.conj(), tiny, tiny.conj()];
        let pairing = conj_pairs(&pts, 1e-6);
        assert_eq!(pairing.real, vec![1]);
        assert_eq!(pairing.pairs, vec![(0, 2), (3, 4)]);
        assert!(pairing.anomalies.is_empty());
        let lonely = conj_pairs(&[a], 1e-6);
        assert_eq!(lonely.anomalies, vec![0]);
    }

    #[test]
    fn critical_set_json_round_trip() {
        let s = CriticalSet {
            points: vec![CriticalPoint {
                point: TorusPoint::new(c(1.5, -0.25), c(3.0, 0.0)),
                multiplicity: 1,
                resid_f: 1e-15,
                resid_h: 2e-14,
            }],
            dropped: vec![],
        };
        assert_eq!(CriticalSet::from_json(&s.to_json().unwrap()).unwrap(), s);
    }
}
