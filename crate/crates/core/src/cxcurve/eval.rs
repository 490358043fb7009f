//! Evaluation of the system `(f, h)` in logarithmic coordinates
//! `(u, v) = (ln z, ln w)` without overflow.
//!
//! Coefficients are given by their complex logarithms `ℓ_i`. At each point
//! the dominant term `q` is factored out: with `e_i = exp(L_i − L_q)`,
//! `L_i = ℓ_i + ⟨p_i, (u, v)⟩`, the scaled polynomial is `g = Σ e_i` and its
//! inflection polynomial in translated exponents is `Σ_k e_k D_k²` with
//! `D_k = Σ_i e_i det(p_k − q, p_i − q)`. Both are holomorphic, all terms
//! have modulus at most 1, and they share their torus zeros with `(f, h)`.

use num_complex::Complex64;

use crate::lattice::LatticePoint;

type C = Complex64;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Eval {
    pub g: [C; 2],
    /// Rows: `g_f`, `g_h`; columns: `∂/∂u`, `∂/∂v`.
    pub jac: [[C; 2]; 2],
    /// Derivative along the coefficient path, when requested.
    pub ds: [C; 2],
    pub scale_f: f64,
    pub scale_h: f64,
}

impl Eval {
    pub fn residuals(&self) -> (f64, f64) {
        (rel(self.g[0], self.scale_f), rel(self.g[1], self.scale_h))
    }

    pub fn residual(&self) -> f64 {
        let (a, b) = self.residuals();
        a + b
    }

    /// Solution of `J Δ = −g` (or of `J Δ = −rhs`).
    pub fn newton_step(&self, rhs: [C; 2]) -> Option<[C; 2]> {
        let [[a, b], [c, d]] = self.jac;
        let det = a * d - b * c;
        let scale = (a.norm() + b.norm()) * (c.norm() + d.norm());
        if !(det.norm() > 1e-14 * scale) || !det.is_finite() {
            return None;
        }
        let dx = (-rhs[0] * d + rhs[1] * b) / det;
        let dy = (-rhs[1] * a + rhs[0] * c) / det;
        (dx.is_finite() && dy.is_finite()).then_some([dx, dy])
    }
}

fn rel(v: C, scale: f64) -> f64 {
    if scale > 0.0 {
        v.norm() / scale
    } else {
        v.norm()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct LogSystem {
    pub exps: Vec<LatticePoint>,
}

/// Points with `|Re u|` or `|Re v|` above this have left the range of `f64`.
pub(crate) const LOG_LIMIT: f64 = 700.0;

impl LogSystem {
    pub fn new(exps: Vec<LatticePoint>) -> Self {
        Self { exps }
    }

    pub fn evaluate(&self, logs: &[C], x: [C; 2], dlogs: Option<&[C]>) -> Eval {
        let n = self.exps.len();
        let big: Vec<C> =
            (0..n).map(|i| logs[i] + x[0] * self.exps[i].j as f64 + x[1] * self.exps[i].k as f64).collect();
        let q = (0..n).max_by(|&a, &b| big[a].re.total_cmp(&big[b].re)).expect("nonempty system");
        let e: Vec<C> = big.iter().map(|l| (l - big[q]).exp()).collect();
        let pt: Vec<(i64, i64)> = self.exps.iter().map(|p| (p.j - self.exps[q].j, p.k - self.exps[q].k)).collect();
        let det = |k: usize, i: usize| (pt[k].0 * pt[i].1 - pt[k].1 * pt[i].0) as f64;

        let mut dk = vec![C::new(0.0, 0.0); n];
        let mut scale_h = 0.0;
        for k in 0..n {
            let mut mag = 0.0;
            for i in 0..n {
                let d = det(k, i);
                if d != 0.0 {
                    dk[k] += e[i] * d;
                    mag += e[i].norm() * d.abs();
                }
            }
            scale_h += e[k].norm() * mag * mag;
        }
        let f: C = e.iter().sum();
        let h: C = (0..n).map(|k| e[k] * dk[k] * dk[k]).sum();
        let scale_f = e.iter().map(|v| v.norm()).sum();

        let directional = |d: &dyn Fn(usize) -> C| -> [C; 2] {
            let df: C = (0..n).map(|i| e[i] * d(i)).sum();
            let mut dh = C::new(0.0, 0.0);
            for k in 0..n {
                let mut ddk = C::new(0.0, 0.0);
                for i in 0..n {
                    let dt = det(k, i);
                    if dt != 0.0 {
                        ddk += e[i] * d(i) * dt;
                    }
                }
                dh += e[k] * d(k) * dk[k] * dk[k] + 2.0 * e[k] * dk[k] * ddk;
            }
            [df, dh]
        };
        let du = directional(&|i| C::new(pt[i].0 as f64, 0.0));
        let dv = directional(&|i| C::new(pt[i].1 as f64, 0.0));
        let ds = match dlogs {
            Some(dl) => directional(&|i| dl[i] - dl[q]),
            None => [C::new(0.0, 0.0); 2],
        };
        Eval { g: [f, h], jac: [[du[0], dv[0]], [du[1], dv[1]]], ds, scale_f, scale_h }
    }

    /// Damped Newton iteration at fixed coefficients. Returns the final
    /// point and its evaluation once the step drops below `tol`.
    pub fn refine(&self, logs: &[C], mut x: [C; 2], max_iter: usize, tol: f64) -> Option<([C; 2], Eval)> {
        let mut ev = self.evaluate(logs, x, None);
        for _ in 0..max_iter {
            let step = ev.newton_step(ev.g)?;
            let norm = step[0].norm().max(step[1].norm());
            let mut lambda = 1.0;
            let mut accepted = None;
            for _ in 0..12 {
                let y = [x[0] + step[0] * lambda, x[1] + step[1] * lambda];
                if y[0].re.abs() > LOG_LIMIT || y[1].re.abs() > LOG_LIMIT {
                    return None;
                }
                let ey = self.evaluate(logs, y, None);
                if ey.residual() <= ev.residual() || norm * lambda < tol {
                    accepted = Some((y, ey));
                    break;
                }
                lambda *= 0.5;
            }
            let (y, ey) = accepted?;
            x = y;
            ev = ey;
            if norm * lambda < tol {
                return Some((wrap(x), ev));
            }
        }
        None
    }
}

/// Reduces imaginary parts to `(−π, π]`.
pub(crate) fn wrap(x: [C; 2]) -> [C; 2] {
    x.map(|v| {
        let im = v.im - std::f64::consts::TAU * ((v.im + std::f64::consts::PI) / std::f64::consts::TAU).floor();
        let im = if im <= -std::f64::consts::PI { im + std::f64::consts::TAU } else { im };
        C::new(v.re, im)
    })
}

/// Distance in log coordinates modulo `2πi` in each coordinate.
pub(crate) fn log_distance(a: [C; 2], b: [C; 2]) -> f64 {
    let d = wrap([a[0] - b[0], a[1] - b[1]]);
    d[0].norm().max(d[1].norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxcurve::{inflection_poly, ComplexLaurentPoly, TorusPoint};

    fn lp(j: i64, k: i64) -> LatticePoint {
        LatticePoint::new(j, k)
    }

    /// On the curve, the scaled pair vanishes exactly where `(f, h)` does:
    /// compare with direct evaluation at a moderate point.
    #[test]
    fn matches_direct_evaluation_up_to_multiple_of_f() {
        let exps = vec![lp(0, 0), lp(1, 0), lp(0, 1), lp(1, 1), lp(2, 0)];
        let coeffs = [C::new(1.0, 0.2), C::new(-0.5, 1.0), C::new(2.0, 0.0), C::new(0.3, -0.7), C::new(1.1, 0.4)];
        let f = ComplexLaurentPoly::from_terms(exps.iter().copied().zip(coeffs));
        let h = inflection_poly(&f);
        let sys = LogSystem::new(exps.clone());
        let logs: Vec<C> = coeffs.iter().map(|c| c.ln()).collect();
        // solve f = 0 in w for a fixed z, then compare h
        let z = C::new(0.6, -0.3);
        let a = coeffs[2] + coeffs[3] * z;
        let b = coeffs[0] + coeffs[1] * z + coeffs[4] * z * z;
        let w = -b / a;
        let ev = sys.evaluate(&logs, [z.ln(), w.ln()], None);
        assert!(ev.residuals().0 < 1e-14);
        // h(z, w) and the scaled h differ by a nonzero monomial factor on f = 0
        let p = TorusPoint::new(z, w);
        let q = (0..exps.len())
            .max_by(|&i, &k| {
                let li = (coeffs[i] * z.powi(exps[i].j as i32) * w.powi(exps[i].k as i32)).norm();
                let lk = (coeffs[k] * z.powi(exps[k].j as i32) * w.powi(exps[k].k as i32)).norm();
                li.total_cmp(&lk)
            })
            .unwrap();
        let m = coeffs[q] * z.powi(exps[q].j as i32) * w.powi(exps[q].k as i32);
        assert!((ev.g[1] * m * m * m - h.eval(p)).norm() < 1e-12 * h.term_scale(p));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let exps = vec![lp(0, 0), lp(1, 0), lp(0, 1), lp(1, 1), lp(0, 2)];
        let logs: Vec<C> =
            [C::new(0.1, 0.3), C::new(-0.2, 1.0), C::new(0.0, 2.0), C::new(0.5, -0.4), C::new(-1.0, 0.0)].to_vec();
        let dl: Vec<C> =
            [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-2.0, 0.5), C::new(0.3, 0.3), C::new(1.0, -1.0)].to_vec();
        let sys = LogSystem::new(exps);
        let x = [C::new(0.2, 0.1), C::new(-0.1, 0.4)];
        let ev = sys.evaluate(&logs, x, Some(&dl));
        let h = 1e-6;
        for col in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[col] += h;
            xm[col] -= h;
            let (p, m) = (sys.evaluate(&logs, xp, None), sys.evaluate(&logs, xm, None));
            for row in 0..2 {
                let fd = (p.g[row] - m.g[row]) / (2.0 * h);
                assert!((fd - ev.jac[row][col]).norm() < 1e-6 * (1.0 + fd.norm()));
            }
        }
        let shifted = |s: f64| logs.iter().zip(&dl).map(|(l, d)| l + d * s).collect::<Vec<_>>();
        let (p, m) = (sys.evaluate(&shifted(h), x, None), sys.evaluate(&shifted(-h), x, None));
        for row in 0..2 {
            let fd = (p.g[row] - m.g[row]) / (2.0 * h);
            assert!((fd - ev.ds[row]).norm() < 1e-6 * (1.0 + fd.norm()));
        }
    }

    #[test]
    fn wrapping() {
        let w = wrap([C::new(1.0, 7.0), C::new(0.0, -std::f64::consts::PI)]);
        assert!((w[0].im - (7.0 - std::f64::consts::TAU)).abs() < 1e-15);
        assert!((w[1].im - std::f64::consts::PI).abs() < 1e-15);
        assert!(log_distance([C::new(0.0, 3.1), C::new(0.0, 0.0)], [C::new(0.0, -3.1), C::new(0.0, 0.0)]) < 0.1);
    }
}
