use std::f64::consts::TAU;

use logflex::cxcurve::{aberth, BiPoly};
use logflex::ComplexLaurentPoly;
use num_complex::Complex64;

use crate::svg::Window;

/// Samples `Log_t(V_f)` by solving `f(z, ·) = 0` over an `n × n` grid of
/// `ln|z| / ln t` values spanning the window and arguments of `z`.
pub fn sample(f: &ComplexLaurentPoly, ln_t: f64, window: &Window, n: usize) -> Vec<[f64; 2]> {
    let poly = BiPoly::from_laurent(f);
    let mut out = Vec::new();
    if n == 0 || poly.degree_w() == 0 {
        return out;
    }
    for i in 0..n {
        let x = window.x0 + (window.x1 - window.x0) * (i as f64 + 0.5) / n as f64;
        let modulus = (x * ln_t).exp();
        for j in 0..n {
            let z = Complex64::from_polar(modulus, TAU * j as f64 / n as f64);
            let Ok(roots) = aberth(&poly.at_z(z)) else { continue };
            out.extend(
                roots
                    .into_iter()
                    .filter(|w| w.norm() > 0.0 && w.is_finite())
                    .map(|w| [x, w.norm().ln() / ln_t])
                    .filter(|p| window.contains(*p)),
            );
        }
    }
    out
}
