//! Predictor-corrector tracking of solutions of `(f, h)` along a
//! log-linear coefficient path `ℓ(s) = ℓ₀ + s (ℓ₁ − ℓ₀)`, `s ∈ [0, 1]`.

use num_complex::Complex64;

use super::eval::{wrap, LogSystem, LOG_LIMIT};

type C = Complex64;

#[derive(Clone, Copy, Debug)]
pub(crate) struct TrackSettings {
    pub max_ds: f64,
    /// Largest predictor displacement in log coordinates.
    pub max_dx: f64,
    /// Largest accepted first corrector step.
    pub max_correction: f64,
}

impl TrackSettings {
    pub const NORMAL: Self = Self { max_ds: 0.05, max_dx: 0.5, max_correction: 1e-2 };
    pub const CAREFUL: Self = Self { max_ds: 0.005, max_dx: 0.05, max_correction: 1e-4 };
}

pub(crate) struct Homotopy<'a> {
    pub sys: &'a LogSystem,
    pub start: Vec<C>,
    pub delta: Vec<C>,
}

const MIN_DS: f64 = 1e-12;
const CORRECTOR_TOL: f64 = 1e-10;

fn norm(v: [C; 2]) -> f64 {
    v[0].norm().max(v[1].norm())
}

fn axpy(x: [C; 2], a: f64, v: [C; 2]) -> [C; 2] {
    [x[0] + v[0] * a, x[1] + v[1] * a]
}

impl<'a> Homotopy<'a> {
    pub fn new(sys: &'a LogSystem, start: Vec<C>, target: &[C]) -> Self {
        let delta = start.iter().zip(target).map(|(a, b)| b - a).collect();
        Self { sys, start, delta }
    }

    pub fn logs(&self, s: f64) -> Vec<C> {
        self.start.iter().zip(&self.delta).map(|(a, d)| a + d * s).collect()
    }

    fn tangent(&self, x: [C; 2], s: f64) -> Option<[C; 2]> {
        let ev = self.sys.evaluate(&self.logs(s), x, Some(&self.delta));
        ev.newton_step(ev.ds)
    }

    fn predict(&self, x: [C; 2], s: f64, ds: f64) -> Option<[C; 2]> {
        let k1 = self.tangent(x, s)?;
        let k2 = self.tangent(axpy(x, ds / 2.0, k1), s + ds / 2.0)?;
        let k3 = self.tangent(axpy(x, ds / 2.0, k2), s + ds / 2.0)?;
        let k4 = self.tangent(axpy(x, ds, k3), s + ds)?;
        Some([
            x[0] + (k1[0] + k2[0] * 2.0 + k3[0] * 2.0 + k4[0]) * (ds / 6.0),
            x[1] + (k1[1] + k2[1] * 2.0 + k3[1] * 2.0 + k4[1]) * (ds / 6.0),
        ])
    }

    fn correct(&self, mut x: [C; 2], s: f64, max_first: f64) -> Option<[C; 2]> {
        let logs = self.logs(s);
        let mut last = f64::INFINITY;
        for i in 0..5 {
            let ev = self.sys.evaluate(&logs, x, None);
            let step = ev.newton_step(ev.g)?;
            let n = norm(step);
            if (i == 0 && n > max_first) || n > 0.5 * last {
                return None;
            }
            x = axpy(x, 1.0, step);
            if n < CORRECTOR_TOL {
                return Some(x);
            }
            last = n;
        }
        None
    }

    /// Tracks one solution from `s = 0` to `s = 1` and polishes it.
    pub fn track(&self, x0: [C; 2], settings: TrackSettings) -> Result<[C; 2], String> {
        let (mut s, mut x) = (0.0, x0);
        let mut ds = settings.max_ds / 4.0;
        let mut streak = 0;
        while s < 1.0 {
            ds = ds.min(1.0 - s);
            let next = self
                .predict(x, s, ds)
                .filter(|p| norm([p[0] - x[0], p[1] - x[1]]) <= settings.max_dx)
                .and_then(|p| self.correct(p, s + ds, settings.max_correction));
            match next {
                Some(y) => {
                    x = y;
                    s = if ds >= 1.0 - s { 1.0 } else { s + ds };
                    streak += 1;
                    if streak >= 3 {
                        ds = (ds * 2.0).min(settings.max_ds);
                        streak = 0;
                    }
                }
                None => {
                    ds *= 0.5;
                    streak = 0;
                    if ds < MIN_DS {
                        return Err(format!("step size underflow at s = {s:.6}"));
                    }
                }
            }
            if x[0].re.abs() > LOG_LIMIT || x[1].re.abs() > LOG_LIMIT {
                return Err(format!("path diverged at s = {s:.6}"));
            }
        }
        self.sys
            .refine(&self.logs(1.0), x, 30, 1e-13)
            .map(|(y, _)| wrap(y))
            .ok_or_else(|| "final refinement failed".to_string())
    }
}
