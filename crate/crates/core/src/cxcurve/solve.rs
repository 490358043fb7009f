//! Computation of log-inflection points: common torus zeros of `f` and its
//! inflection polynomial.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{log_distance, LogSystem};
use super::resultant::{resultant_in_w, BiPoly};
use super::roots::aberth;
use super::track::{Homotopy, TrackSettings};
use super::{inflection_poly, ComplexLaurentPoly, CriticalPoint, CriticalSet, TorusPoint};
use crate::error::{Error, Result};

type C = Complex64;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Seed of the random start system used by the tracked route.
    pub seed: u64,
    /// Largest spread `max ln|c| − min ln|c|` of coefficient moduli solved
    /// directly by elimination; wider spreads are tracked from a random
    /// start system.
    pub direct_spread: f64,
    /// Relative distance under which computed points are merged.
    pub dedup: f64,
    /// Number of random start systems tried before giving up on lost paths.
    pub attempts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { seed: 0x5e_ed0f_1ec7, direct_spread: 6.0, dedup: 1e-8, attempts: 4 }
    }
}

/// Residual bound for accepting a polished point.
const ACCEPT: f64 = 1e-10;
/// Pre-filter on `|h|` for candidate pairs from the elimination.
const CANDIDATE: f64 = 1e-6;
/// Torus condition: moduli below this count as zero.
const TORUS: f64 = 1e-12;

fn check_input(f: &ComplexLaurentPoly) -> Result<()> {
    let poly = f.newton_polygon()?;
    if poly.dimension() < 2 {
        return Err(Error::DegenerateNewtonPolygon(poly.dimension()));
    }
    if inflection_poly(f).is_zero() {
        return Err(Error::DegenerateGaussMap);
    }
    Ok(())
}

fn logs_of(f: &ComplexLaurentPoly) -> (LogSystem, Vec<C>) {
    let (exps, logs): (Vec<_>, Vec<_>) = f.terms().map(|(p, c)| (p, c.ln())).unzip();
    (LogSystem::new(exps), logs)
}

/// Common torus zeros of `f` and `inflection_poly(f)`.
pub fn critical_points(f: &ComplexLaurentPoly) -> Result<CriticalSet> {
    critical_points_with(f, &SolverOptions::default())
}

pub fn critical_points_with(f: &ComplexLaurentPoly, opts: &SolverOptions) -> Result<CriticalSet> {
    let mags: Vec<f64> = f.terms().map(|(_, c)| c.norm().ln()).collect();
    let spread =
        mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - mags.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread <= opts.direct_spread {
        critical_points_direct(f)
    } else {
        critical_points_tracked(f, opts)
    }
}

/// Solutions in log coordinates with multiplicities, merged within `radius`.
struct Collector {
    radius: f64,
    points: Vec<([C; 2], usize)>,
}

impl Collector {
    fn new(radius: f64) -> Self {
        Self { radius, points: Vec::new() }
    }

    /// Returns false if the point was already present.
    fn insert(&mut self, x: [C; 2]) -> bool {
        match self.points.iter_mut().find(|(y, _)| log_distance(*y, x) <= self.radius) {
            Some((_, m)) => {
                *m += 1;
                false
            }
            None => {
                self.points.push((x, 1));
                true
            }
        }
    }

    fn finish(self, sys: &LogSystem, logs: &[C], dropped: Vec<String>) -> CriticalSet {
        let mut points: Vec<CriticalPoint> = self
            .points
            .into_iter()
            .map(|(x, m)| {
                let (resid_f, resid_h) = sys.evaluate(logs, x, None).residuals();
                CriticalPoint { point: TorusPoint::new(x[0].exp(), x[1].exp()), multiplicity: m, resid_f, resid_h }
            })
            .collect();
        points.sort_by(|a, b| {
            let key =
                |p: &CriticalPoint| (p.point.z.norm().ln(), p.point.w.norm().ln(), p.point.z.arg(), p.point.w.arg());
            key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
        });
        CriticalSet { points, dropped }
    }
}

/// Elimination route: Sylvester resultant in `w`, roots in `z`, back
/// substitution and Newton polishing.
pub fn critical_points_direct(f: &ComplexLaurentPoly) -> Result<CriticalSet> {
    check_input(f)?;
    let (sys, logs) = logs_of(f);
    let (xs, dropped) = direct_solutions(f, &sys, &logs)?;
    let mut out = Collector::new(1e-8);
    for x in xs {
        out.insert(x);
    }
    Ok(out.finish(&sys, &logs, dropped))
}

fn direct_solutions(f: &ComplexLaurentPoly, sys: &LogSystem, logs: &[C]) -> Result<(Vec<[C; 2]>, Vec<String>)> {
    let fb = BiPoly::from_laurent(f);
    let hb = BiPoly::from_laurent(&inflection_poly(f));
    let r = resultant_in_w(&fb, &hb)?;
    let mut dropped = Vec::new();
    if r.iter().skip(1).all(|c| *c == C::new(0.0, 0.0)) {
        return Ok((Vec::new(), dropped));
    }
    let mut out = Vec::new();
    for z in aberth(&r)? {
        if !(z.norm() > TORUS && z.norm() < 1.0 / TORUS) {
            continue;
        }
        let ws = match aberth(&fb.at_z(z)) {
            Ok(ws) => ws,
            Err(Error::ConstantPolynomial) => continue,
            Err(e) => return Err(e),
        };
        let mut cands: Vec<([C; 2], f64)> = ws
            .into_iter()
            .filter(|w| w.norm() > TORUS && w.norm() < 1.0 / TORUS)
            .map(|w| {
                let x = [z.ln(), w.ln()];
                (x, sys.evaluate(logs, x, None).residuals().1)
            })
            .collect();
        cands.sort_by(|a, b| a.1.total_cmp(&b.1));
        // Resultant roots where the leading coefficient in w vanishes have no
        // finite partner; the best candidate is still tried, but its failure
        // is only reported when it looked like a genuine solution.
        let keep = cands.iter().filter(|c| c.1 < CANDIDATE).count().max(1);
        for (x, rh0) in cands.into_iter().take(keep) {
            let report = rh0 < CANDIDATE;
            match sys.refine(logs, x, 40, 1e-14) {
                Some((y, ev)) => {
                    let (rf, rh) = ev.residuals();
                    if rf < ACCEPT && rh < ACCEPT {
                        out.push(y);
                    } else if report {
                        dropped.push(format!("candidate z = {z:.6e} rejected: residuals {rf:.1e}, {rh:.1e}"));
                    }
                }
                None if report => dropped.push(format!("candidate z = {z:.6e} did not converge")),
                None => {}
            }
        }
    }
    Ok((out, dropped))
}

/// Homotopy route: solve a random unit-modulus start system with the same
/// support by elimination, then track every solution to `f` along the
/// log-linear coefficient path.
pub fn critical_points_tracked(f: &ComplexLaurentPoly, opts: &SolverOptions) -> Result<CriticalSet> {
    check_input(f)?;
    let (sys, target) = logs_of(f);
    let mut best: Option<(Collector, Vec<String>)> = None;
    let mut start_errors = Vec::new();
    for attempt in 0..opts.attempts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(attempt as u64));
        let start: Vec<C> = target.iter().map(|_| C::new(0.0, rng.random_range(0.0..std::f64::consts::TAU))).collect();
        let start_poly = ComplexLaurentPoly::from_terms(sys.exps.iter().zip(&start).map(|(p, l)| (*p, l.exp())));
        let starts = match direct_solutions(&start_poly, &sys, &start) {
            Ok((xs, _)) => {
                let mut c = Collector::new(1e-8);
                xs.into_iter().for_each(|x| {
                    c.insert(x);
                });
                c.points.into_iter().map(|(x, _)| x).collect::<Vec<_>>()
            }
            Err(e) => {
                start_errors.push(format!("start system {attempt}: {e}"));
                continue;
            }
        };
        let mut dropped = Vec::new();
        let homotopy = Homotopy::new(&sys, start, &target);
        let mut found = Collector::new(opts.dedup);
        let mut clean = true;
        for x0 in starts {
            let first = homotopy.track(x0, TrackSettings::NORMAL);
            let ok = match first {
                Ok(x) if found.insert(x) => true,
                _ => {
                    // lost path or collision with an earlier endpoint
                    if let Ok(x) = &first {
                        if let Some((_, m)) = found.points.iter_mut().find(|(y, _)| log_distance(*y, *x) <= opts.dedup)
                        {
                            *m -= 1;
                        }
                    }
                    match homotopy.track(x0, TrackSettings::CAREFUL) {
                        Ok(x) => {
                            let fresh = found.insert(x);
                            if !fresh {
                                dropped.push(format!("attempt {attempt}: two paths end at the same point"));
                            }
                            fresh
                        }
                        Err(e) => {
                            dropped.push(format!("attempt {attempt}: {e}"));
                            false
                        }
                    }
                }
            };
            clean &= ok;
        }
        let better = best.as_ref().is_none_or(|(b, _)| found.points.len() > b.points.len());
        if better {
            best = Some((found, dropped));
        }
        if clean {
            break;
        }
    }
    let (best, dropped) = match best {
        Some(b) => b,
        None if !start_errors.is_empty() => return Err(Error::Verification(start_errors.join("; "))),
        None => return Err(Error::RootsNotConverged { iterations: opts.attempts, residual: f64::INFINITY }),
    };
    Ok(best.finish(&sys, &target, dropped))
}
