//! Numerical certification: map log-inflection points by the scaled Log,
//! assign them to midpoints of bounded edges, and compare the conjugation
//! behavior of each pair with the predicted twist.

use std::fmt::Write as _;

use serde::Serialize;

use crate::curve::{dual_curve, parabolic_locus, TropicalCurve};
use crate::cxcurve::{conj_pairs, critical_points_with, is_real_point, SolverOptions, TorusPoint};
use crate::error::{Error, Result};
use crate::patchwork::{classify_twist, PatchworkFamily, Twist};

/// `(ln|z|, ln|w|) / ln α`.
pub fn log_map(p: TorusPoint, alpha: f64) -> [f64; 2] {
    let l = alpha.ln();
    [p.z.norm().ln() / l, p.w.norm().ln() / l]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Euclidean Hausdorff distance of two finite point sets.
pub fn hausdorff_distance(a: &[[f64; 2]], b: &[[f64; 2]]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let directed = |x: &[[f64; 2]], y: &[[f64; 2]]| {
        x.iter().map(|&p| y.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Conjugation behavior of a two-point cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConjType {
    RealPair,
    ConjugatePair,
    Anomalous,
}

impl ConjType {
    pub fn observed_twist(self) -> Option<Twist> {
        match self {
            ConjType::RealPair => Some(Twist::Twisted),
            ConjType::ConjugatePair => Some(Twist::Untwisted),
            ConjType::Anomalous => None,
        }
    }
}

/// `None` unless the cluster has exactly two points (with multiplicity).
pub fn classify_cluster(points: &[TorusPoint], tol: f64) -> Option<ConjType> {
    let [p, q] = points else { return None };
    let (rp, rq) = (is_real_point(*p, tol), is_real_point(*q, tol));
    Some(if rp && rq {
        ConjType::RealPair
    } else if !rp && !rq && p.relative_distance(q.conj()) < tol {
        ConjType::ConjugatePair
    } else {
        ConjType::Anomalous
    })
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Assignment radius around each midpoint; default a quarter of the
    /// shortest bounded edge.
    pub radius: Option<f64>,
    /// Relative tolerance for realness and conjugate matching.
    pub tol: f64,
    pub solver: SolverOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { radius: None, tol: 1e-6, solver: SolverOptions::default() }
    }
}

/// Distances below this count as zero when checking monotonicity.
pub const MONOTONE_FLOOR: f64 = 1e-9;

/// Midpoints closer than this to each other's distance are a tie.
const TIE: f64 = 1e-9;

pub fn default_radius(c: &TropicalCurve) -> f64 {
    (0..c.edges.len()).map(|e| c.edge_length(e)).fold(f64::INFINITY, f64::min).min(1.0) / 4.0
}

#[derive(Clone, Debug, Serialize)]
pub struct MappedPoint {
    pub torus: TorusPoint,
    pub log: [f64; 2],
    pub multiplicity: usize,
    /// Index into the row's midpoints, if within the radius.
    pub midpoint: Option<usize>,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MidpointCheck {
    pub edge: usize,
    pub midpoint: String,
    pub position: [f64; 2],
    pub count: usize,
    pub max_distance: f64,
    pub conj: Option<ConjType>,
    pub predicted: Twist,
    pub observed: Option<Twist>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub t: f64,
    pub ln_t: f64,
    pub critical_count: usize,
    pub expected_count: usize,
    pub points: Vec<MappedPoint>,
    pub midpoints: Vec<MidpointCheck>,
    pub hausdorff: Option<f64>,
    pub conj_closed: bool,
    pub failures: Vec<String>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub radius: f64,
    pub tol: f64,
    pub rows: Vec<Row>,
    pub monotone: bool,
    pub passed: bool,
    pub failures: Vec<String>,
}

struct Setup {
    curve: TropicalCurve,
    predicted: Vec<Twist>,
    midpoints: Vec<(usize, String, [f64; 2])>,
}

fn setup(fam: &PatchworkFamily) -> Result<Setup> {
    let curve = dual_curve(&fam.tropicalization())?;
    let locus = parabolic_locus(&curve)?;
    let sigma = fam.signs();
    let predicted = curve.edges.iter().map(|e| classify_twist(e, &sigma)).collect::<Result<Vec<_>>>()?;
    let midpoints = locus.points.iter().map(|p| (p.edge, p.midpoint.to_string(), p.midpoint.to_f64())).collect();
    Ok(Setup { curve, predicted, midpoints })
}

fn analyze(fam: &PatchworkFamily, s: &Setup, t: f64, radius: f64, opts: &VerifyOptions) -> Row {
    let mut row = Row {
        t,
        ln_t: t.ln(),
        critical_count: 0,
        expected_count: 2 * s.curve.edges.len(),
        points: Vec::new(),
        midpoints: Vec::new(),
        hausdorff: None,
        conj_closed: true,
        failures: Vec::new(),
    };
    let set = match fam.instantiate_normalized(t).and_then(|f| critical_points_with(&f, &opts.solver)) {
        Ok(set) => set,
        Err(e) => {
            row.failures.push(format!("solver: {e}"));
            return row;
        }
    };
    row.failures.extend(set.dropped.iter().map(|d| format!("dropped path: {d}")));
    row.critical_count = set.count();
    if row.critical_count != row.expected_count {
        row.failures.push(format!("{} critical points, expected {}", row.critical_count, row.expected_count));
    }

    let expanded = set.torus_points();
    let pairing = conj_pairs(&expanded, opts.tol);
    row.conj_closed = pairing.anomalies.is_empty();
    if !row.conj_closed {
        row.failures.push(format!("{} points without a conjugate partner", pairing.anomalies.len()));
    }

    let mut clusters: Vec<Vec<TorusPoint>> = vec![Vec::new(); s.midpoints.len()];
    let mut max_dist = vec![0.0f64; s.midpoints.len()];
    for cp in &set.points {
        let log = log_map(cp.point, t);
        let mut ranked: Vec<(usize, f64)> = s.midpoints.iter().enumerate().map(|(i, m)| (i, dist(log, m.2))).collect();
        ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (mut midpoint, distance) = ranked.first().map_or((None, f64::INFINITY), |&(i, d)| (Some(i), d));
        if distance > radius {
            row.failures
                .push(format!("point at ({:.4}, {:.4}) is farther than {radius} from every midpoint", log[0], log[1]));
            midpoint = None;
        } else if ranked.len() > 1 && ranked[1].1 - distance < TIE {
            row.failures.push(format!("point at ({:.4}, {:.4}) is equidistant from two midpoints", log[0], log[1]));
            midpoint = None;
        }
        if let Some(i) = midpoint {
            clusters[i].extend(std::iter::repeat_n(cp.point, cp.multiplicity));
            max_dist[i] = max_dist[i].max(distance);
        }
        row.points.push(MappedPoint { torus: cp.point, log, multiplicity: cp.multiplicity, midpoint, distance });
    }

    for (i, (edge, label, position)) in s.midpoints.iter().enumerate() {
        let conj = classify_cluster(&clusters[i], opts.tol);
        let observed = conj.and_then(ConjType::observed_twist);
        let predicted = s.predicted[*edge];
        let matches = observed == Some(predicted);
        let count = clusters[i].len();
        if count != 2 {
            row.failures.push(format!("midpoint {label} of edge {edge}: {count} points, expected 2"));
        } else if conj == Some(ConjType::Anomalous) {
            row.failures.push(format!("midpoint {label} of edge {edge}: pair is neither real nor conjugate"));
        } else if !matches {
            row.failures
                .push(format!("edge {edge}: predicted {predicted}, observed {}", observed.expect("classified")));
        }
        row.midpoints.push(MidpointCheck {
            edge: *edge,
            midpoint: label.clone(),
            position: *position,
            count,
            max_distance: max_dist[i],
            conj,
            predicted,
            observed,
            matches,
        });
    }

    let mapped: Vec<[f64; 2]> = row.points.iter().map(|p| p.log).collect();
    let locus: Vec<[f64; 2]> = s.midpoints.iter().map(|m| m.2).collect();
    row.hausdorff = match (mapped.is_empty(), locus.is_empty()) {
        (true, true) => Some(0.0),
        _ => hausdorff_distance(&mapped, &locus).ok(),
    };
    row
}

/// Runs the full pipeline at every `t` in `t_grid` (increasing, all > 1).
pub fn verify_theorem(fam: &PatchworkFamily, t_grid: &[f64], opts: &VerifyOptions) -> Result<VerificationReport> {
    if t_grid.is_empty() || t_grid.iter().any(|&t| !(t > 1.0)) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("t grid must be nonempty, strictly increasing and > 1".into()));
    }
    let s = setup(fam)?;
    let radius = opts.radius.unwrap_or_else(|| default_radius(&s.curve));
    let rows: Vec<Row> = t_grid.iter().map(|&t| analyze(fam, &s, t, radius, opts)).collect();

    let mut failures = Vec::new();
    for row in &rows {
        failures.extend(row.failures.iter().map(|f| format!("t = e^{:.3}: {f}", row.ln_t)));
    }
    let distances: Vec<Option<f64>> = rows.iter().map(|r| r.hausdorff).collect();
    let monotone = distances.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => b <= a || b < MONOTONE_FLOOR,
        _ => false,
    });
    if !monotone {
        failures.push("Hausdorff distance does not decrease along the t grid".into());
    }
    Ok(VerificationReport { radius, tol: opts.tol, passed: failures.is_empty(), rows, monotone, failures })
}

/// Per-edge comparison of observed and predicted twists at a single `t`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistComparison {
    pub t: f64,
    pub edges: Vec<MidpointCheck>,
    pub passed: bool,
    pub failures: Vec<String>,
}

pub fn verify_twists(fam: &PatchworkFamily, t: f64, opts: &VerifyOptions) -> Result<TwistComparison> {
    if !(t > 1.0) {
        return Err(Error::InvalidArgument(format!("t must be > 1, got {t}")));
    }
    let s = setup(fam)?;
    let radius = opts.radius.unwrap_or_else(|| default_radius(&s.curve));
    let row = analyze(fam, &s, t, radius, opts);
    let failures: Vec<String> = row
        .midpoints
        .iter()
        .filter(|m| !m.matches)
        .map(|m| match m.conj {
            None => format!("edge {}: cluster has {} points, expected 2", m.edge, m.count),
            Some(ConjType::Anomalous) => format!("edge {}: anomalous conjugation structure", m.edge),
            Some(_) => {
                format!("edge {}: predicted {}, observed {}", m.edge, m.predicted, m.observed.expect("classified"))
            }
        })
        .collect();
    Ok(TwistComparison { t, passed: failures.is_empty(), edges: row.midpoints, failures })
}

fn conj_label(c: Option<ConjType>) -> &'static str {
    match c {
        Some(ConjType::RealPair) => "real pair",
        Some(ConjType::ConjugatePair) => "conjugate pair",
        Some(ConjType::Anomalous) => "anomalous",
        None => "-",
    }
}

impl VerificationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Human-readable table, one block per `t`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "radius {:.4}, tol {:e}", self.radius, self.tol);
        let _ = writeln!(out, "{:>10}  {:>6}  {:>8}  {:>12}  status", "ln t", "points", "expected", "hausdorff");
        for row in &self.rows {
            let d = row.hausdorff.map_or("-".to_string(), |d| format!("{d:.3e}"));
            let status = if row.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:>10.3}  {:>6}  {:>8}  {:>12}  {status}",
                row.ln_t, row.critical_count, row.expected_count, d
            );
            for m in &row.midpoints {
                let _ = writeln!(
                    out,
                    "    edge {:>2} at {:<16} {} pts  max dist {:.3e}  {:<14}  predicted {:<9}  {}",
                    m.edge,
                    m.midpoint,
                    m.count,
                    m.max_distance,
                    conj_label(m.conj),
                    m.predicted.to_string(),
                    if m.matches { "match" } else { "MISMATCH" }
                );
            }
        }
        let _ = writeln!(out, "hausdorff monotone: {}", if self.monotone { "yes" } else { "no" });
        for f in &self.failures {
            let _ = writeln!(out, "failure: {f}");
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}
