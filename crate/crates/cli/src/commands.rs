use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use logflex::curve::{check_balancing, TropicalCurve};
use logflex::lattice::{rational_to_string, LatticePoint};
use logflex::patchwork::{twist_violation, SignMap};
use logflex::verify::{default_radius, TwistComparison};
use logflex::{
    classify_twist, parabolic_locus, regular_subdivision, synthesize_signs, twist_set, verify_theorem, verify_twists,
    Twist, VerificationReport, VerifyOptions,
};
use serde::Serialize;

use crate::amoeba;
use crate::input::{load_twist_set, Input};
use crate::svg::{Figure, Window};

/// What a subcommand produced: text for stdout and whether every requested
/// check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn plural(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

fn curve_window(c: &TropicalCurve) -> Window {
    let verts: Vec<[f64; 2]> = c.vertices.iter().map(|v| v.to_f64()).collect();
    Window::around(&verts)
}

/// Draws `background` first, then the curve and its parabolic disks.
fn curve_figure(c: &TropicalCurve, radius: f64, background: &[[f64; 2]]) -> Figure {
    let mut fig = Figure::new(curve_window(c));
    fig.cloud(background, "#9e9e9e");
    fig.curve(c);
    if let Ok(locus) = parabolic_locus(c) {
        let centers: Vec<[f64; 2]> = locus.points.iter().map(|p| p.midpoint.to_f64()).collect();
        fig.disks(&centers, radius, "#d95f02");
    }
    fig
}

pub struct CurveArgs {
    pub input: PathBuf,
    pub radius: Option<f64>,
    pub svg: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub require_smooth: bool,
}

pub fn curve(args: &CurveArgs) -> Result<Outcome> {
    let input = Input::load(&args.input)?;
    let poly = input.tropical();
    let sub = regular_subdivision(&poly)?;
    let c = TropicalCurve::from_subdivision(&sub);
    let delta = &sub.newton;
    let smooth = c.is_smooth();

    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {poly}");
    let verts: Vec<String> = delta.vertices().iter().map(LatticePoint::to_string).collect();
    let _ = writeln!(
        out,
        "Newton polygon: {}; area {}, {} boundary and {} interior lattice points",
        verts.join(" "),
        rational_to_string(delta.area()),
        delta.boundary_count(),
        delta.interior_count()
    );
    let _ = writeln!(
        out,
        "subdivision: {}, {}",
        plural(sub.cells.len(), "cell"),
        if smooth { "smooth" } else { "not smooth" }
    );
    let _ = writeln!(out, "vertices:");
    for (i, v) in c.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} {v}");
    }
    let _ = writeln!(out, "bounded edges:");
    for (i, e) in c.edges.iter().enumerate() {
        let _ = writeln!(
            out,
            "  e{i} v{}-v{} direction {} weight {} dual {}-{}",
            e.endpoints[0], e.endpoints[1], e.u, e.weight, e.dual_segment[0], e.dual_segment[1]
        );
    }
    let _ = writeln!(out, "rays:");
    for (i, r) in c.rays.iter().enumerate() {
        let _ = writeln!(out, "  r{i} from v{} direction {} weight {}", r.vertex, r.direction, r.weight);
    }
    let violations = check_balancing(&c);
    for v in &violations {
        let _ = writeln!(out, "balancing fails at v{}: sum {}", v.vertex, v.sum);
    }
    match parabolic_locus(&c) {
        Ok(locus) if locus.is_empty() => {
            let _ = writeln!(out, "0 bounded edges; parabolic locus empty");
        }
        Ok(locus) => {
            let pts: Vec<String> = locus.points.iter().map(|p| p.midpoint.to_string()).collect();
            let noun = if pts.len() == 1 { "parabolic point" } else { "parabolic points" };
            let _ = writeln!(out, "{}, {noun} {}", plural(c.edges.len(), "bounded edge"), pts.join(", "));
        }
        Err(e) => {
            let _ = writeln!(out, "{}; parabolic locus undefined ({e})", plural(c.edges.len(), "bounded edge"));
        }
    }

    if let Some(path) = &args.report {
        write_file(path, &c.to_json()?)?;
    }
    if let Some(path) = &args.svg {
        let radius = args.radius.unwrap_or_else(|| default_radius(&c));
        write_file(path, &curve_figure(&c, radius, &[]).render())?;
    }
    let passed = violations.is_empty() && (smooth || !args.require_smooth);
    Ok(Outcome { text: out, passed })
}

pub struct TwistArgs {
    pub input: PathBuf,
    pub synthesize: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

#[derive(Serialize)]
struct SignEntry {
    point: LatticePoint,
    sign: i8,
}

#[derive(Serialize)]
struct EdgeTwist {
    edge: usize,
    twist: Twist,
}

#[derive(Serialize)]
struct Synthesis {
    target: Vec<usize>,
    admissible: bool,
    violation: Option<String>,
    signs: Option<Vec<SignEntry>>,
    round_trip: Option<bool>,
}

#[derive(Serialize, Default)]
struct TwistReport {
    edges: Vec<EdgeTwist>,
    twist_set: Option<Vec<usize>>,
    synthesis: Option<Synthesis>,
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

pub fn twist(args: &TwistArgs) -> Result<Outcome> {
    let input = Input::load(&args.input)?;
    if input.family().is_none() && args.synthesize.is_none() {
        anyhow::bail!("twist needs a family document with signs, or --synthesize with a twist set");
    }
    let c = logflex::dual_curve(&input.tropical())?;
    let mut out = String::new();
    let mut report = TwistReport::default();
    let mut passed = true;

    if let Some(fam) = input.family() {
        let t = twist_set(fam, &c)?;
        let sigma = fam.signs();
        for (i, e) in c.edges.iter().enumerate() {
            let tw = classify_twist(e, &sigma)?;
            let _ = writeln!(out, "edge {i}: {tw}");
            report.edges.push(EdgeTwist { edge: i, twist: tw });
        }
        let members: Vec<usize> = t.edges.iter().copied().collect();
        let _ = writeln!(out, "twist set: {members:?}");
        match twist_violation(&c, &t) {
            None => {
                let _ = writeln!(out, "twist-admissible");
            }
            Some(v) => {
                let _ = writeln!(out, "not twist-admissible ({v})");
                passed = false;
            }
        }
        report.twist_set = Some(members);
    }

    if let Some(path) = &args.synthesize {
        let target = load_twist_set(path)?;
        target.check(&c)?;
        let members: Vec<usize> = target.edges.iter().copied().collect();
        let mut syn =
            Synthesis { target: members.clone(), admissible: true, violation: None, signs: None, round_trip: None };
        let _ = writeln!(out, "target twist set: {members:?}");
        if let Some(v) = twist_violation(&c, &target) {
            let _ = writeln!(out, "not twist-admissible ({v})");
            syn.admissible = false;
            syn.violation = Some(v.to_string());
            passed = false;
        } else {
            let sigma: SignMap = synthesize_signs(&c, &target)?;
            let listed: Vec<String> = sigma.iter().map(|(p, s)| format!("{p}{}", sign_char(*s))).collect();
            let _ = writeln!(out, "synthesized signs: {}", listed.join(" "));
            let round_trip = c.edges.iter().enumerate().all(
                |(i, e)| matches!(classify_twist(e, &sigma), Ok(tw) if (tw == Twist::Twisted) == target.contains(i)),
            );
            let _ = writeln!(out, "round trip: {}", if round_trip { "ok" } else { "MISMATCH" });
            passed &= round_trip;
            syn.signs = Some(sigma.into_iter().map(|(point, sign)| SignEntry { point, sign }).collect());
            syn.round_trip = Some(round_trip);
        }
        report.synthesis = Some(syn);
    }

    if let Some(path) = &args.report {
        write_file(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(Outcome { text: out, passed })
}

pub struct VerifyArgs {
    pub input: PathBuf,
    pub t_grid: Vec<f64>,
    pub radius: Option<f64>,
    pub tol: f64,
    pub svg: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub amoeba_grid: usize,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    theorem: &'a VerificationReport,
    twists: &'a TwistComparison,
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let input = Input::load(&args.input)?;
    let fam = input.require_family()?;
    let opts = VerifyOptions { radius: args.radius, tol: args.tol, ..VerifyOptions::default() };
    let report = verify_theorem(fam, &args.t_grid, &opts).context("verification could not run")?;
    let t_max = *args.t_grid.last().expect("nonempty grid");
    let twists = verify_twists(fam, t_max, &opts).context("twist comparison could not run")?;

    let mut out = report.to_table();
    let _ = writeln!(out, "twists at ln t = {:.3}:", t_max.ln());
    for m in &twists.edges {
        let observed = m.observed.map_or("-".to_string(), |t| t.to_string());
        let _ = writeln!(out, "  edge {}: predicted {}, observed {}", m.edge, m.predicted, observed);
    }
    let _ = writeln!(out, "twist comparison: {}", if twists.passed { "PASS" } else { "FAIL" });

    if let Some(path) = &args.report {
        write_file(path, &serde_json::to_string_pretty(&VerifyDoc { theorem: &report, twists: &twists })?)?;
    }
    if let Some(path) = &args.svg {
        let c = logflex::dual_curve(&fam.tropicalization())?;
        let f = fam.instantiate_normalized(t_max)?;
        let cloud = amoeba::sample(&f, t_max.ln(), &curve_window(&c), args.amoeba_grid);
        let mut fig = curve_figure(&c, report.radius, &cloud);
        let last = report.rows.last().expect("nonempty grid");
        let mapped: Vec<[f64; 2]> =
            last.points.iter().flat_map(|p| std::iter::repeat_n(p.log, p.multiplicity)).collect();
        fig.crosses(&mapped, "#1b9e77");
        write_file(path, &fig.render())?;
    }
    Ok(Outcome { text: out, passed: report.passed && twists.passed })
}
