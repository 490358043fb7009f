//! Patchworking families `f_t = Σ σ_j m_j t^{a_j} z^j`, twisted edges of
//! their tropical limits, and sign synthesis for a prescribed twist set.

mod gf2;

pub use gf2::Gf2System;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::curve::{cycle_basis, Edge, TropicalCurve};
use crate::cxcurve::ComplexLaurentPoly;
use crate::error::{Error, Result};
use crate::lattice::{rational_from_str, rational_to_f64, rational_to_string, LatticePoint, LatticePolygon, Rational};
use crate::troppoly::{regular_subdivision, TropicalPolynomial};

/// Signs `±1` indexed by lattice point.
pub type SignMap = BTreeMap<LatticePoint, i8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyTerm {
    pub lifting: Rational,
    pub sign: i8,
    pub magnitude: Rational,
}

/// Support, strictly convex lifting, limit signs and limit magnitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkFamily {
    terms: BTreeMap<LatticePoint, FamilyTerm>,
}

fn list(points: &[LatticePoint]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl PatchworkFamily {
    /// Validates and builds a family. `magnitudes` defaults to 1.
    pub fn new(
        support: &[LatticePoint],
        lifting: &[Rational],
        signs: &[i8],
        magnitudes: Option<&[Rational]>,
    ) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidFamily(m));
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        if lifting.len() != support.len() || signs.len() != support.len() {
            return invalid(format!(
                "support has {} points but {} lifting values and {} signs were given",
                support.len(),
                lifting.len(),
                signs.len()
            ));
        }
        if let Some(m) = magnitudes {
            if m.len() != support.len() {
                return invalid(format!("support has {} points but {} magnitudes were given", support.len(), m.len()));
            }
        }
        let mut terms = BTreeMap::new();
        for (i, &p) in support.iter().enumerate() {
            let sign = signs[i];
            if sign != 1 && sign != -1 {
                return invalid(format!("sign at {p} is {sign}, expected +1 or -1"));
            }
            let magnitude = magnitudes.map(|m| m[i]).unwrap_or(Rational::from_integer(1));
            if !magnitude.is_positive() {
                return invalid(format!("magnitude at {p} must be positive"));
            }
            if terms.insert(p, FamilyTerm { lifting: lifting[i], sign, magnitude }).is_some() {
                return invalid(format!("lattice point {p} appears twice in the support"));
            }
        }
        let fam = Self { terms };
        fam.validate()?;
        Ok(fam)
    }

    /// Family on all lattice points of `delta` with lifting and signs given
    /// as functions of the point.
    pub fn on_polygon(
        delta: &LatticePolygon,
        lifting: impl Fn(LatticePoint) -> Rational,
        sign: impl Fn(LatticePoint) -> i8,
    ) -> Result<Self> {
        let pts = delta.lattice_points();
        let a: Vec<Rational> = pts.iter().map(|&p| lifting(p)).collect();
        let s: Vec<i8> = pts.iter().map(|&p| sign(p)).collect();
        Self::new(&pts, &a, &s, None)
    }

    fn validate(&self) -> Result<()> {
        let delta = LatticePolygon::hull(self.terms.keys().copied())?;
        if delta.dimension() < 2 {
            return Err(Error::DegenerateNewtonPolygon(delta.dimension()));
        }
        let missing: Vec<LatticePoint> =
            delta.lattice_points().into_iter().filter(|p| !self.terms.contains_key(p)).collect();
        if !missing.is_empty() {
            return Err(Error::InvalidFamily(format!(
                "support must contain every lattice point of its Newton polygon; missing {}",
                list(&missing)
            )));
        }
        let unused = regular_subdivision(&self.tropicalization())?.unused_points();
        if !unused.is_empty() {
            return Err(Error::InvalidFamily(format!(
                "lifting is not strictly convex: {} not vertices of the induced subdivision",
                list(&unused)
            )));
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, FamilyTerm)> + '_ {
        self.terms.iter().map(|(p, t)| (*p, *t))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    pub fn newton_polygon(&self) -> LatticePolygon {
        LatticePolygon::hull(self.terms.keys().copied()).expect("nonempty support")
    }

    pub fn signs(&self) -> SignMap {
        self.terms.iter().map(|(p, t)| (*p, t.sign)).collect()
    }

    /// The same family with different signs; missing points keep their sign.
    pub fn with_signs(&self, signs: &SignMap) -> Self {
        let mut out = self.clone();
        for (p, t) in out.terms.iter_mut() {
            if let Some(&s) = signs.get(p) {
                t.sign = s;
            }
        }
        out
    }

    pub fn tropicalization(&self) -> TropicalPolynomial {
        TropicalPolynomial::from_terms(self.terms.iter().map(|(p, t)| (*p, t.lifting))).expect("nonempty support")
    }

    /// `Σ σ_j m_j t^{a_j} z^j w^k`.
    pub fn instantiate(&self, t: f64) -> Result<ComplexLaurentPoly> {
        self.instantiate_shifted(t, 0.0)
    }

    /// `t^{−c} f_t`, with `c` the midrange of the lifting. It has the same
    /// zeros and log-inflection points as `f_t` but reaches twice the range
    /// of `ln t` before the coefficients leave double precision.
    pub fn instantiate_normalized(&self, t: f64) -> Result<ComplexLaurentPoly> {
        let a = self.terms.values().map(|t| rational_to_f64(t.lifting));
        let (lo, hi) = a.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        self.instantiate_shifted(t, (lo + hi) / 2.0)
    }

    fn instantiate_shifted(&self, t: f64, shift: f64) -> Result<ComplexLaurentPoly> {
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!("t must be a finite real > 1, got {t}")));
        }
        let lt = t.ln();
        let mut out = Vec::with_capacity(self.terms.len());
        for (&p, term) in &self.terms {
            let log_magnitude = (rational_to_f64(term.lifting) - shift) * lt + rational_to_f64(term.magnitude).ln();
            if log_magnitude.abs() > 700.0 {
                return Err(Error::Overflow { t, point: p, log_magnitude });
            }
            out.push((p, Complex64::new(term.sign as f64 * log_magnitude.exp(), 0.0)));
        }
        Ok(ComplexLaurentPoly::from_terms(out))
    }

    pub fn to_json(&self) -> Result<String> {
        let doc =
            FamilyDoc {
                support: self.support(),
                lifting: self.terms.values().map(|t| RationalValue::Text(rational_to_string(t.lifting))).collect(),
                signs: self.terms.values().map(|t| t.sign as i64).collect(),
                magnitudes: self.terms.values().any(|t| t.magnitude != Rational::from_integer(1)).then(|| {
                    self.terms.values().map(|t| RationalValue::Text(rational_to_string(t.magnitude))).collect()
                }),
            };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FamilyDoc = serde_json::from_str(text)?;
        let lifting = doc.lifting.iter().map(RationalValue::value).collect::<Result<Vec<_>>>()?;
        let magnitudes = doc
            .magnitudes
            .as_ref()
            .map(|m| m.iter().map(RationalValue::value).collect::<Result<Vec<_>>>())
            .transpose()?;
        let signs = doc
            .signs
            .iter()
            .map(|&s| i8::try_from(s).map_err(|_| Error::InvalidFamily(format!("sign {s} is not +1 or -1"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&doc.support, &lifting, &signs, magnitudes.as_deref())
    }
}

/// A rational given either as a JSON number or as a `"p/q"` string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RationalValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl RationalValue {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalValue::Int(v) => Ok(Rational::from_integer(*v as i128)),
            // the shortest round-trip decimal of the float, read exactly
            RationalValue::Float(v) => rational_from_str(&format!("{v:e}")),
            RationalValue::Text(s) => rational_from_str(s),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyDoc {
    support: Vec<LatticePoint>,
    lifting: Vec<RationalValue>,
    signs: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    magnitudes: Option<Vec<RationalValue>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    Twisted,
    Untwisted,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::Twisted => "Twisted",
            Twist::Untwisted => "Untwisted",
        })
    }
}

/// True when `a` and `b` differ modulo 2 in at least one coordinate.
fn distinct_parity(a: LatticePoint, b: LatticePoint) -> bool {
    a.parity() != b.parity()
}

fn sign_at(sigma: &SignMap, p: LatticePoint) -> Result<i8> {
    sigma.get(&p).copied().ok_or(Error::MissingSign(p))
}

/// Sign rule for the pair of log-inflection points near a bounded edge.
pub fn classify_twist(edge: &Edge, sigma: &SignMap) -> Result<Twist> {
    let [v1, v2] = edge.dual_segment;
    let [v3, v4] = edge.opposite_vertices.ok_or(Error::NotTriangulated { a: v1, b: v2 })?;
    let twisted = if distinct_parity(v3, v4) {
        sign_at(sigma, v1)? * sign_at(sigma, v2)? * sign_at(sigma, v3)? * sign_at(sigma, v4)? > 0
    } else {
        sign_at(sigma, v3)? * sign_at(sigma, v4)? < 0
    };
    Ok(if twisted { Twist::Twisted } else { Twist::Untwisted })
}

/// A set of bounded edges, by index into [`TropicalCurve::edges`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSet {
    pub edges: BTreeSet<usize>,
}

impl TwistSet {
    pub fn new<I: IntoIterator<Item = usize>>(edges: I) -> Self {
        Self { edges: edges.into_iter().collect() }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    pub fn check(&self, c: &TropicalCurve) -> Result<()> {
        match self.edges.iter().find(|&&e| e >= c.edges.len()) {
            Some(e) => Err(Error::InvalidArgument(format!(
                "twist set refers to edge {e} but the curve has {} bounded edges",
                c.edges.len()
            ))),
            None => Ok(()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

fn require_smooth(c: &TropicalCurve) -> Result<()> {
    if c.is_smooth() {
        Ok(())
    } else {
        Err(Error::NonSmooth("twist classification needs a smooth tropical curve".into()))
    }
}

/// Edges classified [`Twist::Twisted`] under the family's signs.
pub fn twist_set(fam: &PatchworkFamily, c: &TropicalCurve) -> Result<TwistSet> {
    require_smooth(c)?;
    let sigma = fam.signs();
    let mut out = TwistSet::default();
    for (i, e) in c.edges.iter().enumerate() {
        if classify_twist(e, &sigma)? == Twist::Twisted {
            out.edges.insert(i);
        }
    }
    Ok(out)
}

/// A basis cycle along which the twisted primitive directions do not cancel mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleViolation {
    pub cycle: usize,
    pub edges: Vec<usize>,
    pub sum_mod2: (u8, u8),
}

impl fmt::Display for CycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cycle {} (edges {:?}): sum of twisted primitive vectors is ({},{}) mod 2, not (0,0)",
            self.cycle, self.edges, self.sum_mod2.0, self.sum_mod2.1
        )
    }
}

/// The first basis cycle violating the mod-2 condition, if any.
pub fn twist_violation(c: &TropicalCurve, t: &TwistSet) -> Option<CycleViolation> {
    cycle_basis(c).into_iter().enumerate().find_map(|(i, cycle)| {
        let sum = cycle
            .iter()
            .filter(|s| t.contains(s.edge))
            .map(|s| c.edges[s.edge].u.mod2())
            .fold((0u8, 0u8), |a, b| (a.0 ^ b.0, a.1 ^ b.1));
        (sum != (0, 0)).then(|| CycleViolation {
            cycle: i,
            edges: cycle.iter().map(|s| s.edge).collect(),
            sum_mod2: sum,
        })
    })
}

pub fn is_twist_admissible(c: &TropicalCurve, t: &TwistSet) -> bool {
    twist_violation(c, t).is_none()
}

/// Signs on the lattice points of the dual subdivision whose twisted edges
/// are exactly `t`, from the linear conditions on `σ_v = (−1)^{ε_v}`.
pub fn synthesize_signs(c: &TropicalCurve, t: &TwistSet) -> Result<SignMap> {
    require_smooth(c)?;
    t.check(c)?;
    let points: Vec<LatticePoint> = c.dual_points().into_iter().collect();
    let index: BTreeMap<LatticePoint, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut sys = Gf2System::new(points.len());
    for (i, e) in c.edges.iter().enumerate() {
        let [v1, v2] = e.dual_segment;
        let [v3, v4] = e.opposite_vertices.ok_or(Error::NotTriangulated { a: v1, b: v2 })?;
        let twisted = t.contains(i);
        if distinct_parity(v3, v4) {
            sys.push(&[index[&v1], index[&v2], index[&v3], index[&v4]], !twisted);
        } else {
            sys.push(&[index[&v3], index[&v4]], twisted);
        }
    }
    match sys.solve() {
        Some(eps) => Ok(points.into_iter().zip(eps).map(|(p, e)| (p, if e { -1 } else { 1 })).collect()),
        None => Err(Error::Infeasible(match twist_violation(c, t) {
            Some(v) => v.to_string(),
            None => "the sign conditions are inconsistent".into(),
        })),
    }
}
