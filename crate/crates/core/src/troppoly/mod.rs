//! Max-plus tropical polynomials in two variables.

mod subdivision;

pub use subdivision::{regular_subdivision, BoundaryEdge, Cell, InteriorEdge, RegularSubdivision};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{rational_to_f64, LatticePoint, LatticePolygon, Rational, RationalPoint};
use crate::text::{parse_terms, Mode};

/// An element of `R ∪ {-∞}` with `⊕ = max` and `⊙ = +`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TropicalNumber {
    NegInf,
    Finite(Rational),
}

impl TropicalNumber {
    pub fn zero() -> Self {
        TropicalNumber::NegInf
    }

    pub fn one() -> Self {
        TropicalNumber::Finite(Rational::zero())
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            TropicalNumber::Finite(v) => Some(v),
            TropicalNumber::NegInf => None,
        }
    }
}

impl PartialOrd for TropicalNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropicalNumber::NegInf, TropicalNumber::NegInf) => Ordering::Equal,
            (TropicalNumber::NegInf, _) => Ordering::Less,
            (_, TropicalNumber::NegInf) => Ordering::Greater,
            (TropicalNumber::Finite(a), TropicalNumber::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for TropicalNumber {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.max(rhs)
    }
}

impl Mul for TropicalNumber {
    type Output = Self;

    // the tropical product is ordinary addition
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (TropicalNumber::Finite(a), TropicalNumber::Finite(b)) => TropicalNumber::Finite(a + b),
            _ => TropicalNumber::NegInf,
        }
    }
}

impl fmt::Display for TropicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalNumber::NegInf => write!(f, "-inf"),
            TropicalNumber::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A tropical polynomial `max_{(j,k)} (a_{jk} + j x + k y)` with finite support.
///
/// Terms with coefficient `-∞` are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    coeffs: BTreeMap<LatticePoint, Rational>,
}

/// Value and maximizing monomials of a tropical polynomial at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation<T> {
    pub value: T,
    pub argmax: Vec<LatticePoint>,
}

/// Comparison tolerance for floating point evaluation.
pub const FLOAT_TIE_TOLERANCE: f64 = 1e-9;

impl TropicalPolynomial {
    /// Builds a polynomial, combining duplicate monomials by `max`.
    pub fn from_terms<I: IntoIterator<Item = (LatticePoint, Rational)>>(terms: I) -> Result<Self> {
        let mut coeffs: BTreeMap<LatticePoint, Rational> = BTreeMap::new();
        for (p, a) in terms {
            coeffs
                .entry(p)
                .and_modify(|c| {
                    if a > *c {
                        *c = a
                    }
                })
                .or_insert(a);
        }
        if coeffs.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Self { coeffs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw = parse_terms(text, Mode::Tropical)?;
        Self::from_terms(raw.into_iter().map(|t| (t.exponent, t.coeff.map(|c| c.re).unwrap_or_else(Rational::zero))))
    }

    pub fn coefficient(&self, p: LatticePoint) -> TropicalNumber {
        self.coeffs.get(&p).map(|&a| TropicalNumber::Finite(a)).unwrap_or(TropicalNumber::NegInf)
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, Rational)> + '_ {
        self.coeffs.iter().map(|(p, a)| (*p, *a))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.coeffs.keys().copied().collect()
    }

    pub fn newton_polygon(&self) -> LatticePolygon {
        LatticePolygon::hull(self.coeffs.keys().copied()).expect("support is nonempty")
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: RationalPoint) -> Evaluation<Rational> {
        let vals: Vec<(LatticePoint, Rational)> = self
            .terms()
            .map(|(p, a)| {
                (p, a + Rational::from_integer(p.j as i128) * x.x + Rational::from_integer(p.k as i128) * x.y)
            })
            .collect();
        let value = vals.iter().map(|(_, v)| *v).max().expect("nonempty");
        let argmax = vals.iter().filter(|(_, v)| *v == value).map(|(p, _)| *p).collect();
        Evaluation { value, argmax }
    }

    /// Floating point evaluation; monomials within [`FLOAT_TIE_TOLERANCE`] of
    /// the maximum count as maximizing.
    pub fn eval(&self, x: [f64; 2]) -> Evaluation<f64> {
        let vals: Vec<(LatticePoint, f64)> =
            self.terms().map(|(p, a)| (p, rational_to_f64(a) + p.j as f64 * x[0] + p.k as f64 * x[1])).collect();
        let value = vals.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
        let scale = 1.0 + value.abs();
        let argmax = vals.iter().filter(|(_, v)| value - *v <= FLOAT_TIE_TOLERANCE * scale).map(|(p, _)| *p).collect();
        Evaluation { value, argmax }
    }
}

/// `trop_eval` on a floating point argument.
pub fn trop_eval(p: &TropicalPolynomial, x: [f64; 2]) -> Evaluation<f64> {
    p.eval(x)
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, a) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.is_integer() {
                write!(f, "{}", a.numer())?;
            } else {
                write!(f, "{}/{}", a.numer(), a.denom())?;
            }
            for (name, e) in [("x", p.j), ("y", p.k)] {
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

impl std::str::FromStr for TropicalPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
