//! Exact lattice geometry in the plane: primitive vectors, convex hulls,
//! areas and lattice point counts.
//!
//! Everything here is integer or rational arithmetic. Subdivision and curve
//! construction are built on top of these primitives and must not depend on
//! floating point tolerances.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the combinatorial modules.
pub type Rational = Ratio<i128>;

/// An exponent pair `(j, k)` of the monomial `z^j w^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub j: i64,
    pub k: i64,
}

impl LatticePoint {
    pub const fn new(j: i64, k: i64) -> Self {
        Self { j, k }
    }

    /// Coordinates reduced mod 2, each in `{0, 1}`.
    pub fn parity(self) -> (u8, u8) {
        (self.j.rem_euclid(2) as u8, self.k.rem_euclid(2) as u8)
    }

    pub fn to(self, other: LatticePoint) -> LatticeVector {
        LatticeVector::new(other.j - self.j, other.k - self.k)
    }

    pub fn offset(self, v: LatticeVector) -> LatticePoint {
        LatticePoint::new(self.j + v.dj, self.k + v.dk)
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from(v: [i64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.j, p.k]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.k)
    }
}

/// A displacement between lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticeVector {
    pub dj: i64,
    pub dk: i64,
}

impl LatticeVector {
    pub const fn new(dj: i64, dk: i64) -> Self {
        Self { dj, dk }
    }

    pub fn is_zero(self) -> bool {
        self.dj == 0 && self.dk == 0
    }

    /// Number of lattice steps along the vector: `gcd(|dj|, |dk|)`.
    pub fn lattice_length(self) -> i64 {
        self.dj.gcd(&self.dk)
    }

    /// Components reduced mod 2.
    pub fn mod2(self) -> (u8, u8) {
        (self.dj.rem_euclid(2) as u8, self.dk.rem_euclid(2) as u8)
    }

    /// Rotation by a quarter turn counterclockwise.
    pub fn perp(self) -> Self {
        Self::new(-self.dk, self.dj)
    }
}

impl From<[i64; 2]> for LatticeVector {
    fn from(v: [i64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<LatticeVector> for [i64; 2] {
    fn from(v: LatticeVector) -> Self {
        [v.dj, v.dk]
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.dj, -self.dk)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dj, self.dk)
    }
}

/// A point of the tropical plane with exact rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(Rational::from_integer(x as i128), Rational::from_integer(y as i128))
    }

    pub fn to_f64(self) -> [f64; 2] {
        [rational_to_f64(self.x), rational_to_f64(self.y)]
    }

    pub fn midpoint(self, other: Self) -> Self {
        let two = Rational::from_integer(2);
        Self::new((self.x + other.x) / two, (self.y + other.y) / two)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn rational_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_to_string(q: Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `"-0.25"` or
/// `"1.5e-3"`, exactly.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || (int.trim_start_matches(['-', '+']).is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits: i128 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let pow = |e: u32| 10i128.checked_pow(e).ok_or_else(bad);
    Ok(if scale >= 0 {
        Rational::from_integer(digits.checked_mul(pow(scale as u32)?).ok_or_else(bad)?)
    } else {
        Rational::new(digits, pow((-scale) as u32)?)
    })
}

/// `det(a, b) = a.dj * b.dk - a.dk * b.dj`.
pub fn det(a: LatticeVector, b: LatticeVector) -> i64 {
    a.dj * b.dk - a.dk * b.dj
}

/// Signed doubled area of the triangle `(a, b, c)`; positive when counterclockwise.
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    det(a.to(b), a.to(c))
}

/// The primitive lattice vector with the same direction as `v`.
pub fn primitive_vector(v: LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::NoPrimitiveDirection);
    }
    let g = v.lattice_length();
    Ok(LatticeVector::new(v.dj / g, v.dk / g))
}

/// A convex lattice polygon given by its vertices in counterclockwise order.
///
/// Degenerate hulls are representable: a single point, or a segment stored
/// as its two endpoints. [`LatticePolygon::dimension`] distinguishes them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Convex hull of a nonempty point set (Andrew's monotone chain, collinear
    /// points dropped).
    pub fn hull<I: IntoIterator<Item = LatticePoint>>(points: I) -> Result<Self> {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::EmptySupport);
        }
        if pts.len() <= 2 {
            return Ok(Self { vertices: pts });
        }
        let mut lower: Vec<LatticePoint> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && lower[0] == lower[1] {
            lower.pop();
        }
        Ok(Self { vertices: lower })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// 0 for a point, 1 for a segment, 2 for a proper polygon.
    pub fn dimension(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Boundary edges as `(start, end)` pairs following the counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        let count = if n >= 3 { n } else { 0 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Twice the Euclidean area (an integer).
    pub fn doubled_area(&self) -> i64 {
        if self.dimension() < 2 {
            return 0;
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                a.j * b.k - a.k * b.j
            })
            .sum()
    }

    pub fn area(&self) -> Rational {
        Rational::new(self.doubled_area() as i128, 2)
    }

    pub fn boundary_count(&self) -> i64 {
        match self.dimension() {
            0 => 1,
            1 => self.vertices[0].to(self.vertices[1]).lattice_length() + 1,
            _ => self.edges().map(|(a, b)| a.to(b).lattice_length()).sum(),
        }
    }

    pub fn interior_count(&self) -> i64 {
        if self.dimension() < 2 {
            return 0;
        }
        // Pick: 2A = 2I + B - 2
        (self.doubled_area() - self.boundary_count() + 2) / 2
    }

    /// Whether `p` lies in the closed polygon.
    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.dimension() {
            0 => self.vertices[0] == p,
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                orient(a, b, p) == 0
                    && p.j >= a.j.min(b.j)
                    && p.j <= a.j.max(b.j)
                    && p.k >= a.k.min(b.k)
                    && p.k <= a.k.max(b.k)
            }
            _ => self.edges().all(|(a, b)| orient(a, b, p) >= 0),
        }
    }

    /// Whether `p` lies on the boundary of a 2-dimensional polygon.
    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.edges().any(|(a, b)| {
            orient(a, b, p) == 0
                && p.j >= a.j.min(b.j)
                && p.j <= a.j.max(b.j)
                && p.k >= a.k.min(b.k)
                && p.k <= a.k.max(b.k)
        })
    }

    /// All lattice points of the closed polygon, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let jmin = self.vertices.iter().map(|p| p.j).min().unwrap_or(0);
        let jmax = self.vertices.iter().map(|p| p.j).max().unwrap_or(-1);
        let kmin = self.vertices.iter().map(|p| p.k).min().unwrap_or(0);
        let kmax = self.vertices.iter().map(|p| p.k).max().unwrap_or(-1);
        let mut out = Vec::new();
        for j in jmin..=jmax {
            for k in kmin..=kmax {
                let p = LatticePoint::new(j, k);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Hull, area and lattice point counts of a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonStats {
    pub hull: LatticePolygon,
    pub area: Rational,
    pub boundary_count: i64,
    pub interior_count: i64,
}

pub fn polygon_stats<I: IntoIterator<Item = LatticePoint>>(points: I) -> Result<PolygonStats> {
    let hull = LatticePolygon::hull(points)?;
    Ok(PolygonStats {
        area: hull.area(),
        boundary_count: hull.boundary_count(),
        interior_count: hull.interior_count(),
        hull,
    })
}

/// The standard simplex `conv{(0,0), (d,0), (0,d)}`.
pub fn simplex(d: i64) -> LatticePolygon {
    LatticePolygon::hull([LatticePoint::new(0, 0), LatticePoint::new(d, 0), LatticePoint::new(0, d)]).expect("nonempty")
}
