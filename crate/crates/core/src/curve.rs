//! Embedded plane tropical curves dual to regular subdivisions.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    det, primitive_vector, rational_from_str, rational_to_string, LatticePoint, LatticeVector, Rational, RationalPoint,
};
use crate::troppoly::{regular_subdivision, RegularSubdivision, TropicalPolynomial};

/// A bounded edge of a tropical curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Vertex indices, lower index first.
    pub endpoints: [usize; 2],
    /// Primitive direction from `endpoints[0]` towards `endpoints[1]`.
    pub u: LatticeVector,
    pub weight: i64,
    /// `[v1, v2]`, the dual segment in lexicographic order.
    pub dual_segment: [LatticePoint; 2],
    /// `[v3, v4]`: the third vertices of the cells dual to `endpoints[0]`
    /// and `endpoints[1]`. Present only when both cells are triangles.
    pub opposite_vertices: Option<[LatticePoint; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub vertex: usize,
    pub direction: LatticeVector,
    pub weight: i64,
    pub dual_segment: [LatticePoint; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    pub vertices: Vec<RationalPoint>,
    pub edges: Vec<Edge>,
    pub rays: Vec<Ray>,
}

/// A vertex whose weighted outgoing directions do not sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingViolation {
    pub vertex: usize,
    pub sum: LatticeVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParabolicPoint {
    pub midpoint: RationalPoint,
    pub edge: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParabolicLocus {
    pub points: Vec<ParabolicPoint>,
}

/// A bounded edge traversed along (`forward`) or against its direction `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

pub type Cycle = Vec<OrientedEdge>;

fn edge_direction(from: RationalPoint, to: RationalPoint, segment: [LatticePoint; 2]) -> LatticeVector {
    let perp = primitive_vector(segment[0].to(segment[1])).expect("segment endpoints are distinct").perp();
    let dot = (to.x - from.x) * Rational::from_integer(perp.dj as i128)
        + (to.y - from.y) * Rational::from_integer(perp.dk as i128);
    if dot.is_positive() {
        perp
    } else {
        -perp
    }
}

impl TropicalCurve {
    pub fn from_subdivision(sub: &RegularSubdivision) -> Self {
        let vertices: Vec<RationalPoint> = sub.cells.iter().map(|c| c.dual_vertex).collect();
        let edges = sub
            .interior_edges
            .iter()
            .map(|e| {
                let [a, b] = e.cells;
                let opposite =
                    sub.opposite_vertex(a, e.segment).zip(sub.opposite_vertex(b, e.segment)).map(|(v3, v4)| [v3, v4]);
                Edge {
                    endpoints: [a, b],
                    u: edge_direction(vertices[a], vertices[b], e.segment),
                    weight: e.segment[0].to(e.segment[1]).lattice_length(),
                    dual_segment: e.segment,
                    opposite_vertices: opposite,
                }
            })
            .collect();
        let rays = sub
            .boundary_edges
            .iter()
            .map(|b| Ray {
                vertex: b.cell,
                direction: b.outward_normal(),
                weight: b.segment[0].to(b.segment[1]).lattice_length(),
                dual_segment: b.segment,
            })
            .collect();
        Self { vertices, edges, rays }
    }

    /// Weighted outgoing directions at vertex `v`.
    pub fn star(&self, v: usize) -> Vec<(LatticeVector, i64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.endpoints[0] == v {
                out.push((e.u, e.weight));
            }
            if e.endpoints[1] == v {
                out.push((-e.u, e.weight));
            }
        }
        for r in self.rays.iter().filter(|r| r.vertex == v) {
            out.push((r.direction, r.weight));
        }
        out
    }

    /// Trivalent, all weights one, and every vertex star spans a unimodular cone.
    pub fn is_smooth(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            let s = self.star(v);
            s.len() == 3 && s.iter().all(|&(_, w)| w == 1) && det(s[0].0, s[1].0).abs() == 1
        })
    }

    /// All lattice points appearing in dual segments or as opposite vertices.
    pub fn dual_points(&self) -> BTreeSet<LatticePoint> {
        let mut pts = BTreeSet::new();
        for e in &self.edges {
            pts.extend(e.dual_segment);
            if let Some(o) = e.opposite_vertices {
                pts.extend(o);
            }
        }
        for r in &self.rays {
            pts.extend(r.dual_segment);
        }
        pts
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges[e].endpoints;
        let (p, q) = (self.vertices[a].to_f64(), self.vertices[b].to_f64());
        (q[0] - p[0]).hypot(q[1] - p[1])
    }

    /// First Betti number of the graph of bounded edges.
    pub fn betti_number(&self) -> usize {
        let components = self.components();
        self.edges.len() + components - self.vertices.len()
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut count = self.vertices.len();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.endpoints[0]), find(&mut parent, e.endpoints[1]));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn to_json(&self) -> Result<String> {
        let locus = parabolic_locus(self).ok();
        Ok(serde_json::to_string_pretty(&CurveDoc::new(self, locus.as_ref()))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<CurveDoc>(text)?.into_curve()
    }
}

pub fn dual_curve(p: &TropicalPolynomial) -> Result<TropicalCurve> {
    Ok(TropicalCurve::from_subdivision(&regular_subdivision(p)?))
}

pub fn check_balancing(c: &TropicalCurve) -> Vec<BalancingViolation> {
    (0..c.vertices.len())
        .filter_map(|v| {
            let sum = c
                .star(v)
                .into_iter()
                .fold(LatticeVector::new(0, 0), |acc, (u, w)| LatticeVector::new(acc.dj + w * u.dj, acc.dk + w * u.dk));
            (!sum.is_zero()).then_some(BalancingViolation { vertex: v, sum })
        })
        .collect()
}

pub fn parabolic_locus(c: &TropicalCurve) -> Result<ParabolicLocus> {
    if !c.is_smooth() {
        return Err(Error::NonSmooth("the parabolic locus is only defined for smooth curves".into()));
    }
    let points = c
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| ParabolicPoint {
            midpoint: c.vertices[e.endpoints[0]].midpoint(c.vertices[e.endpoints[1]]),
            edge: i,
        })
        .collect();
    Ok(ParabolicLocus { points })
}

/// Fundamental cycles of a BFS spanning forest of the bounded-edge graph.
///
/// Each cycle starts with its non-tree edge traversed forward and returns
/// through the tree.
pub fn cycle_basis(c: &TropicalCurve) -> Vec<Cycle> {
    let n = c.vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in c.edges.iter().enumerate() {
        adj[e.endpoints[0]].push((e.endpoints[1], i));
        adj[e.endpoints[1]].push((e.endpoints[0], i));
    }
    // parent[v] = (parent vertex, edge index)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; c.edges.len()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let step = |from: usize, e: usize| OrientedEdge { edge: e, forward: c.edges[e].endpoints[0] == from };
    let mut cycles = Vec::new();
    for (i, e) in c.edges.iter().enumerate() {
        if tree[i] {
            continue;
        }
        let [a, b] = e.endpoints;
        let mut cycle = vec![OrientedEdge { edge: i, forward: true }];
        // walk from b and from a up to their common ancestor
        let (mut x, mut y) = (b, a);
        let mut tail = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                let (p, pe) = parent[x].expect("non-root");
                cycle.push(step(x, pe));
                x = p;
            } else {
                let (p, pe) = parent[y].expect("non-root");
                tail.push(step(p, pe));
                y = p;
            }
        }
        cycle.extend(tail.into_iter().rev());
        cycles.push(cycle);
    }
    cycles
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    endpoints: [usize; 2],
    u: LatticeVector,
    weight: i64,
    dual_segment: [LatticePoint; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    opposite_vertices: Option<[LatticePoint; 2]>,
}

#[derive(Serialize, Deserialize)]
struct RayDoc {
    vertex: usize,
    direction: LatticeVector,
    weight: i64,
    dual_segment: [LatticePoint; 2],
}

#[derive(Serialize, Deserialize)]
struct ParabolicDoc {
    midpoint: [String; 2],
    edge: usize,
}

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    vertices: Vec<[String; 2]>,
    edges: Vec<EdgeDoc>,
    rays: Vec<RayDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parabolic_points: Option<Vec<ParabolicDoc>>,
}

fn point_doc(p: RationalPoint) -> [String; 2] {
    [rational_to_string(p.x), rational_to_string(p.y)]
}

impl CurveDoc {
    fn new(c: &TropicalCurve, locus: Option<&ParabolicLocus>) -> Self {
        Self {
            vertices: c.vertices.iter().map(|&v| point_doc(v)).collect(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    endpoints: e.endpoints,
                    u: e.u,
                    weight: e.weight,
                    dual_segment: e.dual_segment,
                    opposite_vertices: e.opposite_vertices,
                })
                .collect(),
            rays: c
                .rays
                .iter()
                .map(|r| RayDoc {
                    vertex: r.vertex,
                    direction: r.direction,
                    weight: r.weight,
                    dual_segment: r.dual_segment,
                })
                .collect(),
            parabolic_points: locus.map(|l| {
                l.points.iter().map(|p| ParabolicDoc { midpoint: point_doc(p.midpoint), edge: p.edge }).collect()
            }),
        }
    }

    fn into_curve(self) -> Result<TropicalCurve> {
        let vertices = self
            .vertices
            .iter()
            .map(|[x, y]| Ok(RationalPoint::new(rational_from_str(x)?, rational_from_str(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let n = vertices.len();
        let check = |v: usize| {
            if v < n {
                Ok(v)
            } else {
                Err(Error::InvalidArgument(format!("vertex index {v} out of range")))
            }
        };
        let mut edges = Vec::new();
        for e in self.edges {
            check(e.endpoints[0])?;
            check(e.endpoints[1])?;
            edges.push(Edge {
                endpoints: e.endpoints,
                u: e.u,
                weight: e.weight,
                dual_segment: e.dual_segment,
                opposite_vertices: e.opposite_vertices,
            });
        }
        let mut rays = Vec::new();
        for r in self.rays {
            rays.push(Ray {
                vertex: check(r.vertex)?,
                direction: r.direction,
                weight: r.weight,
                dual_segment: r.dual_segment,
            });
        }
        Ok(TropicalCurve { vertices, edges, rays })
    }
}

impl ParabolicLocus {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

/// Checks that a midpoint lies on its edge, at equal distance from both ends.
pub fn midpoint_is_centered(c: &TropicalCurve, p: &ParabolicPoint) -> bool {
    let e = &c.edges[p.edge];
    let (a, b) = (c.vertices[e.endpoints[0]], c.vertices[e.endpoints[1]]);
    let on_span = (b.x - a.x) * (p.midpoint.y - a.y) - (b.y - a.y) * (p.midpoint.x - a.x);
    let d2 = |q: RationalPoint, r: RationalPoint| (q.x - r.x) * (q.x - r.x) + (q.y - r.y) * (q.y - r.y);
    on_span.is_zero() && d2(p.midpoint, a) == d2(p.midpoint, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::simplex;
    use proptest::prelude::*;

    fn lp(j: i64, k: i64) -> LatticePoint {
        LatticePoint::new(j, k)
    }

    fn v(dj: i64, dk: i64) -> LatticeVector {
        LatticeVector::new(dj, dk)
    }

    fn lifted(d: i64, f: impl Fn(i64, i64) -> Rational) -> TropicalPolynomial {
        TropicalPolynomial::from_terms(simplex(d).lattice_points().into_iter().map(|p| (p, f(p.j, p.k)))).unwrap()
    }

    fn honeycomb(d: i64) -> TropicalCurve {
        dual_curve(&lifted(d, |j, k| Rational::from_integer(-(j * j + j * k + k * k) as i128))).unwrap()
    }

    fn star_curve(dirs: &[(i64, i64)]) -> TropicalCurve {
        TropicalCurve {
            vertices: vec![RationalPoint::from_ints(0, 0)],
            edges: vec![],
            rays: dirs
                .iter()
                .map(|&(a, b)| Ray { vertex: 0, direction: v(a, b), weight: 1, dual_segment: [lp(0, 0), lp(0, 1)] })
                .collect(),
        }
    }

    #[test]
    fn tropical_line() {
        let c = dual_curve(&TropicalPolynomial::parse("0+0x+0y").unwrap()).unwrap();
        assert_eq!(c.vertices, vec![RationalPoint::from_ints(0, 0)]);
        assert!(c.edges.is_empty());
        let mut dirs: Vec<LatticeVector> = c.rays.iter().map(|r| r.direction).collect();
        dirs.sort();
        assert_eq!(dirs, vec![v(-1, 0), v(0, -1), v(1, 1)]);
        assert!(parabolic_locus(&c).unwrap().is_empty());
        assert!(cycle_basis(&c).is_empty());
        assert!(c.is_smooth());
    }

    #[test]
    fn square_curve() {
        let c = dual_curve(&TropicalPolynomial::parse("0+0x+0y+1xy").unwrap()).unwrap();
        assert_eq!(c.vertices, vec![RationalPoint::from_ints(0, -1), RationalPoint::from_ints(-1, 0)]);
        assert_eq!(c.edges.len(), 1);
        let e = &c.edges[0];
        assert_eq!(e.u, v(-1, 1));
        assert_eq!(e.weight, 1);
        assert_eq!(e.dual_segment, [lp(0, 0), lp(1, 1)]);
        assert_eq!(e.opposite_vertices, Some([lp(1, 0), lp(0, 1)]));
        let half = Rational::new(-1, 2);
        assert_eq!(parabolic_locus(&c).unwrap().points[0].midpoint, RationalPoint::new(half, half));
        assert!(cycle_basis(&c).is_empty());
        assert!(check_balancing(&c).is_empty());
    }

    #[test]
    fn square_vertices_match_tropical_evaluation() {
        let p = TropicalPolynomial::parse("0+0x+0y+1xy").unwrap();
        let c = dual_curve(&p).unwrap();
        for x in &c.vertices {
            assert_eq!(p.eval_exact(*x).argmax.len(), 3);
        }
    }

    #[test]
    fn honeycomb_conic() {
        let c = honeycomb(2);
        assert_eq!(c.vertices.len(), 4);
        assert_eq!(c.edges.len(), 3);
        assert_eq!(c.rays.len(), 6);
        assert_eq!(parabolic_locus(&c).unwrap().len(), 3);
    }

    #[test]
    fn separable_conic_lifting_is_not_smooth() {
        let c = dual_curve(&lifted(2, |j, k| Rational::from_integer(-(j * j + k * k) as i128))).unwrap();
        assert_eq!(c.vertices.len(), 3);
        assert_eq!(c.edges.len(), 2);
        assert!(check_balancing(&c).is_empty());
        assert!(!c.is_smooth());
        assert!(matches!(parabolic_locus(&c), Err(Error::NonSmooth(_))));
    }

    #[test]
    fn cubic_has_one_cycle() {
        let c = honeycomb(3);
        assert!(c.is_smooth());
        assert_eq!(c.edges.len(), 9);
        let basis = cycle_basis(&c);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].len(), 6);
    }

    #[test]
    fn balancing_examples() {
        assert!(check_balancing(&star_curve(&[(-1, 0), (0, -1), (1, 1)])).is_empty());
        assert_eq!(
            check_balancing(&star_curve(&[(1, 0), (0, 1), (-1, -2)])),
            vec![BalancingViolation { vertex: 0, sum: v(0, -1) }]
        );
        assert!(check_balancing(&star_curve(&[(1, 0), (-1, 0), (0, 1), (0, -1)])).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let c = honeycomb(3);
        let text = c.to_json().unwrap();
        assert!(text.contains("parabolic_points"));
        assert_eq!(TropicalCurve::from_json(&text).unwrap(), c);
    }

    fn cycle_closes(c: &TropicalCurve, cycle: &Cycle) -> bool {
        let mut at = {
            let e = &c.edges[cycle[0].edge];
            if cycle[0].forward {
                e.endpoints[0]
            } else {
                e.endpoints[1]
            }
        };
        let start = at;
        for s in cycle {
            let [a, b] = c.edges[s.edge].endpoints;
            let (from, to) = if s.forward { (a, b) } else { (b, a) };
            if from != at {
                return false;
            }
            at = to;
        }
        at == start
    }

    /// Positive definite quadratic form plus rational noise.
    fn random_lifting(d: i64, form: (i64, i64, i64), noise: &[i64]) -> TropicalPolynomial {
        let (a, b, c) = form;
        lifted(d, |j, k| {
            let i = ((j * 7 + k * 3) as usize) % noise.len();
            Rational::from_integer(-(a * j * j + b * j * k + c * k * k) as i128) + Rational::new(noise[i] as i128, 101)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn dual_curves_are_balanced(
            d in 1i64..=4,
            form in (2i64..=5, -2i64..=2, 2i64..=5),
            noise in prop::collection::vec(-40i64..=40, 15),
        ) {
            let p = random_lifting(d, form, &noise);
            let sub = regular_subdivision(&p).unwrap();
            let c = TropicalCurve::from_subdivision(&sub);
            prop_assert!(check_balancing(&c).is_empty());
            prop_assert_eq!(c.is_smooth(), sub.is_smooth());
            let delta = simplex(d);
            if c.is_smooth() {
                let expected = Rational::from_integer(3) * delta.area() - Rational::new(delta.boundary_count() as i128, 2);
                prop_assert_eq!(Rational::from_integer(c.edges.len() as i128), expected);
                let basis = cycle_basis(&c);
                prop_assert_eq!(basis.len() as i64, delta.interior_count());
                prop_assert_eq!(basis.len(), c.betti_number());
                for cyc in &basis {
                    prop_assert!(cycle_closes(&c, cyc));
                }
                let locus = parabolic_locus(&c).unwrap();
                prop_assert_eq!(locus.len(), c.edges.len());
                for pt in &locus.points {
                    prop_assert!(midpoint_is_centered(&c, pt));
                }
            }
        }
    }
}
