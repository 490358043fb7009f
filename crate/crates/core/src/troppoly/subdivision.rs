use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::TropicalPolynomial;
use crate::error::{Error, Result};
use crate::lattice::{orient, LatticePoint, LatticePolygon, LatticeVector, Rational, RationalPoint};

/// A maximal cell: the projection of one upper face of the lifted support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polygon: LatticePolygon,
    /// The point of the tropical plane where all monomials of the cell tie.
    pub dual_vertex: RationalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorEdge {
    /// Endpoints in lexicographic order.
    pub segment: [LatticePoint; 2],
    /// The two adjacent cells, ascending.
    pub cells: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEdge {
    /// Endpoints following the counterclockwise orientation of the Newton polygon.
    pub segment: [LatticePoint; 2],
    pub cell: usize,
}

impl BoundaryEdge {
    /// Primitive normal pointing out of the Newton polygon.
    pub fn outward_normal(&self) -> LatticeVector {
        let d = self.segment[0].to(self.segment[1]);
        let g = d.lattice_length();
        LatticeVector::new(d.dk / g, -d.dj / g)
    }
}

/// Subdivision of the Newton polygon induced by the upper hull of
/// `{(j, k, a_jk)}` (max-plus convention).
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    pub newton: LatticePolygon,
    pub heights: BTreeMap<LatticePoint, Rational>,
    /// Cells sorted by dual vertex, bottom to top then left to right.
    pub cells: Vec<Cell>,
    pub interior_edges: Vec<InteriorEdge>,
    pub boundary_edges: Vec<BoundaryEdge>,
}

impl RegularSubdivision {
    /// True iff every cell is a triangle of area 1/2.
    pub fn is_smooth(&self) -> bool {
        self.cells.iter().all(|c| c.polygon.vertices().len() == 3 && c.polygon.doubled_area() == 1)
    }

    /// Support points that are not a vertex of any cell (they lie strictly
    /// below the upper hull or in the relative interior of a face).
    pub fn unused_points(&self) -> Vec<LatticePoint> {
        self.heights.keys().filter(|p| !self.cells.iter().any(|c| c.polygon.vertices().contains(p))).copied().collect()
    }

    pub fn total_area(&self) -> Rational {
        self.cells.iter().map(|c| c.polygon.area()).sum()
    }

    /// The third vertex of a triangular cell, opposite to `segment`.
    pub fn opposite_vertex(&self, cell: usize, segment: [LatticePoint; 2]) -> Option<LatticePoint> {
        let v = self.cells[cell].polygon.vertices();
        if v.len() != 3 {
            return None;
        }
        v.iter().copied().find(|p| *p != segment[0] && *p != segment[1])
    }
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Plane `a = g0 j + g1 k + c` through three lifted points with
/// non-collinear projections.
fn plane(pts: [(LatticePoint, Rational); 3]) -> (Rational, Rational, Rational) {
    let [(p0, a0), (p1, a1), (p2, a2)] = pts;
    let (u, v) = (p0.to(p1), p0.to(p2));
    let (da1, da2) = (a1 - a0, a2 - a0);
    let d = r(u.dj * v.dk - u.dk * v.dj);
    let g0 = (da1 * r(v.dk) - da2 * r(u.dk)) / d;
    let g1 = (r(u.dj) * da2 - r(v.dj) * da1) / d;
    let c = a0 - g0 * r(p0.j) - g1 * r(p0.k);
    (g0, g1, c)
}

type Segment = (LatticePoint, LatticePoint);

pub fn regular_subdivision(p: &TropicalPolynomial) -> Result<RegularSubdivision> {
    let newton = p.newton_polygon();
    if newton.dimension() < 2 {
        return Err(Error::DegenerateNewtonPolygon(newton.dimension()));
    }
    let pts: Vec<(LatticePoint, Rational)> = p.terms().collect();
    let n = pts.len();

    let mut faces: HashMap<(Rational, Rational, Rational), Vec<LatticePoint>> = HashMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if orient(pts[i].0, pts[j].0, pts[k].0) == 0 {
                    continue;
                }
                let (g0, g1, c) = plane([pts[i], pts[j], pts[k]]);
                if faces.contains_key(&(g0, g1, c)) {
                    continue;
                }
                let mut on = Vec::new();
                let mut upper = true;
                for &(q, a) in &pts {
                    let h = g0 * r(q.j) + g1 * r(q.k) + c;
                    if a > h {
                        upper = false;
                        break;
                    }
                    if a == h {
                        on.push(q);
                    }
                }
                if upper {
                    faces.insert((g0, g1, c), on);
                }
            }
        }
    }

    let mut cells: Vec<Cell> = faces
        .into_iter()
        .map(|((g0, g1, _), on)| Cell {
            polygon: LatticePolygon::hull(on).expect("face is nonempty"),
            dual_vertex: RationalPoint::new(-g0, -g1),
        })
        .collect();
    cells.sort_by_key(|c| (c.dual_vertex.y, c.dual_vertex.x));

    // unordered segment -> cells containing it, with the segment as oriented there
    let mut edge_cells: BTreeMap<Segment, Vec<(usize, [LatticePoint; 2])>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for (a, b) in cell.polygon.edges() {
            let key = if a < b { (a, b) } else { (b, a) };
            edge_cells.entry(key).or_default().push((ci, [a, b]));
        }
    }
    let mut interior_edges = Vec::new();
    let mut boundary_edges = Vec::new();
    for ((a, b), adj) in edge_cells {
        match adj.as_slice() {
            [(c, seg)] => boundary_edges.push(BoundaryEdge { segment: *seg, cell: *c }),
            [(c1, _), (c2, _)] => {
                interior_edges.push(InteriorEdge { segment: [a, b], cells: [(*c1).min(*c2), (*c1).max(*c2)] })
            }
            _ => unreachable!("an edge of a polyhedral subdivision bounds at most two cells"),
        }
    }

    let sub = RegularSubdivision { newton, heights: pts.into_iter().collect(), cells, interior_edges, boundary_edges };
    debug_assert_eq!(sub.total_area() - sub.newton.area(), Rational::zero());
    Ok(sub)
}
