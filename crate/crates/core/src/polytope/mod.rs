//! Lattice polytopes in the dual lattice, mixed volumes and the degree
//! functionals of monomial maps.

pub mod degrees;
pub mod hull;
pub mod recurrence;

pub use degrees::{degree_p, degree_sequence, homogenization_oracle, DegreeSequence};
pub use recurrence::{min_recurrence, LinearRecurrence};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::linalg::lattice::{self, ivec, IVec};
use crate::linalg::IntMatrix;

/// Convex hull of finitely many integer points, stored by its extreme points
/// in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    vertices: Vec<IVec>,
}

impl LatticePolytope {
    /// Hull of `points`; panics on an empty slice.
    pub fn new(points: &[IVec]) -> Self {
        assert!(!points.is_empty(), "a polytope needs at least one point");
        LatticePolytope {
            vertices: hull::extreme_points(points),
        }
    }

    pub fn from_i64(points: &[[i64; 3]]) -> Self {
        let pts: Vec<IVec> = points.iter().map(|p| ivec(p[0], p[1], p[2])).collect();
        Self::new(&pts)
    }

    pub fn point(p: IVec) -> Self {
        LatticePolytope { vertices: vec![p] }
    }

    /// `conv{0, e1, e2, e3}`, the polytope of the hyperplane class on P³.
    pub fn standard_simplex() -> Self {
        Self::from_i64(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn unit_cube() -> Self {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push([x, y, z]);
                }
            }
        }
        Self::from_i64(&pts)
    }

    /// Segment from the origin to `v`.
    pub fn segment(v: IVec) -> Self {
        Self::new(&[lattice::zero(), v])
    }

    pub fn vertices(&self) -> &[IVec] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        hull::affine_dim(&self.vertices).unwrap_or(0)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == 3
    }

    /// Outward primitive facet normals with offsets, `<n, x> <= h`.
    /// Empty unless the polytope is full-dimensional.
    pub fn facets(&self) -> Vec<(IVec, BigInt)> {
        hull::hull3(&self.vertices)
            .map(|h| h.facets())
            .unwrap_or_default()
    }

    pub fn volume(&self) -> BigRational {
        hull::hull_volume(&self.vertices)
    }

    /// Image under a linear map.
    pub fn transform(&self, m: &IntMatrix) -> Self {
        let pts: Vec<IVec> = self.vertices.iter().map(|v| m.apply(v)).collect();
        Self::new(&pts)
    }

    /// Image under the transpose of `a`, the action on the dual lattice.
    pub fn dual_transform(&self, a: &IntMatrix) -> Self {
        self.transform(&a.transpose())
    }

    pub fn dilate(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let pts: Vec<IVec> = self.vertices.iter().map(|v| lattice::scale(v, &k)).collect();
        Self::new(&pts)
    }

    pub fn translate(&self, t: &IVec) -> Self {
        LatticePolytope {
            vertices: self.vertices.iter().map(|v| lattice::add(v, t)).collect(),
        }
    }
}

pub fn volume(p: &LatticePolytope) -> BigRational {
    p.volume()
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(lattice::add(a, b));
        }
    }
    LatticePolytope::new(&sums)
}

/// Mixed volume normalized so that `mixed_volume(P, P, P) = volume(P)`.
pub fn mixed_volume(p1: &LatticePolytope, p2: &LatticePolytope, p3: &LatticePolytope) -> BigRational {
    let s12 = minkowski_sum(p1, p2);
    let s13 = minkowski_sum(p1, p3);
    let s23 = minkowski_sum(p2, p3);
    let s123 = minkowski_sum(&s12, p3);
    let alternating = s123.volume() - s12.volume() - s13.volume() - s23.volume()
        + p1.volume()
        + p2.volume()
        + p3.volume();
    alternating / BigRational::from_integer(BigInt::from(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::poly::{rat, ratio};

    #[test]
    fn volumes() {
        assert_eq!(LatticePolytope::standard_simplex().volume(), ratio(1, 6));
        assert_eq!(LatticePolytope::unit_cube().volume(), rat(1));
        let p = LatticePolytope::from_i64(&[[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 5]]);
        assert_eq!(p.volume(), rat(5));
    }

    #[test]
    fn sums() {
        let d = LatticePolytope::standard_simplex();
        assert_eq!(minkowski_sum(&d, &LatticePolytope::point(lattice::zero())), d);
        assert_eq!(minkowski_sum(&d, &d), d.dilate(2));
        let prism = minkowski_sum(&d, &LatticePolytope::segment(ivec(1, 0, 0)));
        // e1 is the midpoint of 0 and 2e1, so only six sums are extreme
        assert_eq!(prism.vertices().len(), 6);
        assert_eq!(prism.volume(), ratio(1, 6) + ratio(1, 2));
    }

    #[test]
    fn mixed_volumes() {
        let d = LatticePolytope::standard_simplex();
        let c = LatticePolytope::unit_cube();
        assert_eq!(mixed_volume(&d, &d, &d), ratio(1, 6));
        assert_eq!(mixed_volume(&c, &c, &c), rat(1));
        let sx = LatticePolytope::segment(ivec(1, 0, 0));
        let sy = LatticePolytope::segment(ivec(0, 1, 0));
        let sz = LatticePolytope::segment(ivec(0, 0, 1));
        assert_eq!(mixed_volume(&sx, &sy, &sz) * rat(6), rat(1));
        assert_eq!(mixed_volume(&sx, &sx, &sz), rat(0));
    }

    #[test]
    fn facet_description() {
        let f = LatticePolytope::standard_simplex().facets();
        assert_eq!(f.len(), 4);
        assert!(f.contains(&(ivec(1, 1, 1), BigInt::from(1))));
        assert!(LatticePolytope::segment(ivec(1, 2, 3)).facets().is_empty());
    }
}
