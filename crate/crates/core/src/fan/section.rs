//! Sections of a fan by a rational plane through the origin.

use num_bigint::BigInt;

use crate::error::Result;
use crate::linalg::lattice::{self, plane_coordinates, plane_lattice_basis, primitive, IVec};

use super::cone::Cone;
use super::structure::Fan;

/// A plane `{x : <normal, x> = 0}` with primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPlane {
    normal: IVec,
}

impl RationalPlane {
    /// `None` for the zero vector.
    pub fn new(normal: &IVec) -> Option<Self> {
        (!lattice::is_zero(normal)).then(|| RationalPlane {
            normal: primitive(normal),
        })
    }

    /// The plane spanned by two independent vectors.
    pub fn spanned_by(a: &IVec, b: &IVec) -> Option<Self> {
        Self::new(&lattice::cross(a, b))
    }

    pub fn normal(&self) -> &IVec {
        &self.normal
    }

    pub fn contains(&self, x: &IVec) -> bool {
        use num_traits::Zero;
        lattice::dot(&self.normal, x).is_zero()
    }

    /// A basis of the rank-2 lattice of integer points in the plane.
    pub fn lattice_basis(&self) -> [IVec; 2] {
        plane_lattice_basis(&self.normal)
    }
}

/// A complete 2-dimensional fan inside a plane, with rays given both in
/// ambient coordinates and in a lattice basis of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionFan {
    pub plane: RationalPlane,
    pub basis: [IVec; 2],
    pub rays: Vec<IVec>,
    pub rays_in_plane: Vec<[BigInt; 2]>,
    /// 2-dimensional cones as pairs of ray indices.
    pub cones: Vec<[usize; 2]>,
}

/// The fan `{sigma ∩ plane}` induced on a plane.
pub fn plane_section_fan(f: &Fan, plane: &RationalPlane) -> Result<SectionFan> {
    f.require_complete()?;
    let n = plane.normal();
    let mut pieces: Vec<Vec<IVec>> = Vec::new();
    for g in f.max_cone_geometry() {
        let mut hs = g.halfspaces();
        hs.push(n.clone());
        hs.push(lattice::neg(n));
        let piece = Cone::from_halfspaces(&hs)?;
        if piece.dim() == 2 {
            let rays = piece.rays_sorted();
            if !pieces.contains(&rays) {
                pieces.push(rays);
            }
        }
    }
    let mut rays: Vec<IVec> = pieces.iter().flatten().cloned().collect();
    rays.sort();
    rays.dedup();
    let basis = plane.lattice_basis();
    let rays_in_plane = rays
        .iter()
        .map(|r| {
            let [s, t] = plane_coordinates(&basis, r);
            [s.to_integer(), t.to_integer()]
        })
        .collect();
    let cones = pieces
        .iter()
        .map(|p| {
            let i = rays.binary_search(&p[0]).unwrap();
            let j = rays.binary_search(&p[1]).unwrap();
            [i, j]
        })
        .collect();
    Ok(SectionFan {
        plane: plane.clone(),
        basis,
        rays,
        rays_in_plane,
        cones,
    })
}

impl SectionFan {
    /// Every ray lies in exactly two cones, so the cones cover the plane.
    pub fn is_complete(&self) -> bool {
        (0..self.rays.len())
            .all(|i| self.cones.iter().filter(|c| c.contains(&i)).count() == 2)
            && self.cones.len() >= 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lattice::ivec;

    #[test]
    fn octant_section() {
        let plane = RationalPlane::new(&ivec(0, 0, 1)).unwrap();
        let s = plane_section_fan(&Fan::octants(), &plane).unwrap();
        assert_eq!(s.cones.len(), 4);
        assert_eq!(s.rays.len(), 4);
        assert!(s.is_complete());
    }

    #[test]
    fn projective_space_section() {
        let plane = RationalPlane::new(&ivec(0, 0, 1)).unwrap();
        let s = plane_section_fan(&Fan::projective_space(), &plane).unwrap();
        assert_eq!(s.rays, vec![ivec(-1, -1, 0), ivec(0, 1, 0), ivec(1, 0, 0)]);
        assert_eq!(s.cones.len(), 3);
        assert!(s.is_complete());
        // in the plane basis the rays are a basis pair and minus their sum
        let sum = s
            .rays_in_plane
            .iter()
            .fold([BigInt::from(0), BigInt::from(0)], |acc, r| [&acc[0] + &r[0], &acc[1] + &r[1]]);
        assert_eq!(sum, [BigInt::from(0), BigInt::from(0)]);
    }
}
