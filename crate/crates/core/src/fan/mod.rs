//! Rational polyhedral cones and fans in a rank-3 lattice.

pub mod cone;
pub mod refine;
pub mod section;
pub mod structure;

pub use cone::{Cone, Location};
pub use refine::{
    common_refinement, hyperplane_fan, orbit_intersection_fan, simplicialize_preserving_rays,
    split_by_planes, star_subdivide,
};
pub use section::{plane_section_fan, RationalPlane, SectionFan};
pub use structure::{Fan, FaceId, FanPredicates};

use crate::error::Result;
use crate::linalg::IVec;

pub fn cone_new(generators: &[IVec]) -> Result<Cone> {
    Cone::new(generators)
}

pub fn cone_intersect(c1: &Cone, c2: &Cone) -> Cone {
    c1.intersect(c2)
}

pub fn fan_new(rays: Vec<IVec>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
    Fan::new(rays, max_cones)
}

pub fn fan_predicates(f: &Fan) -> FanPredicates {
    f.predicates()
}
