//! Finite fans of strictly convex cones in `R^3`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::lattice::{self, format_ivec, ivec, primitive, Direction, IVec};
use crate::linalg::IntMatrix;

use super::cone::{side_of, Cone};

/// A validated fan. Rays are primitive and distinct; maximal cones are
/// stored as sorted lists of ray indices together with their geometry, and
/// every face of every maximal cone is indexed.
#[derive(Clone)]
pub struct Fan {
    rays: Vec<IVec>,
    max_cones: Vec<Vec<usize>>,
    max_geometry: Vec<Cone>,
    faces: Vec<Vec<usize>>,
    face_geometry: Vec<Cone>,
    face_index: HashMap<Vec<usize>, usize>,
    /// Set when the fan was built from a hyperplane arrangement (and refined
    /// without removing any of its planes); recorded, not verified.
    projective_by_construction: bool,
}

/// Identifier of a face of a fan (index into [`Fan::faces`]).
pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanPredicates {
    pub complete: bool,
    pub simplicial: bool,
    pub regular: bool,
}

impl Fan {
    /// Validates the fan axioms: each listed cone is strictly convex with
    /// exactly the listed rays as extreme rays, every ray is used, and any two
    /// cones meet in a common face.
    pub fn new(rays: Vec<IVec>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(rays, max_cones, true)
    }

    /// Builds a fan from cones given by their ray vectors, validating axioms.
    pub fn from_cones(cones: &[Vec<IVec>]) -> Result<Self> {
        let (rays, idx) = index_rays(cones);
        Self::build(rays, idx, true)
    }

    /// As [`Fan::from_cones`] but trusts the caller on the pairwise face axiom.
    pub(crate) fn from_cones_trusted(cones: &[Vec<IVec>]) -> Result<Self> {
        let (rays, idx) = index_rays(cones);
        Self::build(rays, idx, false)
    }

    fn build(rays: Vec<IVec>, max_cones: Vec<Vec<usize>>, check_pairs: bool) -> Result<Self> {
        for r in &rays {
            if lattice::is_zero(r) || !lattice::is_primitive(r) {
                return Err(Error::bad_fan(format!(
                    "ray {} is not a primitive nonzero vector",
                    format_ivec(r)
                )));
            }
        }
        let distinct: BTreeSet<&IVec> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(Error::bad_fan("rays are not pairwise distinct"));
        }
        let mut cones: Vec<Vec<usize>> = Vec::new();
        let mut geometry: Vec<Cone> = Vec::new();
        for mc in max_cones {
            let mut mc = mc;
            mc.sort();
            mc.dedup();
            if let Some(&bad) = mc.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::bad_fan(format!("ray index {} out of range", bad)));
            }
            if mc.is_empty() {
                continue;
            }
            let gens: Vec<IVec> = mc.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::new(&gens)?;
            if cone.rays().len() != gens.len() {
                return Err(Error::BadFan {
                    reason: "a listed ray is not an extreme ray of its cone".into(),
                    witness: Some((mc.clone(), mc)),
                });
            }
            if cones.contains(&mc) {
                continue;
            }
            cones.push(mc);
            geometry.push(cone);
        }
        let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
        if used.len() != rays.len() {
            return Err(Error::bad_fan("some ray is not used by any cone"));
        }

        let mut keep = vec![true; cones.len()];
        if check_pairs {
            for i in 0..cones.len() {
                for j in i + 1..cones.len() {
                    let (a, b) = (&geometry[i], &geometry[j]);
                    let inter = a.intersect(b);
                    if !inter.is_face_of(a) || !inter.is_face_of(b) {
                        return Err(Error::BadFan {
                            reason: "two cones meet in a set that is not a common face".into(),
                            witness: Some((cones[i].clone(), cones[j].clone())),
                        });
                    }
                    if inter.dim() == a.dim() {
                        keep[i] = false;
                    } else if inter.dim() == b.dim() {
                        keep[j] = false;
                    }
                }
            }
        }
        let mut max_cones = Vec::new();
        let mut max_geometry = Vec::new();
        for ((c, g), k) in cones.into_iter().zip(geometry).zip(keep) {
            if k {
                max_cones.push(c);
                max_geometry.push(g);
            }
        }

        let ray_index: HashMap<&IVec, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        let mut face_geometry: Vec<Cone> = Vec::new();
        let mut face_index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut push_face = |ids: Vec<usize>, cone: Cone| {
            if !face_index.contains_key(&ids) {
                face_index.insert(ids.clone(), faces.len());
                faces.push(ids);
                face_geometry.push(cone);
            }
        };
        push_face(Vec::new(), Cone::zero());
        for (mc, g) in max_cones.iter().zip(&max_geometry) {
            push_face(mc.clone(), g.clone());
            for facet in g.facets() {
                let mut ids: Vec<usize> = facet.iter().map(|r| ray_index[r]).collect();
                ids.sort();
                let cone = Cone::new(&facet)?;
                if g.dim() == 3 {
                    for r in &facet {
                        push_face(vec![ray_index[r]], Cone::ray(r));
                    }
                }
                push_face(ids, cone);
            }
            if g.dim() == 2 {
                for r in g.rays() {
                    push_face(vec![ray_index[r]], Cone::ray(r));
                }
            }
        }

        Ok(Fan {
            rays,
            max_cones,
            max_geometry,
            faces,
            face_geometry,
            face_index,
            projective_by_construction: false,
        })
    }

    /// The fan of `P^3`: rays `e1, e2, e3, -(e1 + e2 + e3)`.
    pub fn projective_space() -> Self {
        let rays = vec![ivec(1, 0, 0), ivec(0, 1, 0), ivec(0, 0, 1), ivec(-1, -1, -1)];
        let cones = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        let mut f = Fan::new(rays, cones).expect("the fan of P^3 is valid");
        f.projective_by_construction = true;
        f
    }

    /// The fan of `(P^1)^3`, whose maximal cones are the eight coordinate octants.
    pub fn octants() -> Self {
        let mut rays = Vec::new();
        for i in 0..3 {
            rays.push(lattice::unit(i));
            rays.push(lattice::neg(&lattice::unit(i)));
        }
        let mut cones = Vec::new();
        for sx in 0..2 {
            for sy in 0..2 {
                for sz in 0..2 {
                    cones.push(vec![sx, 2 + sy, 4 + sz]);
                }
            }
        }
        let mut f = Fan::new(rays, cones).expect("the octant fan is valid");
        f.projective_by_construction = true;
        f
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn max_cone_geometry(&self) -> &[Cone] {
        &self.max_geometry
    }

    pub fn max_cone_rays(&self, i: usize) -> Vec<IVec> {
        self.max_cones[i].iter().map(|&j| self.rays[j].clone()).collect()
    }

    pub fn all_max_cone_rays(&self) -> Vec<Vec<IVec>> {
        (0..self.max_cones.len()).map(|i| self.max_cone_rays(i)).collect()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Cone {
        &self.face_geometry[id]
    }

    pub fn face_id(&self, ray_ids: &[usize]) -> Option<FaceId> {
        let mut key = ray_ids.to_vec();
        key.sort();
        self.face_index.get(&key).copied()
    }

    pub fn face_id_of_rays(&self, rays: &[IVec]) -> Option<FaceId> {
        let ids: Option<Vec<usize>> = rays.iter().map(|r| self.ray_index(r)).collect();
        self.face_id(&ids?)
    }

    pub fn ray_index(&self, r: &IVec) -> Option<usize> {
        self.rays.iter().position(|x| x == r)
    }

    pub fn ray_face(&self, ray: usize) -> FaceId {
        self.face_index[&vec![ray]]
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_projective_by_construction(&self) -> bool {
        self.projective_by_construction
    }

    pub(crate) fn with_projective_flag(mut self, flag: bool) -> Self {
        self.projective_by_construction = flag;
        self
    }

    /// The unique face containing `x` in its relative interior.
    pub fn locate<D: Direction>(&self, x: &D) -> Option<FaceId> {
        for g in &self.max_geometry {
            if let Some(rays) = g.face_rays_containing(x) {
                return self.face_id_of_rays(&rays);
            }
        }
        None
    }

    /// Faces of dimension `d`.
    pub fn faces_of_dim(&self, d: usize) -> Vec<FaceId> {
        (0..self.faces.len())
            .filter(|&i| self.face_geometry[i].dim() == d)
            .collect()
    }

    pub fn is_pure_full_dimensional(&self) -> bool {
        self.max_geometry.iter().all(|g| g.dim() == 3)
    }

    /// Every maximal cone is 3-dimensional and every 2-dimensional face lies
    /// in exactly two of them. For a valid fan this is equivalent to the
    /// support being all of `R^3`.
    pub fn is_complete_structural(&self) -> bool {
        if self.max_geometry.is_empty() || !self.is_pure_full_dimensional() {
            return false;
        }
        let mut count: HashMap<FaceId, usize> = HashMap::new();
        for (mc, g) in self.max_cones.iter().zip(&self.max_geometry) {
            for facet in g.facets() {
                let ids: Vec<usize> = facet
                    .iter()
                    .map(|r| mc.iter().copied().find(|&i| &self.rays[i] == r).unwrap())
                    .collect();
                *count.entry(self.face_id(&ids).unwrap()).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Splits space by every facet plane of the fan (starting from the eight
    /// octants) and checks that an interior point of each resulting region
    /// lies in the support.
    pub fn support_probe(&self) -> bool {
        let mut normals: Vec<IVec> = Vec::new();
        for g in &self.max_geometry {
            for n in g.facet_normals().iter().chain(g.equations()) {
                let n = primitive(n);
                if !normals.contains(&n) && !normals.contains(&lattice::neg(&n)) {
                    normals.push(n);
                }
            }
        }
        let mut cells: Vec<Cone> = Fan::octants().max_geometry.clone();
        for n in &normals {
            let mut next = Vec::with_capacity(cells.len());
            for c in cells {
                if side_of(&c, n) != std::cmp::Ordering::Equal {
                    next.push(c);
                    continue;
                }
                for s in [n.clone(), lattice::neg(n)] {
                    let mut hs = c.halfspaces();
                    hs.push(s);
                    next.push(Cone::from_halfspaces(&hs).expect("cells are strictly convex"));
                }
            }
            cells = next;
        }
        cells.iter().all(|c| self.locate(&c.interior_point()).is_some())
    }

    pub fn is_complete(&self) -> bool {
        self.is_complete_structural() && self.support_probe()
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_geometry.iter().all(Cone::is_simplicial)
    }

    pub fn is_regular(&self) -> bool {
        self.max_geometry.iter().all(Cone::is_regular)
    }

    pub fn predicates(&self) -> FanPredicates {
        FanPredicates {
            complete: self.is_complete(),
            simplicial: self.is_simplicial(),
            regular: self.is_regular(),
        }
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete_structural() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }

    /// Image of the fan under an invertible integer matrix.
    pub fn transform(&self, g: &IntMatrix) -> Result<Fan> {
        let cones: Vec<Vec<IVec>> = self
            .all_max_cone_rays()
            .into_iter()
            .map(|c| c.iter().map(|r| primitive(&g.apply(r))).collect())
            .collect();
        Ok(Fan::from_cones_trusted(&cones)?.with_projective_flag(self.projective_by_construction))
    }

    /// Canonical form: rays sorted lexicographically, cone index lists sorted.
    pub fn canonical(&self) -> (Vec<IVec>, Vec<Vec<usize>>) {
        let mut rays = self.rays.clone();
        rays.sort();
        let pos: HashMap<&IVec, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|&i| pos[&self.rays[i]]).collect();
                v.sort();
                v
            })
            .collect();
        cones.sort();
        (rays, cones)
    }

    /// Same cones, as sets of rays.
    pub fn same_cones(&self, other: &Fan) -> bool {
        self.canonical() == other.canonical()
    }

    /// Every maximal cone of `self` lies in some maximal cone of `coarse`,
    /// and the two fans have the same support.
    pub fn refines(&self, coarse: &Fan) -> bool {
        let contained = self
            .max_geometry
            .iter()
            .all(|c| coarse.max_geometry.iter().any(|d| d.contains_cone(c)));
        contained && self.is_complete_structural() == coarse.is_complete_structural()
    }

    /// Maximal cones containing the given ray index.
    pub fn cones_with_ray(&self, ray: usize) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| self.max_cones[i].contains(&ray))
            .collect()
    }
}

fn index_rays(cones: &[Vec<IVec>]) -> (Vec<IVec>, Vec<Vec<usize>>) {
    let mut rays: Vec<IVec> = Vec::new();
    let mut pos: HashMap<IVec, usize> = HashMap::new();
    let idx = cones
        .iter()
        .map(|c| {
            c.iter()
                .map(|r| {
                    let r = primitive(r);
                    *pos.entry(r.clone()).or_insert_with(|| {
                        rays.push(r);
                        rays.len() - 1
                    })
                })
                .collect()
        })
        .collect();
    (rays, idx)
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.same_cones(other)
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fan {{ rays: [")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_ivec(r))?;
        }
        write!(f, "], max_cones: {:?} }}", self.max_cones)
    }
}
