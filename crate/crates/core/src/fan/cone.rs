//! Strictly convex rational polyhedral cones in `R^3`, kept in both primal
//! (extreme rays) and dual (facet normals plus span equations) form.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::lattice::{
    self, cross, det3, dot, format_ivec, neg, plane_lattice_basis, primitive, rank, Direction,
    IVec,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    rays: Vec<IVec>,
    dim: usize,
    /// Primitive covectors cutting out the linear span.
    equations: Vec<IVec>,
    /// Primitive covectors `n` with `<n, x> >= 0` on the cone, one per facet.
    inequalities: Vec<IVec>,
}

/// Position of a point relative to a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// In the relative interior.
    Interior,
    /// On the relative boundary; carries the smallest face containing the point.
    Face(Cone),
    Outside,
}

fn dedup_primitive(gens: &[IVec]) -> Vec<IVec> {
    let mut v: Vec<IVec> = gens
        .iter()
        .filter(|g| !lattice::is_zero(g))
        .map(primitive)
        .collect();
    v.sort();
    v.dedup();
    v
}

fn all_signs(gens: &[IVec], n: &IVec) -> (bool, bool) {
    let mut nonneg = true;
    let mut nonpos = true;
    for g in gens {
        match dot(n, g).sign() {
            num_bigint::Sign::Plus => nonpos = false,
            num_bigint::Sign::Minus => nonneg = false,
            num_bigint::Sign::NoSign => {}
        }
    }
    (nonneg, nonpos)
}

impl Cone {
    pub fn zero() -> Self {
        Cone {
            rays: Vec::new(),
            dim: 0,
            equations: vec![lattice::unit(0), lattice::unit(1), lattice::unit(2)],
            inequalities: Vec::new(),
        }
    }

    /// The cone generated by `gens`, reduced to its primitive extreme rays.
    pub fn new(gens: &[IVec]) -> Result<Self> {
        let gens = dedup_primitive(gens);
        match rank(&gens) {
            0 => Ok(Self::zero()),
            1 => Self::new_ray(&gens),
            2 => Self::new_planar(&gens),
            _ => Self::new_full(&gens),
        }
    }

    pub fn ray(r: &IVec) -> Self {
        Self::new(std::slice::from_ref(r)).expect("a single nonzero vector spans a ray")
    }

    fn new_ray(gens: &[IVec]) -> Result<Self> {
        let r = gens[0].clone();
        if gens.iter().any(|g| *g != r) {
            return Err(Error::NotStrictlyConvex);
        }
        let [a, b] = plane_lattice_basis(&r);
        Ok(Cone {
            rays: vec![r.clone()],
            dim: 1,
            equations: vec![a, b],
            inequalities: vec![r],
        })
    }

    fn new_planar(gens: &[IVec]) -> Result<Self> {
        let g0 = &gens[0];
        let other = gens.iter().find(|g| !lattice::parallel(g0, g)).unwrap();
        let normal = primitive(&cross(g0, other));
        let mut rays = Vec::new();
        let mut inequalities = Vec::new();
        for g in gens {
            let c = primitive(&cross(&normal, g));
            let (nonneg, nonpos) = all_signs(gens, &c);
            if nonneg || nonpos {
                rays.push(g.clone());
                inequalities.push(if nonneg { c } else { neg(&c) });
            }
        }
        if rays.len() != 2 || lattice::is_zero(&lattice::add(&rays[0], &rays[1])) {
            return Err(Error::NotStrictlyConvex);
        }
        Ok(Cone {
            rays,
            dim: 2,
            equations: vec![normal],
            inequalities,
        })
    }

    fn new_full(gens: &[IVec]) -> Result<Self> {
        let mut normals: Vec<IVec> = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = cross(&gens[i], &gens[j]);
                if lattice::is_zero(&c) {
                    continue;
                }
                let c = primitive(&c);
                let (nonneg, nonpos) = all_signs(gens, &c);
                let n = if nonneg {
                    c
                } else if nonpos {
                    neg(&c)
                } else {
                    continue;
                };
                if normals.contains(&n) {
                    continue;
                }
                let tight: Vec<IVec> = gens
                    .iter()
                    .filter(|g| dot(&n, g).is_zero())
                    .cloned()
                    .collect();
                if rank(&tight) == 2 {
                    normals.push(n);
                }
            }
        }
        if rank(&normals) < 3 {
            return Err(Error::NotStrictlyConvex);
        }
        let rays: Vec<IVec> = gens
            .iter()
            .filter(|g| {
                let tight: Vec<IVec> = normals
                    .iter()
                    .filter(|n| dot(n, g).is_zero())
                    .cloned()
                    .collect();
                rank(&tight) == 2
            })
            .cloned()
            .collect();
        normals.sort();
        Ok(Cone {
            rays,
            dim: 3,
            equations: Vec::new(),
            inequalities: normals,
        })
    }

    /// The cone `{x : <c, x> >= 0 for all c}`; the result must be strictly convex.
    pub fn from_halfspaces(constraints: &[IVec]) -> Result<Self> {
        let cs = dedup_primitive(constraints);
        let mut candidates: Vec<IVec> = Vec::new();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let d = cross(&cs[i], &cs[j]);
                if lattice::is_zero(&d) {
                    continue;
                }
                let d = primitive(&d);
                for cand in [d.clone(), neg(&d)] {
                    if cs.iter().all(|c| !dot(c, &cand).is_negative()) {
                        candidates.push(cand);
                    }
                }
            }
        }
        if rank(&cs) < 3 {
            return Err(Error::NotStrictlyConvex);
        }
        Cone::new(&candidates)
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_normals(&self) -> &[IVec] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[IVec] {
        &self.equations
    }

    /// All defining halfspaces, with each equation contributing both signs.
    pub fn halfspaces(&self) -> Vec<IVec> {
        let mut hs = self.inequalities.clone();
        for e in &self.equations {
            hs.push(e.clone());
            hs.push(neg(e));
        }
        hs
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Simplicial with generators extendable to a lattice basis.
    pub fn is_regular(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        match self.dim {
            0 | 1 => true,
            2 => lattice::content(&cross(&self.rays[0], &self.rays[1])) == BigInt::from(1),
            _ => det3(&self.rays[0], &self.rays[1], &self.rays[2]).abs() == BigInt::from(1),
        }
    }

    /// Sum of the extreme rays; lies in the relative interior.
    pub fn interior_point(&self) -> IVec {
        self.rays
            .iter()
            .fold(lattice::zero(), |acc, r| lattice::add(&acc, r))
    }

    pub fn contains<D: Direction>(&self, x: &D) -> bool {
        self.equations.iter().all(|e| x.sign_dot(e) == Ordering::Equal)
            && self
                .inequalities
                .iter()
                .all(|n| x.sign_dot(n) != Ordering::Less)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// Extreme rays of the smallest face containing `x`, or `None` if `x`
    /// lies outside.
    pub fn face_rays_containing<D: Direction>(&self, x: &D) -> Option<Vec<IVec>> {
        if !self.equations.iter().all(|e| x.sign_dot(e) == Ordering::Equal) {
            return None;
        }
        let mut tight = Vec::new();
        for n in &self.inequalities {
            match x.sign_dot(n) {
                Ordering::Less => return None,
                Ordering::Equal => tight.push(n),
                Ordering::Greater => {}
            }
        }
        Some(
            self.rays
                .iter()
                .filter(|r| tight.iter().all(|n| dot(n, r).is_zero()))
                .cloned()
                .collect(),
        )
    }

    pub fn locate<D: Direction>(&self, x: &D) -> Location {
        match self.face_rays_containing(x) {
            None => Location::Outside,
            Some(rays) if rays.len() == self.rays.len() => Location::Interior,
            Some(rays) => Location::Face(Cone::new(&rays).expect("faces of a cone are cones")),
        }
    }

    pub fn in_relative_interior<D: Direction>(&self, x: &D) -> bool {
        matches!(self.locate(x), Location::Interior)
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut hs = self.halfspaces();
        hs.extend(other.halfspaces());
        Cone::from_halfspaces(&hs).expect("an intersection of strictly convex cones is strictly convex")
    }

    /// `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.is_zero() {
            return true;
        }
        match other.face_rays_containing(&self.interior_point()) {
            Some(mut rays) => {
                rays.sort();
                rays == self.rays_sorted()
            }
            None => false,
        }
    }

    pub fn rays_sorted(&self) -> Vec<IVec> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }

    /// Extreme-ray sets of the facets.
    pub fn facets(&self) -> Vec<Vec<IVec>> {
        match self.dim {
            0 => Vec::new(),
            1 => vec![Vec::new()],
            2 => self.rays.iter().map(|r| vec![r.clone()]).collect(),
            _ => self
                .inequalities
                .iter()
                .map(|n| {
                    self.rays
                        .iter()
                        .filter(|r| dot(n, r).is_zero())
                        .cloned()
                        .collect()
                })
                .collect(),
        }
    }

    /// Pairs of extreme rays spanning a 2-dimensional face.
    pub fn edges(&self) -> Vec<(IVec, IVec)> {
        match self.dim {
            2 => vec![(self.rays[0].clone(), self.rays[1].clone())],
            3 => self
                .facets()
                .into_iter()
                .map(|f| (f[0].clone(), f[1].clone()))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Image under a linear map given by a closure on rays.
    pub fn map(&self, f: impl Fn(&IVec) -> IVec) -> Result<Cone> {
        let imgs: Vec<IVec> = self.rays.iter().map(f).collect();
        Cone::new(&imgs)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{{")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_ivec(r))?;
        }
        write!(f, "}}")
    }
}

/// `<c, x>`-sign class of a cone against a covector: all rays on the
/// nonnegative side, all on the nonpositive side, or straddling.
pub fn side_of(c: &Cone, normal: &IVec) -> Ordering {
    let (nonneg, nonpos) = all_signs(c.rays(), normal);
    match (nonneg, nonpos) {
        (true, _) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => Ordering::Equal,
    }
}
