//! Refinements of fans: plane cuts, hyperplane arrangements, common
//! refinements, orbit intersections, triangulation and stellar subdivision.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::lattice::{self, cross, dot, format_ivec, primitive, IVec};
use crate::linalg::IntMatrix;

use super::cone::{side_of, Cone};
use super::structure::Fan;

/// The ray where the segment between `a` and `b` crosses `<n, x> = 0`.
fn crossing_ray(n: &IVec, a: &IVec, b: &IVec) -> IVec {
    let na = dot(n, a);
    let nb = dot(n, b);
    let v = lattice::sub(&lattice::scale(b, &na), &lattice::scale(a, &nb));
    let v = if na.is_negative() { lattice::neg(&v) } else { v };
    primitive(&v)
}

/// Splits a cone by the plane `<n, x> = 0`, returning the pieces of the same
/// dimension on either side (one piece if the plane does not cut it).
pub fn split_cone(c: &Cone, n: &IVec) -> Vec<Vec<IVec>> {
    if side_of(c, n) != Ordering::Equal || c.dim() < 2 {
        return vec![c.rays().to_vec()];
    }
    let mut new_rays = Vec::new();
    for (a, b) in c.edges() {
        let sa = dot(n, &a);
        let sb = dot(n, &b);
        if (sa.is_positive() && sb.is_negative()) || (sa.is_negative() && sb.is_positive()) {
            new_rays.push(crossing_ray(n, &a, &b));
        }
    }
    let mut pos: Vec<IVec> = c
        .rays()
        .iter()
        .filter(|r| !dot(n, r).is_negative())
        .cloned()
        .collect();
    let mut neg: Vec<IVec> = c
        .rays()
        .iter()
        .filter(|r| !dot(n, r).is_positive())
        .cloned()
        .collect();
    pos.extend(new_rays.iter().cloned());
    neg.extend(new_rays);
    vec![pos, neg]
}

fn split_all(cones: Vec<Vec<IVec>>, n: &IVec) -> Vec<Vec<IVec>> {
    let mut out = Vec::with_capacity(cones.len());
    for c in cones {
        let cone = Cone::new(&c).expect("pieces of a cone are cones");
        out.extend(split_cone(&cone, n));
    }
    out
}

/// Refines `f` by cutting every cone with each of the given planes.
pub fn split_by_planes(f: &Fan, normals: &[IVec]) -> Result<Fan> {
    let mut cones = f.all_max_cone_rays();
    for n in normals {
        cones = split_all(cones, n);
    }
    let out = Fan::from_cones(&cones)?;
    Ok(out.with_projective_flag(f.is_projective_by_construction()))
}

/// Distinct (up to sign) primitive normals of the planes spanned by the
/// 2-dimensional cones of `f`.
pub fn wall_normals(f: &Fan) -> Vec<IVec> {
    let mut normals: Vec<IVec> = Vec::new();
    for id in f.faces_of_dim(2) {
        let r = f.face(id).rays();
        push_plane(&mut normals, &cross(&r[0], &r[1]));
    }
    normals
}

/// Adds a plane normal to a list, ignoring duplicates up to sign.
pub fn push_plane(normals: &mut Vec<IVec>, n: &IVec) {
    if lattice::is_zero(n) {
        return;
    }
    let mut n = primitive(n);
    if n < lattice::neg(&n) {
        n = lattice::neg(&n);
    }
    if !normals.contains(&n) {
        normals.push(n);
    }
}

/// The fan of the arrangement of all planes spanned by 2-cones of `f`.
pub fn hyperplane_fan(f: &Fan) -> Result<Fan> {
    f.require_complete()?;
    let normals = wall_normals(f);
    Ok(split_by_planes(f, &normals)?.with_projective_flag(true))
}

/// The fan of all full-dimensional intersections of a cone of `f1` with a
/// cone of `f2`.
pub fn common_refinement(f1: &Fan, f2: &Fan) -> Result<Fan> {
    if !f1.is_pure_full_dimensional() || !f2.is_pure_full_dimensional() {
        if f1.same_cones(f2) {
            return Ok(f1.clone());
        }
        return Err(Error::SupportMismatch);
    }
    let c1 = f1.is_complete_structural();
    let c2 = f2.is_complete_structural();
    let g1 = f1.max_cone_geometry();
    let g2 = f2.max_cone_geometry();
    let mut pieces: Vec<Vec<IVec>> = Vec::new();
    for a in g1 {
        for b in g2 {
            if separated(a, b) {
                continue;
            }
            let i = a.intersect(b);
            if i.dim() == 3 {
                pieces.push(i.rays().to_vec());
            }
        }
    }
    let covered = c1 && c2 || (pieces_cover(g1, &pieces) && pieces_cover(g2, &pieces));
    if !covered {
        return Err(Error::SupportMismatch);
    }
    let out = Fan::from_cones(&pieces)?;
    Ok(out.with_projective_flag(
        f1.is_projective_by_construction() && f2.is_projective_by_construction(),
    ))
}

/// Some facet plane of one cone weakly separates the two cones, so their
/// intersection is not full-dimensional.
fn separated(a: &Cone, b: &Cone) -> bool {
    a.facet_normals()
        .iter()
        .any(|n| b.rays().iter().all(|r| !dot(n, r).is_positive()))
        || b
            .facet_normals()
            .iter()
            .any(|n| a.rays().iter().all(|r| !dot(n, r).is_positive()))
}

/// The pieces lying inside each cone subdivide it: every 2-face of a piece is
/// either on the cone's boundary or shared by two pieces.
fn pieces_cover(cones: &[Cone], pieces: &[Vec<IVec>]) -> bool {
    for c in cones {
        let inside: Vec<Cone> = pieces
            .iter()
            .map(|p| Cone::new(p).unwrap())
            .filter(|p| c.contains_cone(p))
            .collect();
        let mut walls: Vec<Vec<IVec>> = Vec::new();
        for p in &inside {
            for mut f in p.facets() {
                f.sort();
                walls.push(f);
            }
        }
        for w in &walls {
            let count = walls.iter().filter(|x| *x == w).count();
            let on_boundary = c
                .facet_normals()
                .iter()
                .any(|n| w.iter().all(|r| dot(n, r).is_zero()));
            if !(count == 2 || (count == 1 && on_boundary)) {
                return false;
            }
        }
        if inside.is_empty() {
            return false;
        }
    }
    true
}

/// The common refinement of `g(f1)` over the given matrices, verified to be
/// mapped onto itself cone by cone by every matrix.
pub fn orbit_intersection_fan(f1: &Fan, group: &[IntMatrix]) -> Result<Fan> {
    f1.require_complete()?;
    let mut out = f1.clone();
    for g in group {
        if g.as_scalar().is_some_and(|c| c.is_positive()) {
            continue;
        }
        let image = f1.transform(g)?;
        out = common_refinement(&out, &image)?;
    }
    check_invariant(&out, group)?;
    Ok(out)
}

/// Each matrix maps every maximal cone onto a maximal cone.
pub fn check_invariant(f: &Fan, group: &[IntMatrix]) -> Result<()> {
    for g in group {
        for (i, c) in f.all_max_cone_rays().iter().enumerate() {
            let img: Vec<IVec> = c.iter().map(|r| primitive(&g.apply(r))).collect();
            if f.face_id_of_rays(&img)
                .map(|id| f.face(id).dim() != 3)
                .unwrap_or(true)
            {
                return Err(Error::NotInvariant(format!(
                    "{} maps cone {:?} off the fan",
                    g,
                    f.max_cones()[i]
                )));
            }
        }
    }
    Ok(())
}

/// Simplicial refinement with the same rays: each non-simplicial cone is
/// triangulated by joining its lexicographically smallest ray to the facets
/// not containing it.
pub fn simplicialize_preserving_rays(f: &Fan) -> Result<Fan> {
    if f.is_simplicial() {
        return Ok(f.clone());
    }
    let mut cones = Vec::new();
    for g in f.max_cone_geometry() {
        if g.is_simplicial() {
            cones.push(g.rays().to_vec());
            continue;
        }
        let apex = g.rays().iter().min().unwrap().clone();
        for facet in g.facets() {
            if facet.contains(&apex) {
                continue;
            }
            let mut c = vec![apex.clone()];
            c.extend(facet);
            cones.push(c);
        }
    }
    Ok(Fan::from_cones(&cones)?.with_projective_flag(f.is_projective_by_construction()))
}

fn star_pieces(f: &Fan, r: &IVec) -> Result<Option<Vec<Vec<IVec>>>> {
    let r = primitive(r);
    if f.ray_index(&r).is_some() {
        return Ok(None);
    }
    if f.locate(&r).is_none() {
        return Err(Error::OutsideSupport(format_ivec(&r)));
    }
    let mut cones = Vec::new();
    for g in f.max_cone_geometry() {
        if !g.contains(&r) {
            cones.push(g.rays().to_vec());
            continue;
        }
        for facet in g.facets() {
            let facet_cone = Cone::new(&facet).expect("facets are cones");
            if facet_cone.contains(&r) {
                continue;
            }
            let mut c = vec![r.clone()];
            c.extend(facet);
            cones.push(c);
        }
    }
    Ok(Some(cones))
}

/// Stellar subdivision of `f` at the ray through `r`.
pub fn star_subdivide(f: &Fan, r: &IVec) -> Result<Fan> {
    match star_pieces(f, r)? {
        None => Ok(f.clone()),
        Some(cones) => Ok(Fan::from_cones(&cones)?),
    }
}

/// Stellar subdivision without re-validating the fan axioms; the result is a
/// fan whenever `f` is.
pub(crate) fn star_subdivide_trusted(f: &Fan, r: &IVec) -> Result<Fan> {
    match star_pieces(f, r)? {
        None => Ok(f.clone()),
        Some(cones) => Ok(Fan::from_cones_trusted(&cones)?),
    }
}
