//! Exact convex hulls of integer point sets in dimension at most three.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::lattice::{self, cross, dot, rank, sub, IVec};

/// Triangulated boundary of a full-dimensional hull, with outward orientation.
#[derive(Clone, Debug)]
pub struct Hull3 {
    pub points: Vec<IVec>,
    /// Triangles as indices into `points`, oriented so that
    /// `(b - a) x (c - a)` points outward.
    pub triangles: Vec<[usize; 3]>,
}

fn normal_of(points: &[IVec], t: &[usize; 3]) -> IVec {
    cross(&sub(&points[t[1]], &points[t[0]]), &sub(&points[t[2]], &points[t[0]]))
}

/// Affine dimension of a point set (`None` when empty).
pub fn affine_dim(points: &[IVec]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<IVec> = points.iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

/// Incremental hull with strict visibility; requires affine dimension 3.
pub fn hull3(points: &[IVec]) -> Option<Hull3> {
    let mut pts: Vec<IVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    if affine_dim(&pts) != Some(3) {
        return None;
    }
    // initial tetrahedron
    let a = 0;
    let b = (1..pts.len()).find(|&i| pts[i] != pts[a])?;
    let c = (1..pts.len()).find(|&i| {
        !lattice::is_zero(&cross(&sub(&pts[b], &pts[a]), &sub(&pts[i], &pts[a])))
    })?;
    let n = cross(&sub(&pts[b], &pts[a]), &sub(&pts[c], &pts[a]));
    let d = (1..pts.len()).find(|&i| !dot(&n, &sub(&pts[i], &pts[a])).is_zero())?;
    let mut tris: Vec<[usize; 3]> = if dot(&n, &sub(&pts[d], &pts[a])).is_positive() {
        vec![[a, c, b], [a, b, d], [b, c, d], [c, a, d]]
    } else {
        vec![[a, b, c], [a, d, b], [b, d, c], [c, d, a]]
    };
    for p in 0..pts.len() {
        if p == a || p == b || p == c || p == d {
            continue;
        }
        let visible: Vec<bool> = tris
            .iter()
            .map(|t| dot(&normal_of(&pts, t), &sub(&pts[p], &pts[t[0]])).is_positive())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges_visible: HashSet<(usize, usize)> = HashSet::new();
        for (t, &v) in tris.iter().zip(&visible) {
            if v {
                for k in 0..3 {
                    edges_visible.insert((t[k], t[(k + 1) % 3]));
                }
            }
        }
        let mut next: Vec<[usize; 3]> = Vec::with_capacity(tris.len() + 4);
        for (t, &v) in tris.iter().zip(&visible) {
            if !v {
                next.push(*t);
            }
        }
        for &(u, w) in &edges_visible {
            if !edges_visible.contains(&(w, u)) {
                next.push([u, w, p]);
            }
        }
        tris = next;
    }
    Some(Hull3 {
        points: pts,
        triangles: tris,
    })
}

impl Hull3 {
    /// Points of the triangulation that are vertices of the hull: the
    /// incident triangle normals span space.
    pub fn extreme_points(&self) -> Vec<IVec> {
        let mut normals: Vec<Vec<IVec>> = vec![Vec::new(); self.points.len()];
        for t in &self.triangles {
            let n = normal_of(&self.points, t);
            for &i in t {
                normals[i].push(n.clone());
            }
        }
        let mut out: Vec<IVec> = (0..self.points.len())
            .filter(|&i| rank(&normals[i]) == 3)
            .map(|i| self.points[i].clone())
            .collect();
        out.sort();
        out
    }

    /// Six times the volume.
    pub fn volume6(&self) -> BigInt {
        let o = &self.points[0];
        let mut total = BigInt::zero();
        for t in &self.triangles {
            total += lattice::det3(
                &sub(&self.points[t[0]], o),
                &sub(&self.points[t[1]], o),
                &sub(&self.points[t[2]], o),
            );
        }
        total.abs()
    }

    /// Distinct outward primitive facet normals with their offsets:
    /// the hull is `{x : <n, x> <= h}` over all pairs `(n, h)`.
    pub fn facets(&self) -> Vec<(IVec, BigInt)> {
        let mut out: Vec<(IVec, BigInt)> = Vec::new();
        for t in &self.triangles {
            let n = lattice::primitive(&normal_of(&self.points, t));
            let h = dot(&n, &self.points[t[0]]);
            if !out.iter().any(|(m, _)| *m == n) {
                out.push((n, h));
            }
        }
        out.sort();
        out
    }
}

/// Extreme points of a finite point set of any affine dimension at most 3.
pub fn extreme_points(points: &[IVec]) -> Vec<IVec> {
    let mut pts: Vec<IVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    match affine_dim(&pts) {
        None => Vec::new(),
        Some(0) => pts,
        Some(1) => vec![pts[0].clone(), pts[pts.len() - 1].clone()],
        Some(2) => planar_extreme_points(&pts),
        Some(_) => hull3(&pts).expect("dimension 3").extreme_points(),
    }
}

fn planar_extreme_points(pts: &[IVec]) -> Vec<IVec> {
    let first = &pts[0];
    let diffs: Vec<IVec> = pts.iter().map(|p| sub(p, first)).collect();
    let u = diffs.iter().find(|d| !lattice::is_zero(d)).unwrap().clone();
    let v = diffs.iter().find(|d| !lattice::parallel(&u, d)).unwrap().clone();
    let n = cross(&u, &v);
    // drop a coordinate along which the plane projects injectively
    let drop = (0..3).find(|&k| !n[k].is_zero()).unwrap();
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let proj = |p: &IVec| (p[keep[0]].clone(), p[keep[1]].clone());
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| proj(&pts[i]).cmp(&proj(&pts[j])));
    let turn = |o: usize, a: usize, b: usize| {
        let (ox, oy) = proj(&pts[o]);
        let (ax, ay) = proj(&pts[a]);
        let (bx, by) = proj(&pts[b]);
        (&ax - &ox) * (&by - &oy) - (&ay - &oy) * (&bx - &ox)
    };
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<usize> = if pass == 0 {
            order.clone()
        } else {
            order.iter().rev().copied().collect()
        };
        for i in seq {
            while hull.len() >= start + 2
                && !turn(hull[hull.len() - 2], hull[hull.len() - 1], i).is_positive()
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    let mut out: Vec<IVec> = hull.into_iter().map(|i| pts[i].clone()).collect();
    out.sort();
    out.dedup();
    out
}

/// Exact volume of the hull of a point set.
pub fn hull_volume(points: &[IVec]) -> BigRational {
    match hull3(points) {
        Some(h) => BigRational::new(h.volume6(), BigInt::from(6)),
        None => BigRational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lattice::ivec;

    fn cube() -> Vec<IVec> {
        let mut v = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    v.push(ivec(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn cube_hull() {
        let mut pts = cube();
        pts.push(ivec(1, 1, 0));
        pts.push(ivec(0, 0, 0));
        pts.push(ivec(1, 0, 1));
        let h = hull3(&pts).unwrap();
        assert_eq!(h.extreme_points().len(), 8);
        assert_eq!(h.volume6(), BigInt::from(6));
        assert_eq!(h.facets().len(), 6);
    }

    #[test]
    fn points_on_faces_are_dropped() {
        let big: Vec<IVec> = (0..3)
            .flat_map(|x| (0..3).flat_map(move |y| (0..3).map(move |z| ivec(x, y, z))))
            .collect();
        assert_eq!(extreme_points(&big).len(), 8);
        assert_eq!(hull_volume(&big), BigRational::from_integer(8.into()));
    }

    #[test]
    fn lower_dimensional_sets() {
        assert_eq!(extreme_points(&[ivec(1, 1, 1)]), vec![ivec(1, 1, 1)]);
        assert_eq!(
            extreme_points(&[ivec(0, 0, 0), ivec(1, 1, 1), ivec(2, 2, 2)]),
            vec![ivec(0, 0, 0), ivec(2, 2, 2)]
        );
        let square = [
            ivec(0, 0, 0),
            ivec(1, 0, 1),
            ivec(0, 1, 0),
            ivec(1, 1, 1),
            ivec(1, 0, 1),
            ivec(0, 0, 0),
        ];
        assert_eq!(extreme_points(&square).len(), 4);
        let with_mid = [ivec(0, 0, 0), ivec(2, 0, 0), ivec(0, 2, 0), ivec(1, 0, 0), ivec(1, 1, 0)];
        assert_eq!(extreme_points(&with_mid).len(), 3);
        assert!(hull_volume(&square).is_zero());
    }
}
