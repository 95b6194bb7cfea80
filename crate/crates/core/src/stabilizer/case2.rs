//! A real eigenvalue `nu` dominating a complex pair with irrational angle.
//! Everything off the invariant plane `Gamma` of the pair is pushed towards
//! the eigenline of `nu`; where that line sits in the fan decides whether a
//! refinement can help.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::dynamics::maps_regularly;
use crate::error::{Error, Result};
use crate::fan::{common_refinement, Cone, simplicialize_preserving_rays, Fan, FaceId};
use crate::linalg::algebraic::{alg_sign, shifted_adjugate};
use crate::linalg::lattice::{self, cross, format_ivec, primitive, IVec};
use crate::linalg::{AlgebraicVector, Direction, IntMatrix, RealAlgebraic};
use crate::spectra::{classify_case, CaseLabel};

use super::{certify, Budget, Outcome, StabilizationOutcome};

/// A direction with coordinates in `Q(nu)`, with its integer form when
/// those coordinates are rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDirection {
    pub vector: AlgebraicVector,
    pub rational: Option<IVec>,
}

impl EigenDirection {
    fn new(vector: AlgebraicVector) -> Self {
        let rational = vector.as_rational_direction();
        EigenDirection { vector, rational }
    }

    fn neg(&self) -> Self {
        EigenDirection {
            vector: self.vector.neg(),
            rational: self.rational.as_ref().map(lattice::neg),
        }
    }

    pub fn describe(&self) -> String {
        match &self.rational {
            Some(v) => format_ivec(v),
            None => {
                let [x, y, z] = self.vector.to_f64();
                format!("(~{x:.6}, ~{y:.6}, ~{z:.6})")
            }
        }
    }
}

impl Direction for EigenDirection {
    fn sign_dot(&self, covector: &IVec) -> Ordering {
        match &self.rational {
            Some(v) => v.sign_dot(covector),
            None => self.vector.sign_dot(covector),
        }
    }
}

/// The geometric data behind a subcase label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Subcase {
    /// 1 to 5.
    pub label: u8,
    pub eigenvalue: RealAlgebraic,
    /// Eigendirection of the real eigenvalue, oriented towards a ray of the
    /// fan when one of its two orientations is a ray.
    pub gamma: EigenDirection,
    /// Covector whose kernel is the invariant plane of the complex pair.
    pub plane_covector: EigenDirection,
    /// Ray indices of the smallest cone containing `gamma`, and `-gamma`.
    pub gamma_cone: Vec<usize>,
    pub neg_gamma_cone: Vec<usize>,
    /// Rays lying in the invariant plane.
    pub rays_in_plane: Vec<usize>,
    /// Rays whose forward orbit converges to `gamma` (empty unless `gamma`
    /// is a ray).
    pub attracted_rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Report {
    pub subcase: Case2Subcase,
    pub outcome: StabilizationOutcome,
}

struct EigenData {
    nu: RealAlgebraic,
    right: AlgebraicVector,
    left: AlgebraicVector,
}

/// Right eigenvector and left eigencovector of `nu` from the rank-one
/// adjugate of `A - nu I`.
fn eigen_data(a: &IntMatrix, nu: &RealAlgebraic) -> Result<EigenData> {
    let adj = shifted_adjugate(a, nu);
    let column = (0..3)
        .map(|j| [0, 1, 2].map(|i| adj[i][j].clone()))
        .find(|c| c.iter().any(|x| !x.is_zero()));
    let row = (0..3)
        .map(|i| adj[i].clone())
        .find(|r| r.iter().any(|x| !x.is_zero()));
    match (column, row) {
        (Some(c), Some(r)) => Ok(EigenData {
            nu: nu.clone(),
            right: AlgebraicVector::new(nu.clone(), c),
            left: AlgebraicVector::new(nu.clone(), r),
        }),
        _ => Err(Error::ConstructionFailed(
            "the real eigenvalue is not simple".into(),
        )),
    }
}

impl EigenData {
    /// Sign of `<left, r>`.
    fn side_of_ray(&self, r: &IVec) -> Ordering {
        alg_sign(&self.left.dot(r), &self.nu)
    }

    /// Sign of `<left, gamma>`.
    fn side_of_direction(&self, g: &EigenDirection) -> Ordering {
        alg_sign(&self.left.dot_algebraic(&g.vector.coords), &self.nu)
    }

    /// Rays (other than `gamma` itself) whose component along `gamma` in the
    /// splitting `gamma + Gamma` is positive. For `nu < 0` this is the
    /// attraction test for `A^2`.
    fn attracted(&self, f: &Fan, gamma: &EigenDirection) -> Vec<usize> {
        let side = self.side_of_direction(gamma);
        let gamma_ray = gamma.rational.as_ref().and_then(|g| f.ray_index(g));
        (0..f.rays().len())
            .filter(|&i| Some(i) != gamma_ray && self.side_of_ray(&f.rays()[i]) == side)
            .collect()
    }
}

fn face_dim(f: &Fan, id: Option<FaceId>) -> Result<usize> {
    id.map(|i| f.face(i).dim())
        .ok_or_else(|| Error::OutsideSupport("eigendirection".into()))
}

fn face_rays(f: &Fan, id: Option<FaceId>) -> Vec<usize> {
    id.map(|i| f.faces()[i].clone()).unwrap_or_default()
}

pub fn case2_subclassify(f: &Fan, a: &IntMatrix, budget: &Budget) -> Result<Case2Report> {
    f.require_complete()?;
    let case = classify_case(a)?;
    if case.label != CaseLabel::IrrationalPairDominated {
        return Err(Error::WrongCase(case.label.to_string()));
    }
    let nu = case
        .spectrum
        .lone_real()
        .expect("a complex pair leaves one real eigenvalue")
        .clone();
    let data = eigen_data(a, &nu)?;
    let v = EigenDirection::new(data.right.clone());
    let plane_covector = EigenDirection::new(data.left.clone());

    let is_ray = |d: &EigenDirection| d.rational.as_ref().is_some_and(|r| f.ray_index(r).is_some());
    let gamma = match (is_ray(&v), is_ray(&v.neg())) {
        (true, true) if data.attracted(f, &v).is_empty() => v.neg(),
        (true, _) => v,
        (false, true) => v.neg(),
        (false, false) => v,
    };
    let neg_gamma = gamma.neg();
    let gamma_face = f.locate(&gamma);
    let neg_face = f.locate(&neg_gamma);
    let gamma_dim = face_dim(f, gamma_face)?;
    let neg_dim = face_dim(f, neg_face)?;
    let rays_in_plane: Vec<usize> = (0..f.rays().len())
        .filter(|&i| data.side_of_ray(&f.rays()[i]) == Ordering::Equal)
        .collect();
    let attracted_rays = if gamma_dim == 1 {
        data.attracted(f, &gamma)
    } else {
        Vec::new()
    };

    let mut log = vec![format!(
        "eigenvalue {} with eigendirection {}; {} rays in the invariant plane",
        nu,
        gamma.describe(),
        rays_in_plane.len()
    )];
    if nu.sign() == Ordering::Less {
        log.push("negative eigenvalue: attraction tested for the square".into());
    }

    let (label, verdict) = if !rays_in_plane.is_empty() {
        (
            2,
            Outcome::NotByRefinement {
                subcase: Some(2),
                reason: format!(
                    "ray {} lies in the invariant plane of the complex pair",
                    format_ivec(&f.rays()[rays_in_plane[0]])
                ),
            },
        )
    } else if gamma_dim == 2 || neg_dim == 2 {
        (
            3,
            Outcome::NotByRefinement {
                subcase: Some(3),
                reason: "the eigendirection lies in the relative interior of a 2-dimensional cone"
                    .into(),
            },
        )
    } else if gamma_dim == 1 && !attracted_rays.is_empty() {
        (
            4,
            Outcome::NotByRefinement {
                subcase: Some(4),
                reason: format!(
                    "the eigendirection is a ray and ray {} is attracted to it",
                    format_ivec(&f.rays()[attracted_rays[0]])
                ),
            },
        )
    } else if gamma_dim == 3 && neg_dim == 3 {
        (1, stabilize_iterates(f, a, &data, &gamma, budget, &mut log)?)
    } else {
        (5, eventual_stability(f, a, budget, &mut log)?)
    };

    let subcase = Case2Subcase {
        label,
        eigenvalue: nu,
        gamma,
        plane_covector,
        gamma_cone: face_rays(f, gamma_face),
        neg_gamma_cone: face_rays(f, neg_face),
        rays_in_plane,
        attracted_rays,
    };
    Ok(Case2Report {
        subcase,
        outcome: StabilizationOutcome {
            case: CaseLabel::IrrationalPairDominated,
            verdict,
            log,
        },
    })
}

/// Smallest `k0` such that `A^k` is 1-stable on `f` for `k0 <= k <= 2 k0`.
fn eventual_stability(f: &Fan, a: &IntMatrix, budget: &Budget, log: &mut Vec<String>) -> Result<Outcome> {
    for k0 in 1..=budget.k0_scan {
        let powers: Vec<usize> = (k0..=2 * k0).collect();
        if certify(f, a, &powers, false)?.is_none() {
            log.push(format!(
                "certified 1-stable on the given fan for powers {k0} through {}",
                2 * k0
            ));
            return Ok(Outcome::StabilizedFan {
                fan: f.clone(),
                k0,
                two_stable: false,
                certified_powers: powers,
            });
        }
    }
    Ok(Outcome::SearchExhausted {
        budget: budget.k0_scan,
        reason: "no power up to the scan limit is certified".into(),
    })
}

/// Rays of the same side of the plane as `side`, strictly.
fn cone_on_side(f: &Fan, id: FaceId, data: &EigenData, side: Ordering) -> bool {
    f.face(id).rays().iter().all(|r| data.side_of_ray(r) == side)
}

/// A simplicial cone `cone(r1, r2, r3)` containing `gamma` in its interior,
/// with every generator strictly on `gamma`'s side of the invariant plane.
fn enclosing_basis(gamma: &EigenDirection, data: &EigenData) -> Option<[IVec; 3]> {
    let side = data.side_of_direction(gamma);
    let approx = gamma.vector.to_f64();
    let norm = approx.iter().map(|x| x * x).sum::<f64>().sqrt();
    for bits in [6, 10, 16, 24, 32, 40] {
        let scale = 2f64.powi(bits);
        let g = primitive(&approx.map(|x| BigInt::from((x / norm * scale).round() as i64)));
        if lattice::is_zero(&g) {
            continue;
        }
        let k = (0..3).find(|&i| !lattice::is_zero(&cross(&g, &lattice::unit(i))))?;
        let u = cross(&g, &lattice::unit(k));
        let w = cross(&g, &u);
        let d = [u.clone(), w.clone(), lattice::neg(&lattice::add(&u, &w))];
        for t in 1..40u32 {
            let big = lattice::scale(&g, &BigInt::from(2u64).pow(t));
            let rays = d.clone().map(|di| primitive(&lattice::add(&big, &di)));
            if lattice::det3(&rays[0], &rays[1], &rays[2]) == 0.into() {
                continue;
            }
            let Ok(cone) = Cone::new(&rays) else {
                continue;
            };
            if cone.in_relative_interior(gamma)
                && cone.dim() == 3
                && rays.iter().all(|r| data.side_of_ray(r) == side)
            {
                return Some(rays);
            }
        }
    }
    None
}

/// The complete fan of the eight cones spanned by `±r1, ±r2, ±r3`.
fn signed_basis_fan(basis: &[IVec; 3]) -> Result<Fan> {
    let mut cones = Vec::with_capacity(8);
    for mask in 0..8u8 {
        cones.push(
            (0..3)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        lattice::neg(&basis[i])
                    } else {
                        basis[i].clone()
                    }
                })
                .collect(),
        );
    }
    Fan::from_cones(&cones)
}

fn stabilize_iterates(
    f: &Fan,
    a: &IntMatrix,
    data: &EigenData,
    gamma: &EigenDirection,
    budget: &Budget,
    log: &mut Vec<String>,
) -> Result<Outcome> {
    let side = data.side_of_direction(gamma);
    let pos = f.locate(gamma).expect("complete fan");
    let neg = f.locate(&gamma.neg()).expect("complete fan");
    let fan = if cone_on_side(f, pos, data, side) && cone_on_side(f, neg, data, side.reverse()) {
        log.push("the cones around the eigendirection already avoid the invariant plane".into());
        f.clone()
    } else {
        let basis = enclosing_basis(gamma, data).ok_or_else(|| {
            Error::ConstructionFailed("no rational cone separates the eigendirection from the plane".into())
        })?;
        let refined = common_refinement(f, &signed_basis_fan(&basis)?)?;
        let refined = simplicialize_preserving_rays(&refined)?;
        log.push(format!(
            "refined by the cone on {}, {}, {} and its negative: {} maximal cones",
            format_ivec(&basis[0]),
            format_ivec(&basis[1]),
            format_ivec(&basis[2]),
            refined.max_cones().len()
        ));
        refined
    };
    let pos = fan.locate(gamma).expect("complete fan");
    let neg = fan.locate(&gamma.neg()).expect("complete fan");
    if fan.face(pos).dim() != 3 || fan.face(neg).dim() != 3 {
        return Err(Error::ConstructionFailed(
            "refinement put the eigendirection on a wall".into(),
        ));
    }
    for l in 1..=budget.k0_scan {
        let powers = vec![l, 2 * l];
        if certify(&fan, a, &powers, false)?.is_none() {
            let al = a.pow(l as u32);
            let pattern = match maps_regularly(fan.face(pos), &al, &fan) {
                Some(id) if id == pos => "each cone around the eigendirection maps into itself",
                Some(id) if id == neg => "the two cones around the eigendirection are swapped",
                _ => "the cones around the eigendirection map into smaller cones",
            };
            log.push(format!("certified 1-stable for powers {l} and {}; {pattern}", 2 * l));
            return Ok(Outcome::StabilizedFan {
                fan,
                k0: l,
                two_stable: false,
                certified_powers: powers,
            });
        }
    }
    Ok(Outcome::SearchExhausted {
        budget: budget.k0_scan,
        reason: "no power up to the scan limit is certified on the refined fan".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::star_subdivide;
    use crate::linalg::lattice::ivec;

    fn example() -> IntMatrix {
        IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]])
    }

    #[test]
    fn projective_space_is_subcase_5() {
        let r = case2_subclassify(&Fan::projective_space(), &example(), &Budget::default()).unwrap();
        assert_eq!(r.subcase.label, 5);
        assert_eq!(r.subcase.gamma.rational, Some(ivec(-1, -1, -1)));
        assert!(r.subcase.attracted_rays.is_empty());
        assert_eq!(r.outcome.verdict.k0(), Some(1));
        assert_eq!(r.subcase.plane_covector.rational, Some(ivec(26, 31, 32)));
    }

    #[test]
    fn octants_are_subcase_1() {
        let r = case2_subclassify(&Fan::octants(), &example(), &Budget::default()).unwrap();
        assert_eq!(r.subcase.label, 1);
        assert!(r.subcase.rays_in_plane.is_empty());
        assert!(matches!(r.outcome.verdict, Outcome::StabilizedFan { .. }));
    }

    #[test]
    fn wall_through_eigendirection_is_subcase_3() {
        let f = star_subdivide(&Fan::octants(), &ivec(1, 0, 1)).unwrap();
        let f = star_subdivide(&f, &ivec(1, 2, 1)).unwrap();
        let r = case2_subclassify(&f, &example(), &Budget::default()).unwrap();
        assert_eq!(r.subcase.label, 3);
        assert!(matches!(
            r.outcome.verdict,
            Outcome::NotByRefinement { subcase: Some(3), .. }
        ));
    }

    #[test]
    fn attracted_ray_is_subcase_4() {
        let f = star_subdivide(&Fan::projective_space(), &ivec(1, 1, 1)).unwrap();
        let r = case2_subclassify(&f, &example(), &Budget::default()).unwrap();
        assert_eq!(r.subcase.label, 4);
        assert_eq!(r.subcase.gamma.rational, Some(ivec(1, 1, 1)));
    }

    #[test]
    fn wrong_case() {
        assert!(matches!(
            case2_subclassify(&Fan::projective_space(), &IntMatrix::identity(3), &Budget::default()),
            Err(Error::WrongCase(_))
        ));
    }
}
