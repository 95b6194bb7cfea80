//! Absolutely isolated spectra: refine by stellar subdivision along failing
//! orbits until the checker certifies both codimensions.

use num_traits::{Signed, Zero};

use crate::dynamics::strong_1_stability;
use crate::error::Result;
use crate::fan::refine::{star_subdivide_trusted, wall_normals};
use crate::fan::{split_by_planes, Cone, Fan};
use crate::linalg::lattice::{self, cross, dot, format_ivec, primitive, IVec};
use crate::linalg::{factor_over_q, IntMatrix};
use crate::spectra::CaseLabel;

use super::{certify, require_case, Budget, Outcome, StabilizationOutcome};

/// Primitive generators of the rational eigenlines, both orientations.
pub fn rational_eigenrays(a: &IntMatrix) -> Vec<IVec> {
    let mut out = Vec::new();
    for f in factor_over_q(&a.char_poly()) {
        if f.poly.degree() != Some(1) {
            continue;
        }
        let lambda = -f.poly.coeff(0);
        if !lambda.is_integer() {
            continue;
        }
        let lambda = lambda.to_integer();
        let rows: Vec<IVec> = (0..3)
            .map(|i| {
                [0, 1, 2].map(|j| {
                    if i == j {
                        a.get(i, j) - &lambda
                    } else {
                        a.get(i, j).clone()
                    }
                })
            })
            .collect();
        let kernel = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| cross(&rows[i], &rows[j]))
            .find(|v| !lattice::is_zero(v));
        if let Some(v) = kernel {
            let v = primitive(&v);
            out.push(lattice::neg(&v));
            out.push(v);
        }
    }
    out
}

/// Failing codimension, the matrix whose cone map failed, and the failing
/// cone of `f`.
fn failure(f: &Fan, a: &IntMatrix) -> Result<Option<(usize, IntMatrix, Cone)>> {
    if let Some(w) = strong_1_stability(f, a)?.witness {
        return Ok(Some((1, a.clone(), f.face(f.face_id(&w.cone).expect("face")).clone())));
    }
    let dual = a.dual();
    Ok(strong_1_stability(f, &dual)?
        .witness
        .map(|w| (2, dual, f.face(f.face_id(&w.cone).expect("face")).clone())))
}

/// Rays whose insertion may make the image of `cone` fit in a single cone:
/// the image of an interior point, the points where edges of the image cross
/// walls of `f`, and preimages of rays of `f` inside the image.
fn candidates(f: &Fan, m: &IntMatrix, cone: &Cone) -> Vec<IVec> {
    let images: Vec<IVec> = cone.rays().iter().map(|r| m.apply(r)).collect();
    let mut out = vec![primitive(&m.apply(&cone.interior_point()))];
    let walls = wall_normals(f);
    for (i, u) in images.iter().enumerate() {
        for v in &images[i + 1..] {
            for n in &walls {
                let (du, dv) = (dot(n, u), dot(n, v));
                if du.sign() != dv.sign() && !du.is_zero() && !dv.is_zero() {
                    let p = lattice::sub(&lattice::scale(v, &du), &lattice::scale(u, &dv));
                    out.push(primitive(&if du.is_positive() { p } else { lattice::neg(&p) }));
                }
            }
        }
    }
    let image = Cone::new(&images).expect("nonsingular image");
    let (_, adj) = m.det_adjugate();
    for r in f.rays() {
        if image.in_relative_interior(r) {
            let pre = adj.apply(r);
            let pre = if m.det().is_negative() { lattice::neg(&pre) } else { pre };
            out.push(primitive(&pre));
        }
    }
    out
}

fn scan_k0(f: &Fan, a: &IntMatrix, budget: &Budget) -> Result<Option<usize>> {
    for k0 in 1..=budget.k0_scan {
        let powers: Vec<usize> = (k0..=2 * k0).collect();
        if certify(f, a, &powers, true)?.is_none() {
            return Ok(Some(k0));
        }
    }
    Ok(None)
}

pub fn stabilize_search(f: &Fan, a: &IntMatrix, budget: &Budget) -> Result<StabilizationOutcome> {
    let case = require_case(a, &[CaseLabel::AbsIsolated])?;
    f.require_complete()?;
    let mut fan = f.clone();
    let mut log = Vec::new();
    let mut seeded = false;
    let mut subdivisions = 0;
    while let Some((codim, m, cone)) = failure(&fan, a)? {
        if !seeded {
            seeded = true;
            let before = fan.rays().len();
            let normals = rational_eigenrays(&a.transpose());
            if !normals.is_empty() {
                fan = split_by_planes(&fan, &normals)?;
                log.push(format!(
                    "cut by {} rational invariant planes: {} maximal cones",
                    normals.len() / 2,
                    fan.max_cones().len()
                ));
            }
            for r in &rational_eigenrays(a) {
                fan = star_subdivide_trusted(&fan, r)?;
            }
            if fan.rays().len() > before {
                subdivisions += fan.rays().len() - before;
                log.push(format!(
                    "{} rays added along invariant subspaces",
                    fan.rays().len() - before
                ));
            }
            continue;
        }
        if subdivisions >= budget.subdivisions {
            break;
        }
        let mut progressed = false;
        for point in candidates(&fan, &m, &cone) {
            let next = star_subdivide_trusted(&fan, &point)?;
            if next.rays().len() > fan.rays().len() {
                fan = next;
                subdivisions += 1;
                log.push(format!(
                    "codimension {codim} failure: subdivided at {}",
                    format_ivec(&point)
                ));
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    let fan = Fan::new(fan.rays().to_vec(), fan.max_cones().to_vec())?;
    match scan_k0(&fan, a, budget)? {
        Some(k0) => {
            log.push(format!(
                "certified 1- and 2-stable for powers {k0} through {}",
                2 * k0
            ));
            Ok(StabilizationOutcome {
                case,
                verdict: Outcome::StabilizedFan {
                    fan,
                    k0,
                    two_stable: true,
                    certified_powers: (k0..=2 * k0).collect(),
                },
                log,
            })
        }
        None => Ok(StabilizationOutcome {
            case,
            verdict: Outcome::SearchExhausted {
                budget: budget.subdivisions,
                reason: format!(
                    "no certificate after {subdivisions} subdivisions and powers up to {}",
                    budget.k0_scan
                ),
            },
            log,
        }),
    }
}
