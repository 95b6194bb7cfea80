//! Two distinct eigenvalue moduli with rational angles. A power `B = A^l`
//! has two positive eigenvalues: one on a line `L` and one on a plane `P`.
//! Every other direction moves inside the plane spanned by `L` and itself,
//! sliding monotonically between `L` and `P`. Closing the rays in each such
//! plane under `B` and `B^-1` makes every ray orbit regular.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::refine::{push_plane, star_subdivide_trusted};
use crate::fan::{plane_section_fan, simplicialize_preserving_rays, split_by_planes, Fan, RationalPlane};
use crate::linalg::lattice::{self, cross, dot, format_ivec, primitive, IVec};
use crate::linalg::{factor_over_q, IntMatrix};
use crate::spectra::{CaseLabel, ROOT_OF_UNITY_BOUND};

use super::{certify, require_case, Budget, Outcome, StabilizationOutcome};

/// Spectral data of a power with exactly two positive eigenvalues.
#[derive(Clone, Debug)]
pub struct SplitPower {
    pub exponent: usize,
    pub matrix: IntMatrix,
    /// Primitive generator of the simple eigenline.
    pub line: IVec,
    pub line_value: BigRational,
    /// Primitive normal of the double eigenplane.
    pub plane_normal: IVec,
    pub plane_value: BigRational,
}

fn shifted(b: &IntMatrix, lambda: &BigRational) -> Vec<IVec> {
    let lambda = lambda.to_integer();
    (0..3)
        .map(|i| {
            [0, 1, 2].map(|j| {
                let d = if i == j { lambda.clone() } else { BigInt::zero() };
                b.get(i, j) - d
            })
        })
        .collect()
}

/// Smallest power of `A` whose spectrum is two distinct positive values.
pub fn split_power(a: &IntMatrix) -> Result<SplitPower> {
    for exponent in 1..=2 * ROOT_OF_UNITY_BOUND {
        let b = a.pow(exponent as u32);
        let factors = factor_over_q(&b.char_poly());
        if factors.len() != 2 || factors.iter().any(|f| f.poly.degree() != Some(1)) {
            continue;
        }
        let root = |i: usize| -factors[i].poly.coeff(0);
        if !root(0).is_positive() || !root(1).is_positive() {
            continue;
        }
        let (single, double) = if factors[0].multiplicity == 1 { (0, 1) } else { (1, 0) };
        let (line_value, plane_value) = (root(single), root(double));
        let rows = shifted(&b, &line_value);
        let line = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| cross(&rows[i], &rows[j]))
            .find(|v| !lattice::is_zero(v))
            .map(|v| primitive(&v))
            .ok_or_else(|| Error::ConstructionFailed("eigenline not found".into()))?;
        let plane_normal = shifted(&b, &plane_value)
            .into_iter()
            .find(|r| !lattice::is_zero(r))
            .map(|r| primitive(&r))
            .ok_or_else(|| Error::ConstructionFailed("eigenplane not found".into()))?;
        return Ok(SplitPower {
            exponent,
            matrix: b,
            line,
            line_value,
            plane_normal,
            plane_value,
        });
    }
    Err(Error::ConstructionFailed(
        "no power has a two-valued positive spectrum".into(),
    ))
}

fn is_eigen(b: &IntMatrix, r: &IVec) -> bool {
    lattice::is_zero(&cross(&b.apply(r), r))
}

fn to_rational(v: &IVec) -> [BigRational; 3] {
    v.clone().map(BigRational::from_integer)
}

/// Primitive integer vector in the direction of a nonzero rational vector.
fn primitive_of(v: &[BigRational; 3]) -> IVec {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(&v.clone().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()))
}

/// Coordinates `(alpha, beta)` with `r = alpha * line + beta * across` for a
/// vector `r` in the plane spanned by the two.
fn plane_coordinates(s: &SplitPower, across: &IVec, r: &IVec) -> (BigRational, BigRational) {
    let n = &s.plane_normal;
    let alpha = BigRational::new(dot(n, r), dot(n, &s.line));
    let rest: Vec<BigRational> = (0..3)
        .map(|i| BigRational::from_integer(r[i].clone()) - &alpha * BigRational::from_integer(s.line[i].clone()))
        .collect();
    let num: BigRational = (0..3)
        .map(|i| &rest[i] * BigRational::from_integer(across[i].clone()))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let beta = num / BigRational::from_integer(dot(across, across));
    (alpha, beta)
}

/// Positions `t * ratio^k` lying in `[min T, max T]` for `t` in `T`, that are
/// not already in `T`. Returns `None` once more than `limit` are found.
fn closure_positions(positions: &[BigRational], ratio: &BigRational, limit: usize) -> Option<Vec<BigRational>> {
    let ratio = if ratio < &BigRational::one() { ratio.recip() } else { ratio.clone() };
    let lo = positions.iter().min()?.clone();
    let hi = positions.iter().max()?.clone();
    let mut out: Vec<BigRational> = Vec::new();
    for t in positions {
        let mut up = t * &ratio;
        while up <= hi {
            out.push(up.clone());
            up = &up * &ratio;
        }
        let mut down = t / &ratio;
        while down >= lo {
            out.push(down.clone());
            down = &down / &ratio;
        }
        if out.len() > limit {
            return None;
        }
    }
    out.sort();
    out.dedup();
    out.retain(|t| !positions.contains(t));
    Some(out)
}

fn exhausted(case: CaseLabel, budget: &Budget, log: Vec<String>) -> StabilizationOutcome {
    StabilizationOutcome {
        case,
        verdict: Outcome::SearchExhausted {
            budget: budget.capture_steps,
            reason: "closing the plane sections needs more rays than the capture budget".into(),
        },
        log,
    }
}

pub fn stabilize_two_moduli(f: &Fan, a: &IntMatrix, budget: &Budget) -> Result<StabilizationOutcome> {
    let case = require_case(a, &[CaseLabel::TwoModuliHighPair, CaseLabel::TwoModuliLowPair])?;
    f.require_complete()?;
    let s = split_power(a)?;
    let b = &s.matrix;
    let ratio = &s.plane_value / &s.line_value;
    let mut log = vec![format!(
        "power {}: eigenvalue {} on line {}, eigenvalue {} on plane with normal {}",
        s.exponent,
        s.line_value,
        format_ivec(&s.line),
        s.plane_value,
        format_ivec(&s.plane_normal)
    )];

    let mut normals: Vec<IVec> = Vec::new();
    for v in f.rays() {
        if is_eigen(b, v) {
            continue;
        }
        let mut img = v.clone();
        for _ in 0..s.exponent {
            push_plane(&mut normals, &cross(&s.line, &img));
            img = a.apply(&img);
        }
    }
    let planes = normals.clone();
    push_plane(&mut normals, &s.plane_normal);
    let mut fan = split_by_planes(f, &normals)?;
    log.push(format!(
        "cut by {} planes through the eigenline and by the eigenplane: {} maximal cones",
        planes.len(),
        fan.max_cones().len()
    ));

    let mut acrosses = Vec::with_capacity(planes.len());
    for n in &planes {
        let across = primitive(&cross(n, &s.plane_normal));
        for r in [s.line.clone(), lattice::neg(&s.line), across.clone(), lattice::neg(&across)] {
            fan = star_subdivide_trusted(&fan, &r)?;
        }
        acrosses.push(across);
    }

    let mut added: Vec<IVec> = Vec::new();
    for (n, across) in planes.iter().zip(&acrosses) {
        let plane = RationalPlane::new(n).expect("nonzero normal");
        let section = plane_section_fan(&fan, &plane)?;
        let mut quadrants: BTreeMap<(bool, bool), Vec<BigRational>> = BTreeMap::new();
        for r in &section.rays {
            if is_eigen(b, r) {
                continue;
            }
            let (alpha, beta) = plane_coordinates(&s, across, r);
            quadrants
                .entry((alpha.is_positive(), beta.is_positive()))
                .or_default()
                .push((beta / alpha).abs());
        }
        for ((pos_alpha, pos_beta), positions) in quadrants {
            let remaining = budget.capture_steps.saturating_sub(added.len());
            let Some(new_positions) = closure_positions(&positions, &ratio, remaining) else {
                return Ok(exhausted(case, budget, log));
            };
            for t in new_positions {
                let sa = if pos_alpha { BigRational::one() } else { -BigRational::one() };
                let sb = if pos_beta { t } else { -t };
                let line = to_rational(&s.line);
                let acr = to_rational(across);
                let v: [BigRational; 3] = [0, 1, 2].map(|i| &sa * &line[i] + &sb * &acr[i]);
                added.push(primitive_of(&v));
            }
            if added.len() > budget.capture_steps {
                return Ok(exhausted(case, budget, log));
            }
        }
    }
    for r in &added {
        fan = star_subdivide_trusted(&fan, r)?;
    }
    log.push(format!(
        "closed the plane sections under the power and its inverse: {} rays added",
        added.len()
    ));
    let fan = simplicialize_preserving_rays(&fan)?;
    log.push(format!(
        "simplicial fan with {} rays and {} maximal cones",
        fan.rays().len(),
        fan.max_cones().len()
    ));

    let powers = vec![s.exponent, 2 * s.exponent];
    if let Some(k) = certify(&fan, a, &powers, true)? {
        return Err(Error::ConstructionFailed(format!(
            "constructed fan fails the stability check for power {k}"
        )));
    }
    log.push(format!("certified 1- and 2-stable for powers {:?}", powers));
    Ok(StabilizationOutcome {
        case,
        verdict: Outcome::StabilizedFan {
            fan,
            k0: s.exponent,
            two_stable: true,
            certified_powers: powers,
        },
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lattice::ivec;

    #[test]
    fn split_powers() {
        let s = split_power(&IntMatrix::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, 3]])).unwrap();
        assert_eq!(s.exponent, 1);
        assert!(lattice::parallel(&s.line, &ivec(-1, 1, 0)));
        assert_eq!(s.line_value, BigRational::one());
        assert!(lattice::parallel(&s.plane_normal, &ivec(1, -1, 0)));
        let s = split_power(&IntMatrix::diag(&[2, -2, 1])).unwrap();
        assert_eq!(s.exponent, 2);
        let s = split_power(&IntMatrix::from_i64([[1, 0, 0], [0, 0, -4], [0, 1, 0]])).unwrap();
        assert_eq!(s.exponent, 4);
    }

    #[test]
    fn closure_of_positions() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let out = closure_positions(&[r(1, 1), r(10, 1)], &r(3, 1), 100).unwrap();
        assert_eq!(out, vec![r(10, 9), r(3, 1), r(10, 3), r(9, 1)]);
        assert_eq!(closure_positions(&[r(1, 1), r(10, 1)], &r(1, 3), 100).unwrap(), out);
        assert!(closure_positions(&[r(1, 1)], &r(2, 1), 100).unwrap().is_empty());
        assert!(closure_positions(&[r(1, 1), r(1000, 1)], &r(2, 1), 5).is_none());
    }

    fn check(a: IntMatrix, f: Fan) -> StabilizationOutcome {
        let out = stabilize_two_moduli(&f, &a, &Budget::default()).unwrap();
        let fan = out.verdict.fan().expect("stabilized");
        assert!(fan.refines(&f));
        assert!(fan.is_simplicial());
        out
    }

    #[test]
    fn coordinate_invariant_diagonal() {
        let out = check(IntMatrix::diag(&[3, 3, 1]), Fan::projective_space());
        assert_eq!(out.verdict.k0(), Some(1));
    }

    #[test]
    fn symmetric_block() {
        let out = check(
            IntMatrix::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, 3]]),
            Fan::projective_space(),
        );
        let fan = out.verdict.fan().unwrap();
        assert!(fan.ray_index(&ivec(1, 1, 0)).is_some());
    }

    #[test]
    fn sign_reduction() {
        let out = check(IntMatrix::diag(&[2, -2, 1]), Fan::projective_space());
        assert_eq!(out.verdict.k0(), Some(2));
    }

    #[test]
    fn generic_planes_on_octants() {
        check(
            IntMatrix::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, 3]]),
            Fan::octants(),
        );
        check(IntMatrix::from_i64([[4, 1, 1], [1, 4, 1], [1, 1, 4]]), Fan::projective_space());
        check(IntMatrix::from_i64([[4, 1, 1], [1, 4, 1], [1, 1, 4]]), Fan::octants());
    }
}
