//! All eigenvalues of equal modulus with rational angles: some power of the
//! matrix is a scalar, so the map generates a finite group modulo scalars
//! and an invariant fan exists.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fan::refine::check_invariant;
use crate::fan::{hyperplane_fan, orbit_intersection_fan, simplicialize_preserving_rays, Fan};
use crate::linalg::IntMatrix;
use crate::spectra::CaseLabel;

use super::{certify, require_case, Outcome, StabilizationOutcome};

/// Upper bound on the order of the matrix modulo positive scalars: the
/// least common multiple of the admissible eigenvalue ratio orders, doubled
/// for a sign.
const ORDER_BOUND: usize = 2 * 2520;

/// `A, A^2, ..., A^(m-1)` where `A^m` is a positive scalar.
pub fn finite_orbit(a: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let mut group = vec![IntMatrix::identity(3)];
    let mut power = a.clone();
    for _ in 1..=ORDER_BOUND {
        if power.as_scalar().is_some_and(|c| c.is_positive()) {
            return Ok(group);
        }
        group.push(power.clone());
        power = power.mul(a).primitive_part();
    }
    Err(Error::ConstructionFailed(
        "no power of the matrix is a positive scalar".into(),
    ))
}

pub fn stabilize_equal_moduli(f: &Fan, a: &IntMatrix) -> Result<StabilizationOutcome> {
    require_case(a, &[CaseLabel::EqualModuli])?;
    f.require_complete()?;
    let group = finite_orbit(a)?;
    let mut log = vec![format!(
        "the matrix has order {} modulo positive scalars",
        group.len()
    )];
    let fan = if group.len() == 1 && f.is_simplicial() {
        log.push("trivial group: the fan is already invariant".into());
        f.clone()
    } else {
        let h = hyperplane_fan(f)?;
        log.push(format!(
            "hyperplane fan of the walls: {} maximal cones",
            h.max_cones().len()
        ));
        let o = orbit_intersection_fan(&h, &group)?;
        log.push(format!(
            "common refinement over the orbit: {} maximal cones",
            o.max_cones().len()
        ));
        let s = simplicialize_preserving_rays(&o)?;
        if s.max_cones().len() != o.max_cones().len() {
            log.push(format!("triangulated: {} maximal cones", s.max_cones().len()));
        }
        s
    };
    check_invariant(&fan, &group)?;
    if let Some(k) = certify(&fan, a, &[1, 2], true)? {
        return Err(Error::ConstructionFailed(format!(
            "invariant fan fails the stability check for power {k}"
        )));
    }
    log.push("certified 1- and 2-stable for powers 1 and 2".into());
    Ok(StabilizationOutcome {
        case: CaseLabel::EqualModuli,
        verdict: Outcome::StabilizedFan {
            fan,
            k0: 1,
            two_stable: true,
            certified_powers: vec![1, 2],
        },
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lattice::primitive;

    fn two_cyclic() -> IntMatrix {
        IntMatrix::from_i64([[0, 0, 2], [2, 0, 0], [0, 2, 0]])
    }

    #[test]
    fn identity_keeps_the_fan() {
        let p3 = Fan::projective_space();
        let out = stabilize_equal_moduli(&p3, &IntMatrix::identity(3)).unwrap();
        assert_eq!(out.verdict.fan().unwrap(), &p3);
    }

    #[test]
    fn scaled_cyclic_permutation() {
        let out = stabilize_equal_moduli(&Fan::projective_space(), &two_cyclic()).unwrap();
        let fan = out.verdict.fan().unwrap();
        assert_eq!(fan.max_cones().len(), 24);
        assert_eq!(out.verdict.k0(), Some(1));
        // rays are permuted
        for r in fan.rays() {
            assert!(fan.ray_index(&primitive(&two_cyclic().apply(r))).is_some());
        }
    }

    #[test]
    fn quarter_turn_on_octants() {
        let rot = IntMatrix::from_i64([[0, -1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(finite_orbit(&rot).unwrap().len(), 4);
        let out = stabilize_equal_moduli(&Fan::octants(), &rot).unwrap();
        assert_eq!(out.verdict.fan().unwrap(), &Fan::octants());
    }

    #[test]
    fn wrong_case() {
        let a = IntMatrix::diag(&[2, 3, 5]);
        assert!(matches!(
            stabilize_equal_moduli(&Fan::projective_space(), &a),
            Err(Error::WrongCase(_))
        ));
    }
}
