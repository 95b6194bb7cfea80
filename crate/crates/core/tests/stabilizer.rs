use proptest::prelude::*;

use toric_dynamics::dynamics::{is_2_stable, iterate_pullback_mismatch, strong_1_stability};
use toric_dynamics::fan::{star_subdivide, Fan};
use toric_dynamics::linalg::lattice::{ivec, primitive, IVec};
use toric_dynamics::linalg::IntMatrix;
use toric_dynamics::spectra::{classify_case, CaseLabel};
use toric_dynamics::stabilizer::{case2_subclassify, stabilize, Budget, Outcome};

fn budget() -> Budget {
    Budget {
        capture_steps: 60,
        subdivisions: 12,
        k0_scan: 8,
    }
}

fn direction(bound: i64) -> impl Strategy<Value = IVec> {
    (-bound..=bound, -bound..=bound, -bound..=bound)
        .prop_filter("nonzero", |(a, b, c)| (*a, *b, *c) != (0, 0, 0))
        .prop_map(|(a, b, c)| primitive(&ivec(a, b, c)))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    prop::array::uniform3(prop::array::uniform3(-2i64..=2))
        .prop_map(IntMatrix::from_i64)
        .prop_filter("diagonalizable and invertible", |a| classify_case(a).is_ok())
}

fn base_fan() -> impl Strategy<Value = Fan> {
    (
        prop_oneof![Just(Fan::projective_space()), Just(Fan::octants())],
        prop::collection::vec(direction(2), 0..2),
    )
        .prop_map(|(f, dirs)| dirs.iter().fold(f, |g, d| star_subdivide(&g, d).unwrap()))
}

/// Checks a positive verdict without trusting the stabilizer.
fn certify(f: &Fan, a: &IntMatrix, outcome: &Outcome) -> Result<(), TestCaseError> {
    if let Outcome::StabilizedFan {
        fan,
        k0,
        two_stable,
        certified_powers,
    } = outcome
    {
        prop_assert!(fan.is_complete());
        prop_assert!(fan.refines(f));
        prop_assert!(certified_powers.contains(k0));
        for &k in certified_powers {
            let ak = a.pow(k as u32);
            prop_assert!(strong_1_stability(fan, &ak).unwrap().is_stable(), "power {}", k);
            if *two_stable {
                prop_assert!(is_2_stable(fan, &ak).unwrap().is_stable(), "power {}", k);
            }
        }
        if fan.is_simplicial() {
            let ak0 = a.pow(*k0 as u32);
            prop_assert_eq!(iterate_pullback_mismatch(fan, &ak0, 4).unwrap(), None);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn positive_verdicts_are_certified(f in base_fan(), a in matrix()) {
        let out = stabilize(&f, &a, &budget()).unwrap();
        prop_assert_eq!(out.case, classify_case(&a).unwrap().label);
        prop_assert!(!out.log.is_empty());
        certify(&f, &a, &out.verdict)?;
    }

    /// A fan that cannot be refined into a stable one stays unstable under
    /// any refinement and small iterates.
    #[test]
    fn refinement_obstructions_persist(
        dirs in prop::collection::vec(direction(3), 1..4),
        which in 0usize..2,
    ) {
        let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
        let f = if which == 0 {
            star_subdivide(&Fan::projective_space(), &ivec(1, 1, 1)).unwrap()
        } else {
            let f = star_subdivide(&Fan::octants(), &ivec(1, 0, 1)).unwrap();
            star_subdivide(&f, &ivec(1, 2, 1)).unwrap()
        };
        let report = case2_subclassify(&f, &a, &budget()).unwrap();
        prop_assume!(matches!(report.outcome.verdict, Outcome::NotByRefinement { .. }));
        let refined = dirs.iter().fold(f, |g, d| star_subdivide(&g, d).unwrap());
        for k in 1..=3u32 {
            prop_assert!(!strong_1_stability(&refined, &a.pow(k)).unwrap().is_stable(), "power {}", k);
        }
    }
}

#[test]
fn obstructed_fans_have_expected_subcases() {
    let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
    let f = star_subdivide(&Fan::projective_space(), &ivec(1, 1, 1)).unwrap();
    let r = case2_subclassify(&f, &a, &budget()).unwrap();
    assert_eq!(r.subcase.label, 4);
    assert!(!r.subcase.attracted_rays.is_empty());

    let g = star_subdivide(&Fan::octants(), &ivec(1, 0, 1)).unwrap();
    let g = star_subdivide(&g, &ivec(1, 2, 1)).unwrap();
    let r = case2_subclassify(&g, &a, &budget()).unwrap();
    assert_eq!(r.subcase.label, 3);
}

#[test]
fn every_case_label_has_a_verdict() {
    let examples = [
        ([[1, 1, 5], [4, 1, 2], [1, 5, 1]], CaseLabel::IrrationalPairDominated),
        ([[0, 0, 2], [2, 0, 0], [0, 2, 0]], CaseLabel::EqualModuli),
        ([[3, 0, 0], [0, 0, -9], [0, 1, 1]], CaseLabel::IrrationalPairEqual),
    ];
    for (rows, label) in examples {
        let a = IntMatrix::from_i64(rows);
        let out = stabilize(&Fan::projective_space(), &a, &Budget::default()).unwrap();
        assert_eq!(out.case, label);
        certify(&Fan::projective_space(), &a, &out.verdict).unwrap();
    }
}

#[test]
fn search_stabilizes_triangular_map() {
    let a = IntMatrix::from_i64([[2, 0, 0], [1, 3, 0], [1, 1, 5]]);
    let f = Fan::projective_space();
    let out = stabilize(&f, &a, &Budget::default()).unwrap();
    assert_eq!(out.case, CaseLabel::AbsIsolated);
    assert_eq!(out.verdict.name(), "StabilizedFan");
    certify(&f, &a, &out.verdict).unwrap();
}

#[test]
fn irrational_eigenvectors_exhaust_small_budgets() {
    let a = IntMatrix::from_i64([[2, 1, 0], [1, 3, 1], [0, 1, 5]]);
    let tiny = Budget {
        capture_steps: 5,
        subdivisions: 5,
        k0_scan: 5,
    };
    let out = stabilize(&Fan::projective_space(), &a, &tiny).unwrap();
    assert!(matches!(out.verdict, Outcome::SearchExhausted { .. }), "{:?}", out);
}
