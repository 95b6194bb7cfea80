use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use toric_dynamics::dynamics::{divisor_pullback, is_2_stable, strong_1_stability, TInvariantDivisor};
use toric_dynamics::fan::{star_subdivide, Fan};
use toric_dynamics::linalg::lattice::{ivec, primitive, IVec};
use toric_dynamics::linalg::IntMatrix;
use toric_dynamics::polytope::{degree_p, LatticePolytope};

fn direction() -> impl Strategy<Value = IVec> {
    (-2i64..=2, -2i64..=2, -2i64..=2)
        .prop_filter("nonzero", |(a, b, c)| (*a, *b, *c) != (0, 0, 0))
        .prop_map(|(a, b, c)| primitive(&ivec(a, b, c)))
}

fn refined_fan() -> impl Strategy<Value = Fan> {
    (
        prop_oneof![Just(Fan::projective_space()), Just(Fan::octants())],
        prop::collection::vec(direction(), 0..3),
    )
        .prop_map(|(f, dirs)| dirs.iter().fold(f, |g, d| star_subdivide(&g, d).unwrap()))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    prop::array::uniform3(prop::array::uniform3(-3i64..=3))
        .prop_map(IntMatrix::from_i64)
        .prop_filter("nonsingular", |a| a.det() != BigInt::from(0))
}

fn positive_matrix() -> impl Strategy<Value = IntMatrix> {
    prop::array::uniform3(prop::array::uniform3(1i64..=5))
        .prop_map(IntMatrix::from_i64)
        .prop_filter("nonsingular", |a| a.det() != BigInt::from(0))
}

fn unimodular() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..4).prop_map(|ops| {
        ops.into_iter().fold(IntMatrix::identity(3), |m, (i, j, c)| {
            if i == j {
                return m;
            }
            let mut rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            rows[i][j] = c;
            m.mul(&IntMatrix::from_i64(rows))
        })
    })
}

fn small_divisor(n: usize) -> impl Strategy<Value = TInvariantDivisor> {
    prop::collection::vec(-3i64..=3, n).prop_map(|c| TInvariantDivisor::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn positive_scalars_are_stable(f in refined_fan(), c in 1i64..=4) {
        let a = IntMatrix::diag(&[c, c, c]);
        prop_assert!(strong_1_stability(&f, &a).unwrap().is_stable());
        prop_assert!(is_2_stable(&f, &a).unwrap().is_stable());
    }

    /// Changing lattice coordinates changes nothing.
    #[test]
    fn verdict_is_coordinate_free(f in refined_fan(), a in matrix(), g in unimodular()) {
        let g_inv = g.adjugate().scale(&g.det());
        prop_assert_eq!(g.mul(&g_inv), IntMatrix::identity(3));
        let conjugated = g.mul(&a).mul(&g_inv);
        let moved = f.transform(&g).unwrap();
        prop_assert_eq!(
            strong_1_stability(&f, &a).unwrap().is_stable(),
            strong_1_stability(&moved, &conjugated).unwrap().is_stable()
        );
        prop_assert_eq!(
            is_2_stable(&f, &a).unwrap().is_stable(),
            is_2_stable(&moved, &conjugated).unwrap().is_stable()
        );
    }

    #[test]
    fn pullback_is_linear(
        (f, d1, d2) in refined_fan().prop_flat_map(|f| {
            let n = f.rays().len();
            (Just(f), small_divisor(n), small_divisor(n))
        }),
        a in matrix(),
    ) {
        let sum = TInvariantDivisor {
            coeffs: d1.coeffs.iter().zip(&d2.coeffs).map(|(x, y)| x + y).collect(),
        };
        let lhs = divisor_pullback(&f, &a, &sum).unwrap();
        let p1 = divisor_pullback(&f, &a, &d1).unwrap();
        let p2 = divisor_pullback(&f, &a, &d2).unwrap();
        let rhs: Vec<BigRational> = p1.coeffs.iter().zip(&p2.coeffs).map(|(x, y)| x + y).collect();
        prop_assert_eq!(lhs.coeffs, rhs);
    }

}

proptest! {
    #![proptest_config(ProptestConfig { max_global_rejects: 20_000, ..ProptestConfig::with_cases(16) })]

    /// On projective space stability makes the degree multiplicative.
    #[test]
    fn stable_degrees_multiply(a in positive_matrix()) {
        let p3 = Fan::projective_space();
        prop_assume!(strong_1_stability(&p3, &a).unwrap().is_stable());
        let simplex = LatticePolytope::standard_simplex();
        let d = degree_p(&a, &simplex, 1).unwrap();
        let mut power = a.clone();
        let mut expected = d.clone();
        for _ in 2..=4 {
            power = power.mul(&a);
            expected = &expected * &d;
            prop_assert_eq!(degree_p(&power, &simplex, 1).unwrap(), expected.clone());
        }
    }
}

#[test]
fn example_matrix_on_projective_space() {
    let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
    let p3 = Fan::projective_space();
    assert!(strong_1_stability(&p3, &a).unwrap().is_stable());
    let two = is_2_stable(&p3, &a).unwrap();
    assert!(!two.is_stable());
    assert!(two.witness.is_some());
}
