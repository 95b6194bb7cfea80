use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use toric_dynamics::linalg::{ivec, IVec, IntMatrix};
use toric_dynamics::polytope::degrees::closed_form_degree;
use toric_dynamics::polytope::{
    degree_p, homogenization_oracle, minkowski_sum, mixed_volume, LatticePolytope,
};

fn small_point() -> impl Strategy<Value = IVec> {
    (-2i64..=2, -2i64..=2, -2i64..=2).prop_map(|(a, b, c)| ivec(a, b, c))
}

fn small_polytope() -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(small_point(), 1..6).prop_map(|pts| LatticePolytope::new(&pts))
}

fn invertible_matrix(bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::array::uniform3(prop::array::uniform3(-bound..=bound))
        .prop_map(IntMatrix::from_i64)
        .prop_filter("singular", |m| !m.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn mixed_volume_is_multilinear(
        p in small_polytope(),
        q in small_polytope(),
        r in small_polytope(),
        s in small_polytope(),
    ) {
        let lhs = mixed_volume(&minkowski_sum(&p, &q), &r, &s);
        let rhs = mixed_volume(&p, &r, &s) + mixed_volume(&q, &r, &s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_volume_is_symmetric(p in small_polytope(), q in small_polytope(), r in small_polytope()) {
        let base = mixed_volume(&p, &q, &r);
        prop_assert_eq!(&base, &mixed_volume(&q, &p, &r));
        prop_assert_eq!(&base, &mixed_volume(&r, &q, &p));
        prop_assert_eq!(&base, &mixed_volume(&p, &r, &q));
        prop_assert!(!base.is_negative());
    }

    #[test]
    fn diagonal_mixed_volume_is_volume(p in small_polytope()) {
        prop_assert_eq!(mixed_volume(&p, &p, &p), p.volume());
    }

    #[test]
    fn volume_is_translation_invariant(p in small_polytope(), t in small_point()) {
        prop_assert_eq!(p.translate(&t).volume(), p.volume());
    }

    #[test]
    fn degree_duality(a in invertible_matrix(3)) {
        let simplex = LatticePolytope::standard_simplex();
        let dual = a.dual();
        let det = BigRational::from_integer(a.det().abs());
        let d1 = degree_p(&a, &simplex, 1).unwrap();
        let d2 = degree_p(&a, &simplex, 2).unwrap();
        prop_assert_eq!(&d1 * &det, degree_p(&dual, &simplex, 2).unwrap());
        prop_assert_eq!(d2, degree_p(&dual, &simplex, 1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn oracle_agrees_with_mixed_volume(a in invertible_matrix(4)) {
        let oracle = homogenization_oracle(&a).unwrap();
        prop_assert_eq!(&oracle, &closed_form_degree(&a));
        let mv = degree_p(&a, &LatticePolytope::standard_simplex(), 1).unwrap();
        prop_assert_eq!(mv, BigRational::from_integer(oracle));
    }
}

#[test]
fn top_degree_is_determinant() {
    let simplex = LatticePolytope::standard_simplex();
    let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
    let d3 = degree_p(&a, &simplex, 3).unwrap();
    assert_eq!(d3, BigRational::from_integer(a.det().abs()));
    assert_eq!(a.det().abs(), BigInt::from(84));
}
