//! Acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_dynamics::dynamics::{is_2_stable, iterate_pullback_mismatch, maps_regularly, strong_1_stability};
use toric_dynamics::fan::{star_subdivide, Fan};
use toric_dynamics::linalg::lattice::{ivec, primitive, IVec};
use toric_dynamics::linalg::{IntMatrix, RationalPoly};
use toric_dynamics::polytope::{
    degree_p, degree_sequence, homogenization_oracle, min_recurrence, mixed_volume, LatticePolytope,
};
use toric_dynamics::spectra::{classify_case, CaseLabel};
use toric_dynamics::stabilizer::{
    case2_subclassify, case_verdict, stabilize_equal_moduli, stabilize_two_moduli, Budget, Obstructed, Outcome,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn example() -> IntMatrix {
    IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]])
}

fn scaled_cyclic() -> IntMatrix {
    IntMatrix::from_i64([[0, 0, 2], [2, 0, 0], [0, 2, 0]])
}

fn symmetric_block() -> IntMatrix {
    IntMatrix::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, 3]])
}

fn equal_pair() -> IntMatrix {
    IntMatrix::from_i64([[3, 0, 0], [0, 0, -9], [0, 1, 1]])
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn random_matrix(rng: &mut ChaCha8Rng, bound: i64) -> IntMatrix {
    loop {
        let mut rows = [[0i64; 3]; 3];
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-bound..=bound);
            }
        }
        let a = IntMatrix::from_i64(rows);
        if !a.det().is_zero() {
            return a;
        }
    }
}

fn random_positive_diagonal(rng: &mut ChaCha8Rng) -> IntMatrix {
    IntMatrix::diag(&[rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4)])
}

fn random_direction(rng: &mut ChaCha8Rng, bound: i64) -> IVec {
    loop {
        let v = ivec(
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        if v.iter().any(|x| !x.is_zero()) {
            return primitive(&v);
        }
    }
}

fn random_refinement(rng: &mut ChaCha8Rng, base: &Fan, max_steps: usize, bound: i64) -> Fan {
    let steps = rng.gen_range(1..=max_steps);
    let mut f = base.clone();
    for _ in 0..steps {
        f = star_subdivide(&f, &random_direction(rng, bound)).expect("star subdivision of a complete fan");
    }
    f
}

fn random_polytope(rng: &mut ChaCha8Rng) -> LatticePolytope {
    let n = rng.gen_range(1..=5);
    let pts: Vec<IVec> = (0..n)
        .map(|_| ivec(rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
        .collect();
    LatticePolytope::new(&pts)
}

/// Example matrix: spectrum, case, stability on projective space, subcase
/// and the dual obstruction.
fn criterion_1() -> Check {
    let a = example();
    let quadratic = RationalPoly::from_ints(&[12, 4, 1]);
    let linear = RationalPoly::from_ints(&[-7, 1]);
    ensure!(a.char_poly() == &linear * &quadratic, "char poly is {}", a.char_poly());
    let case = classify_case(&a).map_err(|e| e.to_string())?;
    ensure!(case.label == CaseLabel::IrrationalPairDominated, "case {}", case.label);
    ensure!(case.ratio_root_of_unity == Some(false), "ratio condition {:?}", case.ratio_root_of_unity);
    let p3 = Fan::projective_space();
    ensure!(strong_1_stability(&p3, &a).unwrap().is_stable(), "not 1-stable on P3");
    ensure!(!is_2_stable(&p3, &a).unwrap().is_stable(), "2-stable on P3");
    let report = case2_subclassify(&p3, &a, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(report.subcase.label == 5, "subcase {}", report.subcase.label);
    let dual = a.dual();
    ensure!(
        classify_case(&dual).unwrap().label == CaseLabel::IrrationalPairDominant,
        "dual case"
    );
    let verdict = case_verdict(&dual).map_err(|e| e.to_string())?.verdict;
    ensure!(
        matches!(verdict, Outcome::NoModelExists { scope: Obstructed::OneStable, .. }),
        "dual verdict {verdict:?}"
    );
    Ok("char poly (x-7)(x^2+4x+12); subcase 5; dual has no 1-stable model".into())
}

fn criterion_2() -> Check {
    let a = example();
    let simplex = LatticePolytope::standard_simplex();
    let seq = degree_sequence(&a, &simplex, 1, 5).map_err(|e| e.to_string())?;
    let expected: Vec<BigRational> = [7, 49, 343, 2401, 16807].iter().map(|&d| rat(d)).collect();
    ensure!(seq.values == expected, "degrees {:?}", seq.values);
    let mut power = IntMatrix::identity(3);
    for (k, d) in seq.values.iter().enumerate() {
        power = power.mul(&a);
        let direct = degree_p(&power, &simplex, 1).map_err(|e| e.to_string())?;
        let oracle = BigRational::from_integer(homogenization_oracle(&power).map_err(|e| e.to_string())?);
        ensure!(&direct == d && &oracle == d, "k = {}: {direct} vs oracle {oracle}", k + 1);
    }
    let rec = min_recurrence(&seq.values)
        .map_err(|e| e.to_string())?
        .ok_or("no recurrence")?;
    ensure!(rec.coeffs == vec![rat(7)], "recurrence {rec}");
    Ok(format!("7, 49, 343, 2401, 16807; {rec}"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let simplex = LatticePolytope::standard_simplex();
    let trials = 25;
    for _ in 0..trials {
        let a = random_matrix(&mut rng, 3);
        let dual = a.dual();
        for k in 1..=4 {
            ensure!(a.pow(k).dual() == dual.pow(k), "(A^{k})' != (A')^{k} for {a}");
        }
        let det = BigRational::from_integer(a.det().abs());
        let d1 = degree_p(&a, &simplex, 1).unwrap();
        let d2 = degree_p(&a, &simplex, 2).unwrap();
        let d1_dual = degree_p(&dual, &simplex, 1).unwrap();
        let d2_dual = degree_p(&dual, &simplex, 2).unwrap();
        ensure!(d2 == d1_dual, "deg2(A) = {d2} but deg1(A') = {d1_dual} for {a}");
        ensure!(&d1 * &det == d2_dual, "deg1(A) |det| = {} but deg2(A') = {d2_dual} for {a}", &d1 * &det);
        let double_dual = dual.dual();
        let d1_double = degree_p(&double_dual, &simplex, 1).unwrap();
        ensure!(d1_double == &d1 * &det, "identities disagree through A'' for {a}");
    }
    Ok(format!("{trials} random matrices"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let trials = 40;
    let (mut stable, mut by_mismatch, mut by_witness) = (0, 0, 0);
    for i in 0..trials {
        let (f, a) = if i % 2 == 0 {
            (random_refinement(&mut rng, &Fan::octants(), 3, 3), random_matrix(&mut rng, 2))
        } else {
            (random_refinement(&mut rng, &Fan::octants(), 3, 1), random_positive_diagonal(&mut rng))
        };
        let report = strong_1_stability(&f, &a).unwrap();
        let mismatch = iterate_pullback_mismatch(&f, &a, 6).map_err(|e| e.to_string())?;
        if report.is_stable() {
            ensure!(mismatch.is_none(), "stable but pullbacks differ at {mismatch:?} for {a}");
            stable += 1;
        } else if mismatch.is_some() {
            by_mismatch += 1;
        } else {
            let w = report.witness.as_ref().ok_or("unstable without witness")?;
            let id = f.face_id(&w.cone).ok_or("witness cone is not a face")?;
            ensure!(
                maps_regularly(f.face(id), &a, &f).is_none(),
                "witness cone maps regularly for {a}"
            );
            by_witness += 1;
        }
    }
    ensure!(stable > 0, "no stable pair among {trials}");
    Ok(format!(
        "{trials} pairs: {stable} stable with equal pullbacks, {by_mismatch} unstable with a pullback mismatch, {by_witness} unstable with a non-regular step"
    ))
}

fn criterion_5() -> Check {
    let p3 = Fan::projective_space();
    let out = stabilize_equal_moduli(&p3, &scaled_cyclic()).map_err(|e| e.to_string())?;
    let fan = out.verdict.fan().ok_or("no fan")?.clone();
    ensure!(out.verdict.k0() == Some(1), "k0 {:?}", out.verdict.k0());
    let a = scaled_cyclic();
    for r in fan.rays() {
        ensure!(fan.ray_index(&primitive(&a.apply(r))).is_some(), "rays not permuted");
    }
    ensure!(strong_1_stability(&fan, &a).unwrap().is_stable(), "equal moduli fan not 1-stable");
    ensure!(is_2_stable(&fan, &a).unwrap().is_stable(), "equal moduli fan not 2-stable");

    let b = symmetric_block();
    let out = stabilize_two_moduli(&p3, &b, &Budget::default()).map_err(|e| e.to_string())?;
    let fan2 = out.verdict.fan().ok_or("no two-moduli fan")?;
    ensure!(fan2.refines(&p3), "two-moduli fan does not refine P3");
    ensure!(strong_1_stability(fan2, &b).unwrap().is_stable(), "two-moduli fan not 1-stable");
    ensure!(is_2_stable(fan2, &b).unwrap().is_stable(), "two-moduli fan not 2-stable");
    Ok(format!(
        "invariant fan with {} cones; two-moduli fan with {} cones",
        fan.max_cones().len(),
        fan2.max_cones().len()
    ))
}

fn criterion_6() -> Check {
    let verdict = case_verdict(&equal_pair()).map_err(|e| e.to_string())?.verdict;
    ensure!(
        matches!(verdict, Outcome::NoModelExists { scope: Obstructed::Both, .. }),
        "equal-modulus verdict {verdict:?}"
    );
    let a = example();
    let f = star_subdivide(&Fan::octants(), &ivec(1, 0, 1)).unwrap();
    let f = star_subdivide(&f, &ivec(1, 2, 1)).unwrap();
    let report = case2_subclassify(&f, &a, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(report.subcase.label == 3, "subcase {}", report.subcase.label);
    ensure!(
        matches!(report.outcome.verdict, Outcome::NotByRefinement { subcase: Some(3), .. }),
        "verdict {:?}",
        report.outcome.verdict
    );
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..10 {
        let g = random_refinement(&mut rng, &f, 3, 3);
        ensure!(
            !strong_1_stability(&g, &a).unwrap().is_stable(),
            "refinement {i} with {} rays is stable",
            g.rays().len()
        );
    }
    Ok("no model for the equal-modulus pair; subcase 3 fan and 10 refinements unstable".into())
}

fn criterion_7() -> Check {
    let simplex = LatticePolytope::standard_simplex();
    let sixth = BigRational::new(BigInt::one(), BigInt::from(6));
    ensure!(mixed_volume(&simplex, &simplex, &simplex) == sixth, "MV of the simplex");
    ensure!(simplex.volume() == sixth, "volume of the simplex");
    let segs = [0, 1, 2].map(|i| {
        let mut e = ivec(0, 0, 0);
        e[i] = BigInt::one();
        LatticePolytope::segment(e)
    });
    ensure!(
        mixed_volume(&segs[0], &segs[1], &segs[2]) * rat(6) == rat(1),
        "unit segments"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = 20;
    for _ in 0..trials {
        let [p, q, r, s] = [0; 4].map(|_| random_polytope(&mut rng));
        let mv = mixed_volume(&p, &q, &r);
        for perm in [(&q, &p, &r), (&r, &q, &p), (&p, &r, &q)] {
            ensure!(mixed_volume(perm.0, perm.1, perm.2) == mv, "not symmetric");
        }
        let sum = toric_dynamics::polytope::minkowski_sum(&p, &s);
        ensure!(
            mixed_volume(&sum, &q, &r) == &mv + mixed_volume(&s, &q, &r),
            "not additive"
        );
        ensure!(
            mixed_volume(&p.dilate(2), &q, &r) == &mv * rat(2),
            "not homogeneous"
        );
    }
    Ok(format!("{trials} random triples"))
}

fn criterion_8() -> Check {
    let p3 = Fan::projective_space();
    let simplex = LatticePolytope::standard_simplex();
    let mut instances = vec![example(), scaled_cyclic(), symmetric_block(), equal_pair()];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    instances.extend((0..25).map(|_| random_matrix(&mut rng, 3)));
    let mut checked = 0;
    for a in instances {
        if !strong_1_stability(&p3, &a).unwrap().is_stable() {
            continue;
        }
        let seq = degree_sequence(&a, &simplex, 1, 8).map_err(|e| e.to_string())?;
        let rec = min_recurrence(&seq.values).map_err(|e| e.to_string())?;
        ensure!(
            rec.as_ref().is_some_and(|r| r.order() == 1),
            "stable {a} has degrees {:?} and recurrence {rec:?}",
            seq.values
        );
        checked += 1;
    }
    ensure!(checked > 0, "no stable instance");
    Ok(format!("{checked} stable instances, each with an order-1 recurrence on 8 terms"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 worked example end to end", criterion_1),
        ("2 degree pipeline", criterion_2),
        ("3 duality", criterion_3),
        ("4 checker against pullbacks", criterion_4),
        ("5 constructions", criterion_5),
        ("6 obstructions", criterion_6),
        ("7 mixed volumes", criterion_7),
        ("8 recurrence under stability", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
