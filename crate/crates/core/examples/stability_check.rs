//! Checking 1- and 2-stability of a map on projective space, and comparing
//! the verdict with iterated divisor pullbacks.

use toric_dynamics::dynamics::iterate_pullback_mismatch;
use toric_dynamics::linalg::lattice::format_ivec;
use toric_dynamics::prelude::*;

fn report(label: &str, r: &StabilityReport) {
    println!("{label}: {:?}", r.verdict);
    if let Some(w) = &r.witness {
        println!(
            "  ray {} leaves the cones at step {}, its image passes through {}",
            format_ivec(&w.ray_vector),
            w.k,
            format_ivec(&w.image_point)
        );
    }
}

fn main() -> Result<()> {
    let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
    let p3 = Fan::projective_space();

    report("codimension 1", &strong_1_stability(&p3, &a)?);
    report("codimension 2", &is_2_stable(&p3, &a)?);
    report("codimension 2 via the dual matrix", &strong_1_stability(&p3, &a.dual())?);

    match iterate_pullback_mismatch(&p3, &a, 6)? {
        None => println!("pullbacks of every boundary divisor compose for 6 steps"),
        Some((k, ray)) => println!("pullback of divisor {ray} stops composing at step {k}"),
    }

    let h = TInvariantDivisor::basis(p3.rays().len(), 0);
    let pulled = divisor_pullback(&p3, &a, &h)?;
    let coeffs: Vec<String> = pulled.coeffs.iter().map(|c| c.to_string()).collect();
    println!("pullback of the first boundary divisor: [{}]", coeffs.join(", "));
    Ok(())
}
