//! Maps whose eigenvalues all share a modulus: a finite group acts after
//! rescaling, and averaging the fan over it gives a stable model.

use toric_dynamics::stabilizer::equal_moduli::finite_orbit;
use toric_dynamics::prelude::*;

fn main() -> Result<()> {
    let a = IntMatrix::from_i64([[0, 0, 2], [2, 0, 0], [0, 2, 0]]);
    let orbit = finite_orbit(&a)?;
    println!("{a} generates a group of order {} after rescaling", orbit.len());

    let p3 = Fan::projective_space();
    println!("stable on projective space: {}", strong_1_stability(&p3, &a)?.is_stable());

    let out = stabilize_equal_moduli(&p3, &a)?;
    for line in &out.log {
        println!("  {line}");
    }
    if let Outcome::StabilizedFan { fan, k0, two_stable, .. } = &out.verdict {
        println!(
            "stabilized with {} rays and {} cones, k0 = {k0}, 2-stable {two_stable}",
            fan.rays().len(),
            fan.max_cones().len()
        );
    }
    Ok(())
}
