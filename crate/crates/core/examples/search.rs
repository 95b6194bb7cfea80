//! Three real eigenvalues of distinct moduli: a certified search refines
//! the fan along invariant planes and failure points until it is stable.

use toric_dynamics::prelude::*;

fn run(a: &IntMatrix, budget: &Budget) -> Result<()> {
    let out = stabilize_search(&Fan::projective_space(), a, budget)?;
    println!("{a}: {}", out.verdict.name());
    for line in &out.log {
        println!("  {line}");
    }
    if let Outcome::StabilizedFan { fan, k0, certified_powers, .. } = &out.verdict {
        println!(
            "  {} rays, {} cones, k0 = {k0}, certified powers {certified_powers:?}",
            fan.rays().len(),
            fan.max_cones().len()
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    let budget = Budget::from_env()?;
    run(&IntMatrix::from_i64([[2, 0, 0], [1, 3, 0], [1, 1, 5]]), &budget)?;
    // Irrational eigenvectors: the search usually runs out of budget.
    run(&IntMatrix::from_i64([[2, 1, 0], [1, 3, 1], [0, 1, 5]]), &Budget::parse("subdivisions=8")?)?;
    Ok(())
}
