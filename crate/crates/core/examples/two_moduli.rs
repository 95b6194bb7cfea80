//! Two distinct eigenvalue moduli: a power splits into an eigenline and an
//! eigenplane, and closing the fan along them gives a stable refinement.

use toric_dynamics::linalg::lattice::format_ivec;
use toric_dynamics::prelude::*;
use toric_dynamics::stabilizer::two_moduli::split_power;

fn main() -> Result<()> {
    let a = IntMatrix::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, 3]]);
    let split = split_power(&a)?;
    println!(
        "A^{} has eigenline {} (eigenvalue {}) and eigenplane with normal {} (eigenvalue {})",
        split.exponent,
        format_ivec(&split.line),
        split.line_value,
        format_ivec(&split.plane_normal),
        split.plane_value
    );

    for (name, fan) in [("projective space", Fan::projective_space()), ("octants", Fan::octants())] {
        let out = stabilize_two_moduli(&fan, &a, &Budget::default())?;
        println!("{name}: {}", out.verdict.name());
        for line in &out.log {
            println!("  {line}");
        }
    }
    Ok(())
}
