//! Spectral classification of a few monomial maps and of their duals.

use toric_dynamics::prelude::*;
use toric_dynamics::spectra::describe_eigenvalues;

fn main() -> Result<()> {
    let maps = [
        ("complex pair inside", [[1, 1, 5], [4, 1, 2], [1, 5, 1]]),
        ("scaled cyclic permutation", [[0, 0, 2], [2, 0, 0], [0, 2, 0]]),
        ("symmetric block", [[2, 1, 0], [1, 2, 0], [0, 0, 3]]),
        ("lower triangular", [[2, 0, 0], [1, 3, 0], [1, 1, 5]]),
        ("rotation times scaling", [[3, 0, 0], [0, 0, -9], [0, 1, 1]]),
    ];
    for (name, rows) in maps {
        let a = IntMatrix::from_i64(rows);
        let case = classify_case(&a)?;
        println!("{name}: {a}");
        println!("  characteristic polynomial {}", case.spectrum.char_poly);
        println!("  eigenvalues {}", describe_eigenvalues(&case.spectrum).join(", "));
        println!("  case {} (dual matrix {} is {})", case.label, a.dual(), case.label.dual());
        if let Some(rational) = case.ratio_root_of_unity {
            println!("  argument of the complex pair is a rational angle: {rational}");
        }
    }

    let jordan = IntMatrix::from_i64([[2, 1, 0], [0, 2, 0], [0, 0, 3]]);
    match classify_case(&jordan) {
        Err(e) => println!("{jordan}: {e}"),
        Ok(c) => println!("{jordan}: unexpectedly {}", c.label),
    }
    Ok(())
}
