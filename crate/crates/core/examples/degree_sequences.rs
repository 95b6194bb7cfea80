//! Degree growth of iterates, and the linear recurrences the sequences
//! satisfy once the map is stable.

use toric_dynamics::prelude::*;

fn main() -> Result<()> {
    let simplex = LatticePolytope::standard_simplex();
    let maps = [
        ("1-stable on projective space", [[1, 1, 5], [4, 1, 2], [1, 5, 1]]),
        ("scaled cyclic permutation", [[0, 0, 2], [2, 0, 0], [0, 2, 0]]),
        ("mixed signs", [[1, -1, 0], [1, 1, -1], [0, 1, 2]]),
    ];
    for (name, rows) in maps {
        let a = IntMatrix::from_i64(rows);
        for p in 1..=2 {
            let seq = degree_sequence(&a, &simplex, p, 10)?;
            let shown: Vec<String> = seq.values.iter().take(6).map(|d| d.to_string()).collect();
            println!("{name}, codimension {p}: {} ...", shown.join(", "));
            match seq.min_recurrence()? {
                Some(r) => println!("  {r}"),
                None => println!("  no recurrence certified by 10 terms"),
            }
        }
        println!("  homogeneous-coordinate degree of A: {}", homogenization_oracle(&a)?);
    }
    Ok(())
}
