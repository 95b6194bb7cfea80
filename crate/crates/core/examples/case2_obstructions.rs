//! A dominant real eigenvalue with a complex pair of irrational angle: the
//! position of the eigendirection relative to the fan decides whether a
//! stable refinement exists.

use toric_dynamics::fan::star_subdivide;
use toric_dynamics::prelude::*;

fn main() -> Result<()> {
    let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
    let budget = Budget::default();

    let subdivided_octants = star_subdivide(&star_subdivide(&Fan::octants(), &ivec(1, 0, 1))?, &ivec(1, 2, 1))?;
    let fans = [
        ("projective space", Fan::projective_space()),
        ("octants", Fan::octants()),
        ("projective space subdivided at (1,1,1)", star_subdivide(&Fan::projective_space(), &ivec(1, 1, 1))?),
        ("octants subdivided twice", subdivided_octants),
    ];
    for (name, f) in fans {
        let report = case2_subclassify(&f, &a, &budget)?;
        let s = &report.subcase;
        println!("{name}: subcase {}, {}", s.label, report.outcome.verdict.name());
        println!("  eigendirection {}", s.gamma.describe());
        println!("  rays in the invariant plane {:?}, attracted rays {:?}", s.rays_in_plane, s.attracted_rays);
        for line in &report.outcome.log {
            println!("  {line}");
        }
    }
    Ok(())
}
