//! Building fans: star subdivisions, common refinements and
//! simplicialization, with the validity checks each step keeps.

use toric_dynamics::fan::{common_refinement, simplicialize_preserving_rays, star_subdivide};
use toric_dynamics::io::fan_to_json;
use toric_dynamics::prelude::*;

fn summary(name: &str, f: &Fan) {
    println!(
        "{name}: {} rays, {} maximal cones, complete {}, simplicial {}",
        f.rays().len(),
        f.max_cones().len(),
        f.is_complete(),
        f.is_simplicial()
    );
}

fn main() -> Result<()> {
    let p3 = Fan::projective_space();
    let octants = Fan::octants();
    summary("projective space", &p3);
    summary("octants", &octants);

    let blown_up = star_subdivide(&p3, &ivec(1, 1, 1))?;
    summary("projective space subdivided at (1,1,1)", &blown_up);
    assert!(blown_up.refines(&p3));

    let both = common_refinement(&blown_up, &octants)?;
    summary("common refinement with the octants", &both);
    assert!(both.refines(&blown_up) && both.refines(&octants));

    let simplicial = simplicialize_preserving_rays(&both)?;
    summary("simplicialized", &simplicial);

    let x = ivec(2, -1, 3);
    let face = simplicial.locate(&x).expect("complete fan");
    println!("{x:?} lies in the relative interior of a {}-dimensional cone", simplicial.face(face).dim());

    println!("{}", fan_to_json(&blown_up));
    Ok(())
}
