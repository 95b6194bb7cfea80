//! Exact volumes, Minkowski sums and mixed volumes of lattice polytopes.

use toric_dynamics::prelude::*;

fn main() {
    let simplex = LatticePolytope::standard_simplex();
    let cube = LatticePolytope::unit_cube();
    let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
    let image = simplex.transform(&a);

    println!("vol(simplex) = {}", volume(&simplex));
    println!("vol(cube) = {}", volume(&cube));
    println!("vol(A simplex) = {}", volume(&image));
    println!("vol(simplex + cube) = {}", volume(&minkowski_sum(&simplex, &cube)));
    println!("MV(simplex, simplex, simplex) = {}", mixed_volume(&simplex, &simplex, &simplex));
    println!("MV(cube, cube, cube) = {}", mixed_volume(&cube, &cube, &cube));
    println!("MV(simplex, simplex, A simplex) = {}", mixed_volume(&simplex, &simplex, &image));
    println!("MV(simplex, A simplex, A simplex) = {}", mixed_volume(&simplex, &image, &image));
}
