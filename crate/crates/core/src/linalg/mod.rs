//! Exact integer and rational linear algebra, polynomials and real algebraic
//! numbers.

pub mod algebraic;
pub mod lattice;
pub mod matrix;
pub mod poly;

pub use algebraic::{alg_sign, AlgebraicVector, RealAlgebraic};
pub use lattice::{ivec, Direction, IVec};
pub use matrix::IntMatrix;
pub use poly::{factor_over_q, Factor, RationalPoly};

use num_bigint::BigInt;

/// `(det A, A')` with `A' = sgn(det A) * adj(A)`.
pub fn det_adjugate(a: &IntMatrix) -> (BigInt, IntMatrix) {
    a.det_adjugate()
}

pub fn char_poly(a: &IntMatrix) -> RationalPoly {
    a.char_poly()
}

pub fn is_diagonalizable(a: &IntMatrix) -> bool {
    a.is_diagonalizable()
}
