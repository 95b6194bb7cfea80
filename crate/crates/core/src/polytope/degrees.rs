//! Degrees of monomial maps measured against an ample polytope.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::lattice::{self, IVec};
use crate::linalg::IntMatrix;

use super::recurrence::{min_recurrence, LinearRecurrence};
use super::{mixed_volume, LatticePolytope};

/// `deg_p(f_A)` against `P`: `3! MV` of `p` copies of `Aᵀ P` and `3 - p`
/// copies of `P`.
pub fn degree_p(a: &IntMatrix, poly: &LatticePolytope, p: usize) -> Result<BigRational> {
    a.require_dim(3)?;
    if !poly.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let image = poly.dual_transform(a);
    let mv = match p {
        0 => mixed_volume(poly, poly, poly),
        1 => mixed_volume(&image, poly, poly),
        2 => mixed_volume(&image, &image, poly),
        3 => mixed_volume(&image, &image, &image),
        _ => {
            return Err(Error::Dimension {
                expected: 3,
                got: p,
            })
        }
    };
    Ok(mv * BigRational::from_integer(BigInt::from(6)))
}

/// Degrees of the iterates `f_A^k` for `k = 1..=kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub p: usize,
    /// `values[k - 1]` is the degree of the `k`-th iterate.
    pub values: Vec<BigRational>,
    pub provenance: String,
}

impl DegreeSequence {
    pub fn min_recurrence(&self) -> Result<Option<LinearRecurrence>> {
        min_recurrence(&self.values)
    }

    /// `deg(f^K)^(1/K)` for the last available `K`. This is a numerical
    /// estimate of the growth rate, not an exact dynamical degree.
    pub fn growth_estimate(&self) -> Option<f64> {
        let last = self.values.last()?;
        let k = self.values.len() as f64;
        last.to_f64().filter(|v| *v > 0.0).map(|v| v.powf(1.0 / k))
    }

    /// Rows `k,deg` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,deg\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, v));
        }
        out
    }
}

/// Each entry is recomputed from `A^k`, so the sequence stays meaningful
/// when pullbacks do not compose.
pub fn degree_sequence(
    a: &IntMatrix,
    poly: &LatticePolytope,
    p: usize,
    kmax: usize,
) -> Result<DegreeSequence> {
    let mut values = Vec::with_capacity(kmax);
    let mut power = IntMatrix::identity(a.n());
    for _ in 0..kmax {
        power = power.mul(a);
        values.push(degree_p(&power, poly, p)?);
    }
    let provenance = if *poly == LatticePolytope::standard_simplex() {
        "P3 hyperplane class (standard simplex)".to_string()
    } else {
        format!("polytope with {} vertices", poly.vertices().len())
    };
    Ok(DegreeSequence {
        p,
        values,
        provenance,
    })
}

/// Rays of the fan of P³: the basis vectors and `-(1,1,1)`.
fn p3_rays() -> [IVec; 4] {
    [
        lattice::unit(0),
        lattice::unit(1),
        lattice::unit(2),
        lattice::ivec(-1, -1, -1),
    ]
}

/// Degree of `f_A` on P³ computed by writing the map in homogeneous
/// coordinates and cancelling the common monomial factor.
pub fn homogenization_oracle(a: &IntMatrix) -> Result<BigInt> {
    a.require_dim(3)?;
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    // Exponents in (X0, X1, X2, X3) of the components [1 : y1 : y2 : y3],
    // where y_i = prod_j (X_j / X0)^{a_ij}.
    let mut exps: Vec<[BigInt; 4]> = vec![Default::default()];
    for i in 0..3 {
        let row_sum: BigInt = (0..3).map(|j| a.get(i, j)).sum();
        exps.push([
            -row_sum,
            a.get(i, 0).clone(),
            a.get(i, 1).clone(),
            a.get(i, 2).clone(),
        ]);
    }
    let degree: BigInt = (0..4)
        .map(|c| -exps.iter().map(|e| e[c].clone()).min().unwrap())
        .sum();
    debug_assert_eq!(degree, closed_form_degree(a));
    Ok(degree)
}

/// `sum over rays v of max(0, -min_i (A v)_i)`.
pub fn closed_form_degree(a: &IntMatrix) -> BigInt {
    p3_rays()
        .iter()
        .map(|v| {
            let img = a.apply(v);
            let m = img.iter().min().unwrap().clone();
            if m.is_negative() {
                -m
            } else {
                BigInt::zero()
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::poly::rat;

    fn example_map() -> IntMatrix {
        IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]])
    }

    #[test]
    fn scalar_and_identity() {
        let d = LatticePolytope::standard_simplex();
        for k in 1..5 {
            let a = IntMatrix::scalar(3, BigInt::from(k));
            assert_eq!(degree_p(&a, &d, 1).unwrap(), rat(k));
            assert_eq!(homogenization_oracle(&a).unwrap(), BigInt::from(k));
        }
        let s = degree_sequence(&IntMatrix::identity(3), &d, 1, 4).unwrap();
        assert!(s.values.iter().all(|v| *v == rat(1)));
    }

    #[test]
    fn example_map_grows_by_seven() {
        let d = LatticePolytope::standard_simplex();
        assert_eq!(degree_p(&example_map(), &d, 1).unwrap(), rat(7));
        assert_eq!(homogenization_oracle(&example_map()).unwrap(), BigInt::from(7));
        let s = degree_sequence(&example_map(), &d, 1, 5).unwrap();
        assert_eq!(s.values, [7, 49, 343, 2401, 16807].map(rat).to_vec());
        let est = s.growth_estimate().unwrap();
        assert!((est - 7.0).abs() < 1e-9);
    }

    #[test]
    fn diagonal_degrees() {
        let d = LatticePolytope::standard_simplex();
        let a = IntMatrix::diag(&[2, 3, 5]);
        assert_eq!(degree_p(&a, &d, 2).unwrap(), rat(15));
        assert_eq!(degree_p(&a.dual(), &d, 1).unwrap(), rat(15));
        let s = degree_sequence(&a, &d, 1, 3).unwrap();
        assert_eq!(s.values, [5, 25, 125].map(rat).to_vec());
    }

    #[test]
    fn degenerate_inputs() {
        let seg = LatticePolytope::segment(lattice::ivec(1, 0, 0));
        assert!(matches!(
            degree_p(&example_map(), &seg, 1),
            Err(Error::DegeneratePolytope)
        ));
        let sing = IntMatrix::from_i64([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert!(degree_p(&sing, &LatticePolytope::standard_simplex(), 1).is_err());
    }

    #[test]
    fn csv_report() {
        let s = degree_sequence(&example_map(), &LatticePolytope::standard_simplex(), 1, 2).unwrap();
        assert_eq!(s.to_csv(), "k,deg\n1,7\n2,49\n");
    }
}
