//! Square integer matrices: the exponent data of a monomial map.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lattice::IVec;
use super::poly::RationalPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for the 3x3 case.
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        IntMatrix {
            n: 3,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, BigInt::one())
    }

    pub fn scalar(n: usize, c: BigInt) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = c.clone();
        }
        IntMatrix { n, data }
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::scalar(n, BigInt::zero());
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = BigInt::from(e);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn require_dim(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: n,
                got: self.n,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).clone());
            }
        }
        IntMatrix { n, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<BigInt> {
        let c = self.get(0, 0).clone();
        (0..self.n)
            .all(|i| (0..self.n).all(|j| *self.get(i, j) == if i == j { c.clone() } else { BigInt::zero() }))
            .then_some(c)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Action on a column vector (3x3 only).
    pub fn apply(&self, v: &IVec) -> IVec {
        debug_assert_eq!(self.n, 3);
        let row = |i: usize| self.get(i, 0) * &v[0] + self.get(i, 1) * &v[1] + self.get(i, 2) * &v[2];
        [row(0), row(1), row(2)]
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        bareiss_det(self.n, self.data.clone())
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity((self.n - 1) * (self.n - 1));
        for i in (0..self.n).filter(|&i| i != skip_row) {
            for j in (0..self.n).filter(|&j| j != skip_col) {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    /// Classical adjoint: `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let cof = bareiss_det(n - 1, self.minor(j, i));
                data[i * n + j] = if (i + j) % 2 == 0 { cof } else { -cof };
            }
        }
        IntMatrix { n, data }
    }

    /// `(det A, A')` with `A' = sgn(det A) * adj(A) = |det A| * A^-1`.
    pub fn det_adjugate(&self) -> (BigInt, Self) {
        let det = self.det();
        let adj = self.adjugate();
        let dual = if det.is_negative() {
            adj.scale(&BigInt::from(-1))
        } else {
            adj
        };
        (det, dual)
    }

    /// The dual matrix `A' = |det A| * A^-1`.
    pub fn dual(&self) -> Self {
        self.det_adjugate().1
    }

    /// `det(xI - A)`, computed by the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> RationalPoly {
        let n = self.n;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        // M_1 = I, c_{n-1} = -tr(A); M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
        let mut am = self.clone();
        coeffs[n - 1] = BigRational::from_integer(-am.trace());
        for k in 2..=n {
            let c_prev = coeffs[n - k + 1].to_integer();
            let m = am.add(&Self::scalar(n, c_prev));
            am = self.mul(&m);
            let tr = am.trace();
            coeffs[n - k] = BigRational::new(-tr, BigInt::from(k as i64));
        }
        RationalPoly::new(coeffs)
    }

    /// Evaluate `p(A)`, scaled by the common denominator of `p`; only the
    /// zero pattern of the result is meaningful to callers.
    pub fn eval_poly_scaled(&self, p: &RationalPoly) -> Self {
        let ints = p.primitive_integer_coeffs();
        let mut acc = Self::scalar(self.n, BigInt::zero());
        for c in ints.iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(self.n, c.clone()));
        }
        acc
    }

    /// True iff the minimal polynomial is squarefree, tested by evaluating
    /// the squarefree part of the characteristic polynomial at `A`.
    pub fn is_diagonalizable(&self) -> bool {
        let s = self.char_poly().squarefree_part();
        self.eval_poly_scaled(&s).is_zero()
    }

    /// Nonnegative gcd of the entries.
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    /// The matrix divided by its content, so it acts on rays as before.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x / &c).collect(),
        }
    }
}

fn bareiss_det(n: usize, mut a: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn example_map() -> IntMatrix {
        IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]])
    }

    #[test]
    fn det_adjugate_examples() {
        let (d, a) = IntMatrix::identity(3).det_adjugate();
        assert_eq!(d, BigInt::one());
        assert_eq!(a, IntMatrix::identity(3));

        let (d, a) = IntMatrix::diag(&[2, 3, 5]).det_adjugate();
        assert_eq!(d, BigInt::from(30));
        assert_eq!(a, IntMatrix::diag(&[15, 10, 6]));

        let m = example_map();
        let (d, a) = m.det_adjugate();
        assert_eq!(d, BigInt::from(84));
        assert_eq!(a, IntMatrix::from_i64([[-9, 24, -3], [-2, -4, 18], [19, -4, -3]]));
        // independent check: direct multiplication
        assert_eq!(m.mul(&a), IntMatrix::scalar(3, BigInt::from(84)));
    }

    #[test]
    fn negative_determinant_dual() {
        let m = IntMatrix::diag(&[-2, 3, 1]);
        let (d, a) = m.det_adjugate();
        assert_eq!(d, BigInt::from(-6));
        assert_eq!(a, IntMatrix::diag(&[-3, 2, 6]));
        assert_eq!(m.mul(&a), IntMatrix::scalar(3, BigInt::from(6)));
    }

    #[test]
    fn char_poly_examples() {
        let cube = RationalPoly::from_ints(&[-1, 1]).pow(3);
        assert_eq!(IntMatrix::identity(3).char_poly(), cube);
        let expect = &(&RationalPoly::from_ints(&[-2, 1]) * &RationalPoly::from_ints(&[-3, 1]))
            * &RationalPoly::from_ints(&[-5, 1]);
        assert_eq!(IntMatrix::diag(&[2, 3, 5]).char_poly(), expect);
        let expect = &RationalPoly::from_ints(&[-7, 1]) * &RationalPoly::from_ints(&[12, 4, 1]);
        let cp = example_map().char_poly();
        assert_eq!(cp, expect);
        // trace 3 and det 84
        assert_eq!(cp.coeff(2), -BigRational::from_integer(3.into()));
        assert_eq!(cp.coeff(0), -BigRational::from_integer(84.into()));
    }

    #[test]
    fn diagonalizability() {
        assert!(IntMatrix::identity(3).is_diagonalizable());
        assert!(!IntMatrix::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 2]]).is_diagonalizable());
        assert!(example_map().is_diagonalizable());
        assert!(IntMatrix::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, 3]]).is_diagonalizable());
    }

    #[test]
    fn generic_dimension() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.det(), BigInt::one());
        assert_eq!(m.char_poly(), RationalPoly::from_ints(&[1, -3, 1]));
        let m4 = IntMatrix::from_rows_i64(&[
            vec![1, 2, 0, 1],
            vec![0, 1, 3, 0],
            vec![2, 0, 1, 1],
            vec![1, 1, 0, 2],
        ])
        .unwrap();
        let (d, a) = m4.det_adjugate();
        assert_eq!(m4.mul(&a), IntMatrix::scalar(4, d.abs()));
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-4i64..=4, 9).prop_map(|v| {
            IntMatrix::from_i64([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])
        })
    }

    proptest! {
        #[test]
        fn dual_identities(m in arb_matrix()) {
            let (d, a) = m.det_adjugate();
            prop_assert_eq!(m.mul(&a), IntMatrix::scalar(3, d.abs()));
            if !d.is_zero() {
                let sgn = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
                prop_assert_eq!(a.det(), sgn * &d * &d);
                for k in 1..=5u32 {
                    prop_assert_eq!(m.pow(k).dual(), a.pow(k));
                }
            }
        }

        #[test]
        fn cayley_hamilton(m in arb_matrix()) {
            prop_assert!(m.eval_poly_scaled(&m.char_poly()).is_zero());
        }
    }
}
