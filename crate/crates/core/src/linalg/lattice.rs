//! Integer vectors in the rank-3 lattice and their dual covectors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A point of `Z^3` (or of its dual, depending on context).
pub type IVec = [BigInt; 3];

pub fn ivec(a: i64, b: i64, c: i64) -> IVec {
    [BigInt::from(a), BigInt::from(b), BigInt::from(c)]
}

pub fn zero() -> IVec {
    [BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

pub fn unit(i: usize) -> IVec {
    let mut v = zero();
    v[i] = BigInt::one();
    v
}

pub fn dot(a: &IVec, b: &IVec) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross(a: &IVec, b: &IVec) -> IVec {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn det3(a: &IVec, b: &IVec, c: &IVec) -> BigInt {
    dot(a, &cross(b, c))
}

pub fn add(a: &IVec, b: &IVec) -> IVec {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub(a: &IVec, b: &IVec) -> IVec {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn neg(a: &IVec) -> IVec {
    [-&a[0], -&a[1], -&a[2]]
}

pub fn scale(a: &IVec, k: &BigInt) -> IVec {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

pub fn is_zero(a: &IVec) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn content(a: &IVec) -> BigInt {
    a[0].gcd(&a[1]).gcd(&a[2])
}

/// Divides out the gcd of the coordinates. The zero vector is returned unchanged.
pub fn primitive(a: &IVec) -> IVec {
    let g = content(a);
    if g.is_zero() || g.is_one() {
        return a.clone();
    }
    [&a[0] / &g, &a[1] / &g, &a[2] / &g]
}

pub fn is_primitive(a: &IVec) -> bool {
    content(a).is_one()
}

/// Positive multiple of a rational vector with integer coordinates.
pub fn from_rational(v: &[BigRational; 3]) -> IVec {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let out = [
        (&v[0] * &den).to_integer(),
        (&v[1] * &den).to_integer(),
        (&v[2] * &den).to_integer(),
    ];
    primitive(&out)
}

pub fn to_rational(v: &IVec) -> [BigRational; 3] {
    [
        BigRational::from_integer(v[0].clone()),
        BigRational::from_integer(v[1].clone()),
        BigRational::from_integer(v[2].clone()),
    ]
}

pub fn parallel(a: &IVec, b: &IVec) -> bool {
    is_zero(&cross(a, b))
}

/// Rank of a list of integer vectors in `Q^3`.
pub fn rank(vs: &[IVec]) -> usize {
    let nz: Vec<&IVec> = vs.iter().filter(|v| !is_zero(v)).collect();
    let Some(first) = nz.first() else { return 0 };
    let Some(second) = nz.iter().find(|v| !parallel(first, v)) else {
        return 1;
    };
    let normal = cross(first, second);
    if nz.iter().any(|v| !dot(&normal, v).is_zero()) {
        3
    } else {
        2
    }
}

pub fn sign(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}

/// Something with a well-defined direction in `R^3` whose pairing with an
/// integer covector has an exactly computable sign.
pub trait Direction {
    fn sign_dot(&self, covector: &IVec) -> Ordering;
}

impl Direction for IVec {
    fn sign_dot(&self, covector: &IVec) -> Ordering {
        sign(&dot(self, covector))
    }
}

/// Lattice basis of the rank-2 sublattice `{x in Z^3 : <n, x> = 0}`,
/// Lagrange-reduced so that the basis is as short as possible.
pub fn plane_lattice_basis(normal: &IVec) -> [IVec; 2] {
    assert!(!is_zero(normal), "plane normal must be nonzero");
    // Column operations U on the row vector n until n*U = (g, 0, 0) up to
    // permutation; the columns of U sitting over zeros span the kernel.
    let mut row = normal.clone();
    let mut cols = [unit(0), unit(1), unit(2)];
    loop {
        let nonzero: Vec<usize> = (0..3).filter(|&i| !row[i].is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let pivot = *nonzero
            .iter()
            .min_by(|&&i, &&j| row[i].abs().cmp(&row[j].abs()))
            .unwrap();
        for &j in &nonzero {
            if j == pivot {
                continue;
            }
            let q = row[j].div_floor(&row[pivot]);
            row[j] = &row[j] - &q * &row[pivot];
            cols[j] = sub(&cols[j], &scale(&cols[pivot], &q));
        }
    }
    let kernel: Vec<IVec> = (0..3)
        .filter(|&i| row[i].is_zero())
        .map(|i| cols[i].clone())
        .collect();
    debug_assert_eq!(kernel.len(), 2);
    lagrange_reduce(kernel[0].clone(), kernel[1].clone())
}

fn norm2(a: &IVec) -> BigInt {
    dot(a, a)
}

fn lagrange_reduce(mut a: IVec, mut b: IVec) -> [IVec; 2] {
    if norm2(&a) > norm2(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        // b <- b - round(<a,b>/<a,a>) a
        let num = dot(&a, &b);
        let den = norm2(&a);
        let q = round_div(&num, &den);
        if q.is_zero() {
            break;
        }
        b = sub(&b, &scale(&a, &q));
        if norm2(&b) < norm2(&a) {
            std::mem::swap(&mut a, &mut b);
        } else {
            break;
        }
    }
    [a, b]
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

/// Coordinates of `x` (assumed to lie in the plane) in a plane basis.
pub fn plane_coordinates(basis: &[IVec; 2], x: &IVec) -> [BigRational; 2] {
    // Solve x = s*b0 + t*b1 using the cross product with the plane normal.
    let n = cross(&basis[0], &basis[1]);
    let nn = BigRational::from_integer(dot(&n, &n));
    let s = BigRational::from_integer(dot(&cross(x, &basis[1]), &n)) / &nn;
    let t = BigRational::from_integer(dot(&cross(&basis[0], x), &n)) / &nn;
    [s, t]
}

pub fn format_ivec(v: &IVec) -> String {
    format!("({}, {}, {})", v[0], v[1], v[2])
}
