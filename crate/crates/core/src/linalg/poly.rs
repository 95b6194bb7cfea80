//! Univariate polynomials with rational coefficients.
//!
//! Besides ring arithmetic this module provides the pieces needed for exact
//! real-root work at low degree: Sturm sequences, real-root isolation and
//! factorization over `Q` for degree at most three.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients are stored in ascending degree; the leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x - r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(vec![-r.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lc;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer coefficients of a positive rational multiple with content 1.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = if self.leading().is_negative() { -g } else { g };
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b || self.is_constant() {
            return 0;
        }
        let seq = self.sturm_sequence();
        let va = sign_variations(&seq, a);
        let vb = sign_variations(&seq, b);
        va.saturating_sub(vb)
    }

    /// Bound `B` with every complex root of modulus `< B`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Disjoint intervals `(lo, hi]`, one per distinct real root, in
    /// increasing order. Endpoints are never roots.
    pub fn isolate_real_roots(&self) -> Vec<(BigRational, BigRational)> {
        if self.is_constant() {
            return Vec::new();
        }
        let p = self.squarefree_part();
        let b = p.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match p.count_roots(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = split_point(&p, &lo, &hi);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    s.push_str(&a.to_string());
                } else {
                    s.push_str(&format!("({})", a));
                }
            }
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{}^{}", var, i)),
            }
        }
        s
    }
}

/// A rational point strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &RationalPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let mut k = 2i64;
    loop {
        // lo + (hi - lo) * j / k for a few j, starting from the midpoint.
        for j in 1..k {
            let t = lo + (hi - lo) * ratio(j, k);
            if !p.eval(&t).is_zero() {
                return t;
            }
        }
        k += 1;
    }
}

fn sign_variations(seq: &[RationalPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for p in seq {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_var("x"))
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({})", self)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: RationalPoly) -> RationalPoly {
        &self + &rhs
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: RationalPoly) -> RationalPoly {
        &self - &rhs
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}

/// A monic irreducible factor together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: RationalPoly,
    pub multiplicity: usize,
}

/// Factorization over `Q` of a polynomial of degree at most three into monic
/// irreducible factors. Linear factors come first, sorted by root; a residual
/// quadratic or cubic without rational roots is irreducible and kept whole.
pub fn factor_over_q(p: &RationalPoly) -> Vec<Factor> {
    assert!(
        p.degree().is_some_and(|d| d <= 3),
        "factor_over_q supports degree 1..=3"
    );
    let mut rest = p.monic();
    let mut roots = rational_roots(&rest);
    roots.sort();
    let mut out = Vec::new();
    for r in roots {
        let lin = RationalPoly::linear_root(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        out.push(Factor {
            poly: lin,
            multiplicity: mult,
        });
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(Factor {
            poly: rest.monic(),
            multiplicity: 1,
        });
    }
    out
}

/// Distinct rational roots.
///
/// With `p = sum a_i x^i` primitive over `Z`, the substitution `y = a_n x`
/// gives the monic integer polynomial `a_n^(d-1) p(y / a_n)`, whose rational
/// roots are integers. Those are located by exact real-root isolation.
pub fn rational_roots(p: &RationalPoly) -> Vec<BigRational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let ints = p.primitive_integer_coeffs();
    let an = ints[d].clone();
    // coefficient of y^i in the monic transform: a_i * a_n^(d-1-i)
    let monic: Vec<BigInt> = (0..=d)
        .map(|i| {
            if i == d {
                BigInt::one()
            } else {
                &ints[i] * num_traits::pow(an.clone(), d - 1 - i)
            }
        })
        .collect();
    let g = RationalPoly::from_bigints(&monic);
    let mut out = Vec::new();
    for (lo, hi) in g.isolate_real_roots() {
        let (mut lo, mut hi) = (lo, hi);
        let sf = g.squarefree_part();
        while &hi - &lo > ratio(1, 2) {
            let mid = split_point(&sf, &lo, &hi);
            if sf.count_roots(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // the interval (lo, hi] has width at most 1/2 and holds at most one integer
        let cand = hi.floor();
        if cand > lo && g.eval(&cand).is_zero() {
            out.push(cand / BigRational::from_integer(an.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = RationalPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = RationalPoly::from_ints(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, RationalPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let c = RationalPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&c), RationalPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn squarefree_part_removes_repeats() {
        let p = RationalPoly::from_ints(&[-1, 1]).pow(3); // (x-1)^3
        assert_eq!(p.squarefree_part(), RationalPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        let p = RationalPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(p.count_roots(&rat(0), &rat(2)), 1);
        assert_eq!(p.count_roots(&rat(-2), &rat(2)), 2);
        assert_eq!(p.count_roots(&rat(2), &rat(3)), 0);
        let iso = p.isolate_real_roots();
        assert_eq!(iso.len(), 2);
    }

    #[test]
    fn factor_cubic_examples() {
        // (x - 1)^3
        let p = RationalPoly::from_ints(&[-1, 1]).pow(3);
        let f = factor_over_q(&p);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].multiplicity, 3);

        // x^3 - 2 is irreducible
        let p = RationalPoly::from_ints(&[-2, 0, 0, 1]);
        let f = factor_over_q(&p);
        assert_eq!(f, vec![Factor { poly: p.clone(), multiplicity: 1 }]);

        // (x - 7)(x^2 + 4x + 12) = x^3 - 3x^2 - 16x - 84
        let p = RationalPoly::from_ints(&[-84, -16, -3, 1]);
        let f = factor_over_q(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].poly, RationalPoly::from_ints(&[-7, 1]));
        assert_eq!(f[1].poly, RationalPoly::from_ints(&[12, 4, 1]));
    }

    #[test]
    fn rational_roots_non_monic() {
        // (2x - 1)(3x + 2)(x - 5)
        let p = &(&RationalPoly::from_ints(&[-1, 2]) * &RationalPoly::from_ints(&[2, 3]))
            * &RationalPoly::from_ints(&[-5, 1]);
        let mut r = rational_roots(&p);
        r.sort();
        assert_eq!(r, vec![ratio(-2, 3), ratio(1, 2), rat(5)]);
    }

    #[test]
    fn display() {
        let p = RationalPoly::from_ints(&[-84, -16, -3, 1]);
        assert_eq!(p.to_string(), "x^3 - 3x^2 - 16x - 84");
    }
}
