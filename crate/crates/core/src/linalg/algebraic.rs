//! Real algebraic numbers of low degree and vectors over a single real
//! algebraic generator. Every decision is made exactly: signs are read off
//! after refining an isolating interval until the expression has no root in it.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::lattice::{Direction, IVec};
use super::matrix::IntMatrix;
use super::poly::{rat, ratio, RationalPoly};

/// A real root of an irreducible monic polynomial, pinned down by an interval
/// `(lo, hi]` that contains exactly one root and whose endpoints are not roots.
#[derive(Clone, PartialEq, Eq)]
pub struct RealAlgebraic {
    minpoly: RationalPoly,
    lo: BigRational,
    hi: BigRational,
}

impl RealAlgebraic {
    /// Checks the isolating-interval invariant; `minpoly` is made monic and
    /// is assumed irreducible over `Q`.
    pub fn new(minpoly: RationalPoly, lo: BigRational, hi: BigRational) -> Option<Self> {
        let minpoly = minpoly.monic();
        let ok = minpoly.degree().is_some_and(|d| d >= 1)
            && lo < hi
            && !minpoly.eval(&lo).is_zero()
            && !minpoly.eval(&hi).is_zero()
            && minpoly.count_roots(&lo, &hi) == 1;
        ok.then_some(RealAlgebraic { minpoly, lo, hi })
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RealAlgebraic {
            minpoly: RationalPoly::linear_root(r),
            lo: r - BigRational::one(),
            hi: r + BigRational::one(),
        }
    }

    /// All real roots of an irreducible polynomial, in increasing order.
    pub fn real_roots_of(irreducible: &RationalPoly) -> Vec<Self> {
        let m = irreducible.monic();
        if m.degree() == Some(1) {
            return vec![Self::from_rational(&-m.coeff(0))];
        }
        m.isolate_real_roots()
            .into_iter()
            .map(|(lo, hi)| RealAlgebraic {
                minpoly: m.clone(),
                lo,
                hi,
            })
            .collect()
    }

    pub fn minpoly(&self) -> &RationalPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| -self.minpoly.coeff(0))
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Halve the isolating interval.
    pub fn refine(&mut self) {
        if let Some(r) = self.as_rational() {
            let w = (&self.hi - &self.lo) / rat(4);
            self.lo = &r - &w;
            self.hi = &r + &w;
            return;
        }
        let mut mid = (&self.lo + &self.hi) / rat(2);
        if self.minpoly.eval(&mid).is_zero() {
            mid = &self.lo + (&self.hi - &self.lo) * ratio(1, 3);
        }
        if self.minpoly.count_roots(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn neg(&self) -> Self {
        RealAlgebraic {
            minpoly: self.minpoly.reflect().monic(),
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn sign(&self) -> Ordering {
        alg_sign(&RationalPoly::x(), self)
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact equality of the represented real numbers.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.minpoly != other.minpoly {
            return false;
        }
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        lo < hi && self.minpoly.count_roots(lo, hi) == 1
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.same_value(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
        }
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp_value(&other.abs())
    }

    /// Decimal approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let mut a = self.clone();
        let eps = ratio(1, 1 << 50);
        while a.width() > eps {
            a.refine();
        }
        ((&a.lo + &a.hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", r),
            None => write!(
                f,
                "root of {} in ({}, {}] ~ {:.6}",
                self.minpoly,
                self.lo,
                self.hi,
                self.to_f64()
            ),
        }
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Reduce a polynomial expression in the generator modulo its minimal polynomial.
pub fn reduce(expr: &RationalPoly, gen: &RealAlgebraic) -> RationalPoly {
    expr.rem(&gen.minpoly)
}

/// Exact sign of `expr(theta)` where `theta` is the generator.
pub fn alg_sign(expr: &RationalPoly, gen: &RealAlgebraic) -> Ordering {
    let r = reduce(expr, gen);
    if r.is_zero() {
        return Ordering::Equal;
    }
    if let Some(v) = gen.as_rational() {
        return r.sign_at(&v);
    }
    if r.is_constant() {
        return r.coeff(0).cmp(&BigRational::zero());
    }
    // r is nonzero of degree below the irreducible minpoly, so r(theta) != 0.
    let sf = r.squarefree_part();
    let mut g = gen.clone();
    while sf.count_roots(&g.lo, &g.hi) > 0 {
        g.refine();
    }
    r.sign_at(&g.hi)
}

/// `a * b mod minpoly`.
pub fn mul_mod(a: &RationalPoly, b: &RationalPoly, gen: &RealAlgebraic) -> RationalPoly {
    reduce(&(a * b), gen)
}

/// A vector of `R^3` whose coordinates lie in `Q(theta)` for one real
/// algebraic generator `theta`; each coordinate is stored as a polynomial of
/// degree below that of the generator.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicVector {
    pub generator: RealAlgebraic,
    pub coords: [RationalPoly; 3],
}

impl AlgebraicVector {
    pub fn new(generator: RealAlgebraic, coords: [RationalPoly; 3]) -> Self {
        let coords = coords.map(|c| reduce(&c, &generator));
        AlgebraicVector { generator, coords }
    }

    pub fn from_ivec(generator: RealAlgebraic, v: &IVec) -> Self {
        let c = |i: usize| RationalPoly::constant(BigRational::from_integer(v[i].clone()));
        AlgebraicVector::new(generator, [c(0), c(1), c(2)])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RationalPoly::is_zero)
    }

    pub fn neg(&self) -> Self {
        AlgebraicVector {
            generator: self.generator.clone(),
            coords: self.coords.clone().map(|c| -c),
        }
    }

    /// `<covector, self>` as an element of `Q(theta)`.
    pub fn dot(&self, covector: &IVec) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        for (c, x) in covector.iter().zip(&self.coords) {
            acc = &acc + &x.scale(&BigRational::from_integer(c.clone()));
        }
        acc
    }

    /// Pairing with a covector that itself has coordinates in `Q(theta)`.
    pub fn dot_algebraic(&self, covector: &[RationalPoly; 3]) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        for (c, x) in covector.iter().zip(&self.coords) {
            acc = &acc + &(c * x);
        }
        reduce(&acc, &self.generator)
    }

    /// True when `self` is a positive multiple of the integer vector `v`.
    pub fn is_positive_multiple_of(&self, v: &IVec) -> bool {
        let crossed = [
            (1usize, 2usize),
            (2, 0),
            (0, 1),
        ]
        .iter()
        .all(|&(i, j)| {
            let vi = BigRational::from_integer(v[i].clone());
            let vj = BigRational::from_integer(v[j].clone());
            reduce(&(&self.coords[i].scale(&vj) - &self.coords[j].scale(&vi)), &self.generator)
                .is_zero()
        });
        crossed && self.sign_dot(v) == Ordering::Greater
    }

    /// If every coordinate is rational, the primitive integer vector in the
    /// same direction.
    pub fn as_rational_direction(&self) -> Option<IVec> {
        if self.coords.iter().any(|c| !c.is_constant()) {
            return None;
        }
        let r = self.coords.clone().map(|c| c.coeff(0));
        let v = super::lattice::from_rational(&r);
        (!super::lattice::is_zero(&v)).then_some(v)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        let t = self.generator.to_f64();
        self.coords.clone().map(|c| {
            c.coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, a| acc * t + a.to_f64().unwrap_or(f64::NAN))
        })
    }
}

impl Direction for AlgebraicVector {
    fn sign_dot(&self, covector: &IVec) -> Ordering {
        alg_sign(&self.dot(covector), &self.generator)
    }
}

impl fmt::Debug for AlgebraicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_f64();
        write!(
            f,
            "({}, {}, {}) with t = {:?} ~ ({:.6}, {:.6}, {:.6})",
            self.coords[0].format_var("t"),
            self.coords[1].format_var("t"),
            self.coords[2].format_var("t"),
            self.generator,
            a,
            b,
            c
        )
    }
}

/// `adj(A - t I)` with entries reduced modulo the generator's minimal
/// polynomial, where `t` is the generator.
pub fn shifted_adjugate(a: &IntMatrix, gen: &RealAlgebraic) -> [[RationalPoly; 3]; 3] {
    let m: Vec<Vec<RationalPoly>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let c = RationalPoly::constant(BigRational::from_integer(a.get(i, j).clone()));
                    if i == j {
                        &c - &RationalPoly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
    };
    let others = |k: usize| match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut out: [[RationalPoly; 3]; 3] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // adj[i][j] = (-1)^(i+j) * det(minor deleting row j, column i)
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            let d = minor(r0, r1, c0, c1);
            let d = if (i + j) % 2 == 0 { d } else { -d };
            *entry = reduce(&d, gen);
        }
    }
    out
}
