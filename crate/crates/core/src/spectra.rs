//! Exact spectral analysis of a 3x3 integer matrix and the resulting case
//! label, which decides which stabilization strategy (if any) applies.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::algebraic::{alg_sign, reduce};
use crate::linalg::{factor_over_q, Factor, IntMatrix, RationalPoly, RealAlgebraic};

/// Largest multiplicative order of `mu / conj(mu)` when `mu` generates a
/// field of degree at most six over `Q`.
pub const ROOT_OF_UNITY_BOUND: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEigen {
    pub value: RealAlgebraic,
    pub multiplicity: usize,
}

/// A non-real conjugate pair `mu, conj(mu)` recorded through `p = mu + conj(mu)`
/// and `q = mu * conj(mu)`, both elements of `Q(generator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    pub generator: RealAlgebraic,
    pub p: RationalPoly,
    pub q: RationalPoly,
}

impl ComplexPair {
    pub fn p_rational(&self) -> Option<BigRational> {
        self.p.is_constant().then(|| self.p.coeff(0))
    }

    pub fn q_rational(&self) -> Option<BigRational> {
        self.q.is_constant().then(|| self.q.coeff(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralClass {
    pub char_poly: RationalPoly,
    pub factors: Vec<Factor>,
    /// Real eigenvalues in decreasing order.
    pub real: Vec<RealEigen>,
    pub complex_pair: Option<ComplexPair>,
    /// Sizes of the groups of eigenvalues sharing a modulus, largest modulus first.
    pub modulus_pattern: Vec<usize>,
}

impl SpectralClass {
    pub fn all_real(&self) -> bool {
        self.complex_pair.is_none()
    }

    pub fn has_complex_pair(&self) -> bool {
        self.complex_pair.is_some()
    }

    /// The unique real eigenvalue when there is a complex pair.
    pub fn lone_real(&self) -> Option<&RealAlgebraic> {
        self.complex_pair.as_ref().map(|_| &self.real[0].value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    AbsIsolated,
    TwoModuliHighPair,
    TwoModuliLowPair,
    EqualModuli,
    IrrationalPairDominant,
    IrrationalPairDominated,
    IrrationalPairEqual,
}

impl CaseLabel {
    /// The label of `A'` given the label of `A`; the eigenvalues of `A'` are
    /// `|det A| / mu`, which reverses every modulus comparison.
    pub fn dual(self) -> Self {
        use CaseLabel::*;
        match self {
            TwoModuliHighPair => TwoModuliLowPair,
            TwoModuliLowPair => TwoModuliHighPair,
            IrrationalPairDominant => IrrationalPairDominated,
            IrrationalPairDominated => IrrationalPairDominant,
            other => other,
        }
    }

    pub fn is_irrational_pair(self) -> bool {
        matches!(
            self,
            CaseLabel::IrrationalPairDominant
                | CaseLabel::IrrationalPairDominated
                | CaseLabel::IrrationalPairEqual
        )
    }

    pub fn name(self) -> &'static str {
        use CaseLabel::*;
        match self {
            AbsIsolated => "AbsIsolated",
            TwoModuliHighPair => "TwoModuliHighPair",
            TwoModuliLowPair => "TwoModuliLowPair",
            EqualModuli => "EqualModuli",
            IrrationalPairDominant => "IrrationalPairDominant",
            IrrationalPairDominated => "IrrationalPairDominated",
            IrrationalPairEqual => "IrrationalPairEqual",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationCase {
    pub label: CaseLabel,
    /// `None` when every eigenvalue is real.
    pub ratio_root_of_unity: Option<bool>,
    pub spectrum: SpectralClass,
}

fn check_input(a: &IntMatrix) -> Result<()> {
    a.require_dim(3)?;
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    if !a.is_diagonalizable() {
        return Err(Error::NotDiagonalizable);
    }
    Ok(())
}

enum ModEntry<'a> {
    Real(&'a RealAlgebraic),
    Pair(&'a ComplexPair),
}

fn cmp_modulus(a: &ModEntry, b: &ModEntry) -> Ordering {
    match (a, b) {
        (ModEntry::Real(x), ModEntry::Real(y)) => x.cmp_abs(y),
        (ModEntry::Pair(pair), ModEntry::Real(r)) => pair_vs_real(pair, r),
        (ModEntry::Real(r), ModEntry::Pair(pair)) => pair_vs_real(pair, r).reverse(),
        (ModEntry::Pair(_), ModEntry::Pair(_)) => Ordering::Equal,
    }
}

/// Sign of `q - r^2`, i.e. `|mu|^2` against `r^2`.
fn pair_vs_real(pair: &ComplexPair, r: &RealAlgebraic) -> Ordering {
    let gen = &pair.generator;
    let r_sq = match r.as_rational() {
        Some(v) => RationalPoly::constant(&v * &v),
        None => {
            debug_assert!(r.same_value(gen));
            RationalPoly::x().pow(2)
        }
    };
    alg_sign(&(&pair.q - &r_sq), gen)
}

pub fn spectral_classify(a: &IntMatrix) -> Result<SpectralClass> {
    check_input(a)?;
    let cp = a.char_poly();
    let factors = factor_over_q(&cp);
    let mut real = Vec::new();
    let mut complex_pair = None;

    for f in &factors {
        match f.poly.degree() {
            Some(1) => real.push(RealEigen {
                value: RealAlgebraic::from_rational(&-f.poly.coeff(0)),
                multiplicity: f.multiplicity,
            }),
            Some(2) => {
                let b = f.poly.coeff(1);
                let c = f.poly.coeff(0);
                if &b * &b - &c * BigRational::from_integer(4.into()) > BigRational::zero() {
                    for r in RealAlgebraic::real_roots_of(&f.poly) {
                        real.push(RealEigen { value: r, multiplicity: 1 });
                    }
                } else {
                    // the remaining eigenvalue is rational; the real factor is linear
                    let nu = factors
                        .iter()
                        .find(|g| g.poly.degree() == Some(1))
                        .map(|g| -g.poly.coeff(0))
                        .expect("a cubic with a complex quadratic factor has a rational root");
                    complex_pair = Some(ComplexPair {
                        generator: RealAlgebraic::from_rational(&nu),
                        p: RationalPoly::constant(-b),
                        q: RationalPoly::constant(c),
                    });
                }
            }
            Some(3) => {
                let roots = RealAlgebraic::real_roots_of(&f.poly);
                if roots.len() == 3 {
                    for r in roots {
                        real.push(RealEigen { value: r, multiplicity: 1 });
                    }
                } else {
                    let nu = roots.into_iter().next().expect("odd degree has a real root");
                    let a2 = f.poly.coeff(2);
                    let a1 = f.poly.coeff(1);
                    let x = RationalPoly::x();
                    let p = -(&RationalPoly::constant(a2.clone()) + &x);
                    let q = &(&RationalPoly::constant(a1) + &x.scale(&a2)) + &x.pow(2);
                    let q = reduce(&q, &nu);
                    real.push(RealEigen { value: nu.clone(), multiplicity: 1 });
                    complex_pair = Some(ComplexPair { generator: nu, p, q });
                }
            }
            _ => unreachable!("factors of a cubic have degree 1 to 3"),
        }
    }
    real.sort_by(|x, y| y.value.cmp_value(&x.value));

    let mut entries: Vec<(ModEntry, usize)> = real
        .iter()
        .map(|e| (ModEntry::Real(&e.value), e.multiplicity))
        .collect();
    if let Some(pair) = &complex_pair {
        entries.push((ModEntry::Pair(pair), 2));
    }
    entries.sort_by(|x, y| cmp_modulus(&y.0, &x.0));
    let mut modulus_pattern: Vec<usize> = Vec::new();
    for (i, (e, m)) in entries.iter().enumerate() {
        if i > 0 && cmp_modulus(&entries[i - 1].0, e) == Ordering::Equal {
            *modulus_pattern.last_mut().unwrap() += m;
        } else {
            modulus_pattern.push(*m);
        }
    }

    Ok(SpectralClass {
        char_poly: cp,
        factors,
        real,
        complex_pair,
        modulus_pattern,
    })
}

/// Decides whether `mu / conj(mu)` is a root of unity for the pair with
/// `mu + conj(mu) = p` and `mu * conj(mu) = q`, both in `Q(generator)`.
///
/// Uses `d_1 = 1, d_2 = p, d_k = p d_(k-1) - q d_(k-2)`, so that
/// `d_k = (mu^k - conj(mu)^k) / (mu - conj(mu))` vanishes exactly when
/// `(mu / conj(mu))^k = 1`.
pub fn ratio_root_of_unity(
    p: &RationalPoly,
    q: &RationalPoly,
    generator: &RealAlgebraic,
) -> Result<bool> {
    let disc = &(p * p) - &q.scale(&BigRational::from_integer(4.into()));
    if alg_sign(&disc, generator) != Ordering::Less {
        return Err(Error::NotComplexPair);
    }
    let mut prev = RationalPoly::one();
    let mut cur = reduce(p, generator);
    for _m in 2..=ROOT_OF_UNITY_BOUND {
        if cur.is_zero() {
            return Ok(true);
        }
        let next = reduce(&(&(p * &cur) - &(q * &prev)), generator);
        prev = cur;
        cur = next;
    }
    Ok(false)
}

/// Rational convenience form of [`ratio_root_of_unity`].
pub fn ratio_root_of_unity_rational(p: &BigRational, q: &BigRational) -> Result<bool> {
    let gen = RealAlgebraic::from_rational(&BigRational::zero());
    ratio_root_of_unity(
        &RationalPoly::constant(p.clone()),
        &RationalPoly::constant(q.clone()),
        &gen,
    )
}

pub fn classify_case(a: &IntMatrix) -> Result<ClassificationCase> {
    let spectrum = spectral_classify(a)?;
    let ratio = match &spectrum.complex_pair {
        Some(pair) => Some(ratio_root_of_unity(&pair.p, &pair.q, &pair.generator)?),
        None => None,
    };
    let label = if ratio == Some(false) {
        let pair = spectrum.complex_pair.as_ref().unwrap();
        let nu = &spectrum.real[0].value;
        match pair_vs_real(pair, nu) {
            Ordering::Greater => CaseLabel::IrrationalPairDominant,
            Ordering::Less => CaseLabel::IrrationalPairDominated,
            Ordering::Equal => CaseLabel::IrrationalPairEqual,
        }
    } else {
        match spectrum.modulus_pattern.as_slice() {
            [1, 1, 1] => CaseLabel::AbsIsolated,
            [2, 1] => CaseLabel::TwoModuliHighPair,
            [1, 2] => CaseLabel::TwoModuliLowPair,
            [3] => CaseLabel::EqualModuli,
            other => unreachable!("modulus pattern {:?} of a cubic", other),
        }
    };
    Ok(ClassificationCase {
        label,
        ratio_root_of_unity: ratio,
        spectrum,
    })
}

/// Display form of an eigenvalue inventory.
pub fn describe_eigenvalues(s: &SpectralClass) -> Vec<String> {
    let mut out: Vec<String> = s
        .real
        .iter()
        .map(|e| {
            if e.multiplicity > 1 {
                format!("{} (x{})", e.value, e.multiplicity)
            } else {
                e.value.to_string()
            }
        })
        .collect();
    if let Some(pair) = &s.complex_pair {
        let p = pair.p.format_var("nu");
        let q = pair.q.format_var("nu");
        out.push(format!("complex pair with mu + conj(mu) = {}, |mu|^2 = {}", p, q));
    }
    out
}
