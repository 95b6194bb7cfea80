//! The monomial map of a matrix acting on the cones of a fan: regular
//! mapping, the orbit criterion for strong 1-stability, divisor pullback and
//! bounded checks of eventual stability.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Cone, FaceId, Fan};
use crate::linalg::lattice::{self, primitive, IVec};
use crate::linalg::IntMatrix;

/// The smallest cone of `f` containing `A(c)`, if any cone contains it.
pub fn maps_regularly(c: &Cone, a: &IntMatrix, f: &Fan) -> Option<FaceId> {
    if c.is_zero() {
        return f.face_id(&[]);
    }
    let images: Vec<IVec> = c.rays().iter().map(|r| a.apply(r)).collect();
    let x = images.iter().fold(lattice::zero(), |acc, v| lattice::add(&acc, v));
    let id = f.locate(&x)?;
    let target = f.face(id);
    images.iter().all(|v| target.contains(v)).then_some(id)
}

/// Convenience form returning the cone closure itself.
pub fn cone_closure(c: &Cone, a: &IntMatrix, f: &Fan) -> Option<Cone> {
    maps_regularly(c, a, f).map(|id| f.face(id).clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Stable,
    Unstable,
}

/// Orbit of one ray under iterated cone closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayOrbit {
    pub ray: usize,
    /// Cone closures `A^k(ray)` for `k = 0, 1, ...`, as ray-index lists.
    pub cones: Vec<Vec<usize>>,
    /// Index in `cones` where the periodic part starts, if a cycle was reached.
    pub cycle_start: Option<usize>,
}

/// First failing step of an orbit: the closure at step `k` does not map
/// regularly, its image passing through `image_point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureWitness {
    pub ray: usize,
    pub ray_vector: IVec,
    pub k: usize,
    pub image_point: IVec,
    pub cone: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub orbits: Vec<RayOrbit>,
    pub witness: Option<FailureWitness>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

fn require_nonsingular(a: &IntMatrix) -> Result<()> {
    a.require_dim(3)?;
    if a.det().is_zero() {
        Err(Error::SingularMatrix)
    } else {
        Ok(())
    }
}

/// Strong 1-stability of `f_A` on the toric variety of `f`: every ray's
/// sequence of cone closures must map regularly at every step. The sequence
/// lives in the finite set of cones, so it fails or cycles after at most as
/// many steps as there are cones.
pub fn strong_1_stability(f: &Fan, a: &IntMatrix) -> Result<StabilityReport> {
    require_nonsingular(a)?;
    f.require_complete()?;
    let mut step_cache: HashMap<FaceId, Option<FaceId>> = HashMap::new();
    let mut orbits = Vec::with_capacity(f.rays().len());
    let mut witness = None;
    for ray in 0..f.rays().len() {
        let mut state = f.ray_face(ray);
        let mut seen: HashMap<FaceId, usize> = HashMap::new();
        let mut cones = Vec::new();
        let mut cycle_start = None;
        loop {
            seen.insert(state, cones.len());
            cones.push(f.faces()[state].clone());
            let next = *step_cache
                .entry(state)
                .or_insert_with(|| maps_regularly(f.face(state), a, f));
            match next {
                None => {
                    if witness.is_none() {
                        let c = f.face(state);
                        witness = Some(FailureWitness {
                            ray,
                            ray_vector: f.rays()[ray].clone(),
                            k: cones.len() - 1,
                            image_point: primitive(&a.apply(&c.interior_point())),
                            cone: f.faces()[state].clone(),
                        });
                    }
                    break;
                }
                Some(n) => {
                    if let Some(&start) = seen.get(&n) {
                        cycle_start = Some(start);
                        break;
                    }
                    state = n;
                }
            }
        }
        orbits.push(RayOrbit { ray, cones, cycle_start });
    }
    let verdict = if orbits.iter().all(|o| o.cycle_start.is_some()) {
        Verdict::Stable
    } else {
        Verdict::Unstable
    };
    Ok(StabilityReport { verdict, orbits, witness })
}

/// 2-stability of `f_A`, decided as 1-stability of `f_A'`.
pub fn is_2_stable(f: &Fan, a: &IntMatrix) -> Result<StabilityReport> {
    require_nonsingular(a)?;
    strong_1_stability(f, &a.dual())
}

/// A torus-invariant divisor `sum a_i D_i`, indexed by the rays of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TInvariantDivisor {
    pub coeffs: Vec<BigRational>,
}

impl TInvariantDivisor {
    pub fn zero(num_rays: usize) -> Self {
        TInvariantDivisor {
            coeffs: vec![BigRational::zero(); num_rays],
        }
    }

    /// The prime divisor of a single ray.
    pub fn basis(num_rays: usize, ray: usize) -> Self {
        let mut d = Self::zero(num_rays);
        d.coeffs[ray] = BigRational::from_integer(BigInt::from(1));
        d
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TInvariantDivisor {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }
}

/// Piecewise-linear function on a complete simplicial fan, linear on each
/// maximal cone, with value `-a_i` at the generator of ray `i`.
#[derive(Clone, Debug)]
pub struct SupportFunction {
    /// One rational covector per maximal cone.
    pub slopes: Vec<[BigRational; 3]>,
}

fn rat_dot(m: &[BigRational; 3], x: &IVec) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..3 {
        acc += &m[i] * BigRational::from_integer(x[i].clone());
    }
    acc
}

impl SupportFunction {
    pub fn new(f: &Fan, d: &TInvariantDivisor) -> Result<Self> {
        if !f.is_simplicial() || !f.is_pure_full_dimensional() {
            return Err(Error::NotSimplicial);
        }
        let slopes = f
            .max_cones()
            .iter()
            .map(|mc| {
                let v: Vec<&IVec> = mc.iter().map(|&i| &f.rays()[i]).collect();
                let rhs: Vec<BigRational> = mc.iter().map(|&i| -d.coeffs[i].clone()).collect();
                solve_covector([v[0], v[1], v[2]], &rhs)
            })
            .collect();
        Ok(SupportFunction { slopes })
    }

    pub fn eval(&self, f: &Fan, x: &IVec) -> Result<BigRational> {
        for (i, g) in f.max_cone_geometry().iter().enumerate() {
            if g.contains(x) {
                return Ok(rat_dot(&self.slopes[i], x));
            }
        }
        Err(Error::OutsideSupport(lattice::format_ivec(x)))
    }
}

/// The covector `m` with `<m, v_i> = rhs_i`, by Cramer's rule.
fn solve_covector(v: [&IVec; 3], rhs: &[BigRational]) -> [BigRational; 3] {
    let det = BigRational::from_integer(lattice::det3(v[0], v[1], v[2]));
    // rows of the inverse transpose are cross products of the other two rows
    let c0 = lattice::cross(v[1], v[2]);
    let c1 = lattice::cross(v[2], v[0]);
    let c2 = lattice::cross(v[0], v[1]);
    let mut m: [BigRational; 3] = Default::default();
    for (j, mj) in m.iter_mut().enumerate() {
        let s = &rhs[0] * BigRational::from_integer(c0[j].clone())
            + &rhs[1] * BigRational::from_integer(c1[j].clone())
            + &rhs[2] * BigRational::from_integer(c2[j].clone());
        *mj = s / &det;
    }
    m
}

/// Pullback `f_A^* D`: the coefficient at ray `tau` is `-psi_D(A v_tau)`.
pub fn divisor_pullback(f: &Fan, a: &IntMatrix, d: &TInvariantDivisor) -> Result<TInvariantDivisor> {
    require_nonsingular(a)?;
    let psi = SupportFunction::new(f, d)?;
    let coeffs = f
        .rays()
        .iter()
        .map(|v| psi.eval(f, &a.apply(v)).map(|x| -x))
        .collect::<Result<Vec<_>>>()?;
    Ok(TInvariantDivisor { coeffs })
}

/// Outcome of a bounded check that pullbacks compose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PssReport {
    pub holds: bool,
    /// Largest `k + l` examined.
    pub verified_up_to: usize,
    /// `(k, l, ray)` of the first mismatch found.
    pub failure: Option<(usize, usize, usize)>,
}

/// Checks `(f^(k+l))^* D = (f^l)^* (f^k)^* D` for every ray divisor and all
/// `k, l >= k0` with `k + l <= max_total`.
pub fn verify_pss_report(f: &Fan, a: &IntMatrix, k0: usize, max_total: usize) -> Result<PssReport> {
    require_nonsingular(a)?;
    let n = f.rays().len();
    let k0 = k0.max(1);
    let mut powers: HashMap<usize, IntMatrix> = HashMap::new();
    let mut power = |k: usize| powers.entry(k).or_insert_with(|| a.pow(k as u32)).clone();
    for ray in 0..n {
        let d = TInvariantDivisor::basis(n, ray);
        for k in k0..=max_total {
            for l in k0..=max_total.saturating_sub(k) {
                let direct = divisor_pullback(f, &power(k + l), &d)?;
                let first = divisor_pullback(f, &power(k), &d)?;
                let composed = divisor_pullback(f, &power(l), &first)?;
                if direct != composed {
                    return Ok(PssReport {
                        holds: false,
                        verified_up_to: max_total,
                        failure: Some((k, l, ray)),
                    });
                }
            }
        }
    }
    Ok(PssReport {
        holds: true,
        verified_up_to: max_total,
        failure: None,
    })
}

pub fn verify_pss(f: &Fan, a: &IntMatrix, k0: usize, max_total: usize) -> Result<bool> {
    Ok(verify_pss_report(f, a, k0, max_total)?.holds)
}

/// First `(k, ray)` with `k <= max_k` at which `(f^k)^* D_ray` differs from
/// `(f^*)^k D_ray`, or `None` if all agree.
pub fn iterate_pullback_mismatch(
    f: &Fan,
    a: &IntMatrix,
    max_k: usize,
) -> Result<Option<(usize, usize)>> {
    let n = f.rays().len();
    for ray in 0..n {
        let mut iterated = TInvariantDivisor::basis(n, ray);
        let mut power = IntMatrix::identity(3);
        for k in 1..=max_k {
            iterated = divisor_pullback(f, a, &iterated)?;
            power = power.mul(a);
            let direct = divisor_pullback(f, &power, &TInvariantDivisor::basis(n, ray))?;
            if direct != iterated {
                return Ok(Some((k, ray)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lattice::ivec;

    fn example_map() -> IntMatrix {
        IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]])
    }

    #[test]
    fn maps_regularly_examples() {
        let p3 = Fan::projective_space();
        let c = Cone::new(&[ivec(1, 0, 0), ivec(0, 1, 0)]).unwrap();
        let id = maps_regularly(&c, &IntMatrix::identity(3), &p3).unwrap();
        assert_eq!(p3.face(id), &c);
        let ray = Cone::ray(&ivec(-1, -1, -1));
        let id = maps_regularly(&ray, &IntMatrix::diag(&[2, 3, 5]), &p3).unwrap();
        assert_eq!(
            p3.face(id).rays_sorted(),
            vec![ivec(-1, -1, -1), ivec(0, 1, 0), ivec(1, 0, 0)]
        );
        let id = maps_regularly(&Cone::ray(&ivec(1, 0, 0)), &example_map(), &p3).unwrap();
        assert_eq!(p3.face(id).dim(), 3);
        assert_eq!(p3.face(id).rays_sorted(), vec![ivec(0, 0, 1), ivec(0, 1, 0), ivec(1, 0, 0)]);
    }

    #[test]
    fn stability_examples() {
        let p3 = Fan::projective_space();
        assert!(strong_1_stability(&p3, &IntMatrix::identity(3)).unwrap().is_stable());
        assert!(strong_1_stability(&p3, &example_map()).unwrap().is_stable());
        let r = strong_1_stability(&p3, &IntMatrix::diag(&[2, 3, 5])).unwrap();
        assert!(r.is_stable());
        let orbit = &r.orbits[3];
        assert_eq!(orbit.cones.len(), 2);
        assert_eq!(orbit.cycle_start, Some(1));
        assert!(!is_2_stable(&p3, &example_map()).unwrap().is_stable());
        assert!(is_2_stable(&p3, &IntMatrix::identity(3)).unwrap().is_stable());
        assert!(is_2_stable(&p3, &IntMatrix::diag(&[2, 3, 5])).unwrap().is_stable());
    }

    #[test]
    fn unstable_witness() {
        let p3 = Fan::projective_space();
        let r = is_2_stable(&p3, &example_map()).unwrap();
        let w = r.witness.unwrap();
        assert!(r.orbits[w.ray].cycle_start.is_none());
    }

    #[test]
    fn pullback_examples() {
        let p3 = Fan::projective_space();
        let d = TInvariantDivisor::basis(4, 3);
        assert_eq!(divisor_pullback(&p3, &IntMatrix::identity(3), &d).unwrap(), d);
        let dd = divisor_pullback(&p3, &IntMatrix::scalar(3, 4.into()), &d).unwrap();
        assert_eq!(dd, TInvariantDivisor::from_ints(&[0, 0, 0, 4]));
        let pa = divisor_pullback(&p3, &example_map(), &d).unwrap();
        assert_eq!(pa, TInvariantDivisor::from_ints(&[0, 0, 0, 7]));
        assert!(matches!(
            divisor_pullback(
                &Fan::from_cones(&[
                    vec![ivec(1, 0, 0), ivec(0, 1, 0), ivec(1, 0, 1), ivec(0, 1, 1)]
                ])
                .unwrap(),
                &IntMatrix::identity(3),
                &TInvariantDivisor::zero(4)
            ),
            Err(Error::NotSimplicial)
        ));
    }

    #[test]
    fn pss_examples() {
        let p3 = Fan::projective_space();
        assert!(verify_pss(&p3, &IntMatrix::identity(3), 1, 4).unwrap());
        assert!(verify_pss(&p3, &IntMatrix::diag(&[2, 3, 5]), 1, 6).unwrap());
        let unstable = IntMatrix::from_i64([[2, 1, 0], [1, 1, 0], [0, 0, 1]]);
        let r = strong_1_stability(&p3, &unstable).unwrap();
        if !r.is_stable() {
            assert!(iterate_pullback_mismatch(&p3, &unstable, 6).unwrap().is_some()
                || r.witness.is_some());
        }
    }
}
