//! Exact classification and stabilization of monomial maps on toric
//! threefolds.
//!
//! A monomial map is given by a 3x3 integer matrix `A`. The crate decides,
//! with exact arithmetic only, how the spectrum of `A` is organized, whether
//! the induced map is algebraically stable on a given complete fan, how to
//! refine a fan to make it stable when that is possible, and how the degrees
//! of the iterates grow.
//!
//! ```
//! use toric_dynamics::prelude::*;
//!
//! let a = IntMatrix::from_i64([[1, 1, 5], [4, 1, 2], [1, 5, 1]]);
//! let case = classify_case(&a).unwrap();
//! assert_eq!(case.label, CaseLabel::IrrationalPairDominated);
//!
//! let p3 = Fan::projective_space();
//! assert!(strong_1_stability(&p3, &a).unwrap().is_stable());
//! assert!(!is_2_stable(&p3, &a).unwrap().is_stable());
//! ```

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fan;
pub mod io;
pub mod linalg;
pub mod polytope;
pub mod spectra;
pub mod stabilizer;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::dynamics::{
        divisor_pullback, is_2_stable, maps_regularly, strong_1_stability, verify_pss,
        StabilityReport, TInvariantDivisor, Verdict,
    };
    pub use crate::error::{Error, Result};
    pub use crate::fan::{Cone, Fan, Location, RationalPlane};
    pub use crate::linalg::lattice::ivec;
    pub use crate::linalg::{det_adjugate, IVec, IntMatrix, RationalPoly};
    pub use crate::polytope::{
        degree_p, degree_sequence, homogenization_oracle, min_recurrence, minkowski_sum,
        mixed_volume, volume, LatticePolytope,
    };
    pub use crate::spectra::{classify_case, ratio_root_of_unity, spectral_classify, CaseLabel};
    pub use crate::stabilizer::{
        case2_subclassify, case_verdict, stabilize, stabilize_equal_moduli, stabilize_search,
        stabilize_two_moduli, Budget, Outcome,
    };
}
