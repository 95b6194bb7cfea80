//! Case-by-case construction of stable models, and the obstructions that
//! rule them out.

pub mod case2;
pub mod equal_moduli;
pub mod search;
pub mod two_moduli;

pub use case2::{case2_subclassify, Case2Report, Case2Subcase, EigenDirection};
pub use equal_moduli::stabilize_equal_moduli;
pub use search::stabilize_search;
pub use two_moduli::stabilize_two_moduli;

use std::fmt;

use serde::Serialize;

use crate::dynamics::{is_2_stable, strong_1_stability};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::IntMatrix;
use crate::spectra::{classify_case, CaseLabel};

/// Iteration limits for the constructions that search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Rays added while closing plane sections under the map.
    pub capture_steps: usize,
    /// Star subdivisions tried by the certified search.
    pub subdivisions: usize,
    /// Largest power scanned for an eventual stability exponent.
    pub k0_scan: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            capture_steps: 200,
            subdivisions: 50,
            k0_scan: 24,
        }
    }
}

impl Budget {
    pub const ENV_VAR: &'static str = "TORIC_BUDGET";

    /// Parses either a bare integer, which sets every limit, or a comma
    /// separated list of `capture=N`, `subdivisions=N`, `k0=N`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad budget value {s:?}")))
        };
        if let Ok(n) = text.parse::<usize>() {
            return Ok(Budget {
                capture_steps: n,
                subdivisions: n,
                k0_scan: n,
            });
        }
        let mut b = Budget::default();
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad budget entry {part:?}")))?;
            match key.trim() {
                "capture" => b.capture_steps = num(value)?,
                "subdivisions" => b.subdivisions = num(value)?,
                "k0" => b.k0_scan = num(value)?,
                other => return Err(Error::Parse(format!("unknown budget key {other:?}"))),
            }
        }
        Ok(b)
    }

    /// Defaults overridden by `TORIC_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }
}

/// Which stability questions an obstruction settles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstructed {
    OneStable,
    Both,
}

impl fmt::Display for Obstructed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstructed::OneStable => f.write_str("1-stable"),
            Obstructed::Both => f.write_str("1-stable and 2-stable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `fan` is certified 1-stable for every power in `certified_powers`,
    /// and 2-stable for the same powers when `two_stable` is set.
    StabilizedFan {
        fan: Fan,
        k0: usize,
        two_stable: bool,
        certified_powers: Vec<usize>,
    },
    /// No complete fan works, for any iterate.
    NoModelExists { scope: Obstructed, reason: String },
    /// The given fan admits no stabilizing refinement.
    NotByRefinement {
        subcase: Option<u8>,
        reason: String,
    },
    /// A search ran out of budget before certifying anything.
    SearchExhausted { budget: usize, reason: String },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::StabilizedFan { .. } => "StabilizedFan",
            Outcome::NoModelExists { .. } => "NoModelExists",
            Outcome::NotByRefinement { .. } => "NotByRefinement",
            Outcome::SearchExhausted { .. } => "SearchExhausted",
        }
    }

    pub fn fan(&self) -> Option<&Fan> {
        match self {
            Outcome::StabilizedFan { fan, .. } => Some(fan),
            _ => None,
        }
    }

    pub fn k0(&self) -> Option<usize> {
        match self {
            Outcome::StabilizedFan { k0, .. } => Some(*k0),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationOutcome {
    pub case: CaseLabel,
    pub verdict: Outcome,
    /// Steps applied, in order.
    pub log: Vec<String>,
}

/// Runs the checker on `A^k` for every listed power. Returns the first
/// power that fails.
pub(crate) fn certify(f: &Fan, a: &IntMatrix, powers: &[usize], two_stable: bool) -> Result<Option<usize>> {
    for &k in powers {
        let ak = a.pow(k as u32);
        if !strong_1_stability(f, &ak)?.is_stable() {
            return Ok(Some(k));
        }
        if two_stable && !is_2_stable(f, &ak)?.is_stable() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

pub(crate) fn require_case(a: &IntMatrix, allowed: &[CaseLabel]) -> Result<CaseLabel> {
    let label = classify_case(a)?.label;
    if allowed.contains(&label) {
        Ok(label)
    } else {
        Err(Error::WrongCase(label.to_string()))
    }
}

/// The verdict that holds for every complete fan.
pub fn case_verdict(a: &IntMatrix) -> Result<StabilizationOutcome> {
    let label = require_case(
        a,
        &[CaseLabel::IrrationalPairDominant, CaseLabel::IrrationalPairEqual],
    )?;
    let (scope, reason, log) = match label {
        CaseLabel::IrrationalPairDominant => (
            Obstructed::OneStable,
            "the complex pair dominates the real eigenvalue and its argument is not a rational angle"
                .to_string(),
            vec![format!(
                "2-stability is the 1-stability question for the dual matrix {}, which is {} and depends on the fan",
                a.dual(),
                label.dual()
            )],
        ),
        _ => (
            Obstructed::Both,
            "the complex pair and the real eigenvalue share a modulus and the argument is not a rational angle"
                .to_string(),
            vec!["the obstruction holds for every complete fan and every iterate".to_string()],
        ),
    };
    Ok(StabilizationOutcome {
        case: label,
        verdict: Outcome::NoModelExists { scope, reason },
        log,
    })
}

/// Dispatches on the case label of `A`.
pub fn stabilize(f: &Fan, a: &IntMatrix, budget: &Budget) -> Result<StabilizationOutcome> {
    f.require_complete()?;
    match classify_case(a)?.label {
        CaseLabel::EqualModuli => stabilize_equal_moduli(f, a),
        CaseLabel::TwoModuliHighPair | CaseLabel::TwoModuliLowPair => {
            stabilize_two_moduli(f, a, budget)
        }
        CaseLabel::AbsIsolated => stabilize_search(f, a, budget),
        CaseLabel::IrrationalPairDominated => Ok(case2_subclassify(f, a, budget)?.outcome),
        CaseLabel::IrrationalPairDominant | CaseLabel::IrrationalPairEqual => case_verdict(a),
    }
}
