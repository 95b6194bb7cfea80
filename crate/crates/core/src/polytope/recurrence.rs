//! Minimal linear recurrences of exact rational sequences.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `x_k = coeffs[0] x_{k-1} + ... + coeffs[r-1] x_{k-r}`, checked on the
/// first `window` terms of the sequence it was fitted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coeffs: Vec<BigRational>,
    pub window: usize,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Whether every term from index `order` on satisfies the relation.
    pub fn holds_on(&self, seq: &[BigRational]) -> bool {
        let r = self.order();
        (r..seq.len()).all(|k| self.next_from(&seq[..k]).as_ref() == Some(&seq[k]))
    }

    /// The term following `prefix`, if the prefix is long enough.
    pub fn next_from(&self, prefix: &[BigRational]) -> Option<BigRational> {
        let r = self.order();
        if prefix.len() < r {
            return None;
        }
        let k = prefix.len();
        Some(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * &prefix[k - 1 - i])
                .fold(BigRational::zero(), |acc, t| acc + t),
        )
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_k =")?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                write!(f, " {}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "x_{{k-{}}}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, " 0")?;
        }
        Ok(())
    }
}

/// Berlekamp–Massey over the rationals. Returns the minimal recurrence when
/// its order `r` satisfies `2r + 2 <= len`, so that at least two terms beyond
/// those determining it confirm it, and `None` otherwise.
pub fn min_recurrence(seq: &[BigRational]) -> Result<Option<LinearRecurrence>> {
    if seq.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: seq.len(),
        });
    }
    // connection polynomial: sum_i conn[i] x_{k-i} = 0 with conn[0] = 1
    let mut conn = vec![BigRational::one()];
    let mut prev = vec![BigRational::one()];
    let mut order = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = BigRational::one();
    for n in 0..seq.len() {
        let disc = (0..=order)
            .map(|i| &conn[i] * &seq[n - i])
            .fold(BigRational::zero(), |acc, t| acc + t);
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &disc / &prev_disc;
        let mut next = conn.clone();
        if next.len() < prev.len() + shift {
            next.resize(prev.len() + shift, BigRational::zero());
        }
        for (i, b) in prev.iter().enumerate() {
            next[i + shift] -= &factor * b;
        }
        if 2 * order <= n {
            prev = std::mem::replace(&mut conn, next);
            order = n + 1 - order;
            prev_disc = disc;
            shift = 1;
        } else {
            conn = next;
            shift += 1;
        }
    }
    conn.resize(order + 1, BigRational::zero());
    if 2 * order + 2 > seq.len() {
        return Ok(None);
    }
    let rec = LinearRecurrence {
        coeffs: conn[1..].iter().map(|c| -c).collect(),
        window: seq.len(),
    };
    debug_assert!(rec.holds_on(seq));
    Ok(Some(rec))
}
