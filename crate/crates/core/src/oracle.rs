//! Brute-force ground truth: direct iteration of
//!
//! ```text
//! x_{n+1} = x_{n-5} x_{n-3} / (x_{n-1} (a_n + b_n x_{n-5} x_{n-3}))
//! ```
//!
//! in exact arithmetic, plus the invariant sequence `V_n = 1/(u_n u_{n+2})`
//! read directly off an orbit. Every other engine in the crate is checked
//! against this module.

use crate::error::{Error, Result};
use crate::number::Rational;
use crate::seeds::InitialConditions;
use crate::sequence::CoefficientSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityCause {
    /// `x_{n-1} = 0`. Unreachable from nonzero seeds, kept as a guard.
    ZeroPredecessor,
    /// `a_n + b_n x_{n-5} x_{n-3} = 0`.
    ZeroDenominatorFactor,
}

/// Why and where iteration stopped: `x_{step+1}` could not be formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub step: u64,
    pub cause: SingularityCause,
}

/// A trajectory `x_{-5}, .., x_N`, possibly cut short by a singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    terms: Vec<Rational>,
    halt: Option<SingularityReport>,
}

impl Orbit {
    /// All stored terms, starting at `x_{-5}` (equivalently `u_0`).
    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn halt(&self) -> Option<SingularityReport> {
        self.halt
    }

    /// `x_m`, if stored.
    pub fn x(&self, m: i64) -> Option<&Rational> {
        if m < -5 {
            return None;
        }
        self.terms.get((m + 5) as usize)
    }

    /// `u_k = x_{k-5}`, if stored.
    pub fn u(&self, k: u64) -> Option<&Rational> {
        self.terms.get(usize::try_from(k).ok()?)
    }

    /// Largest stored `x` index.
    pub fn last_index(&self) -> i64 {
        self.terms.len() as i64 - 6
    }
}

/// Iterates the recurrence `count` times from the seeds, consuming
/// `(a_n, b_n)` to produce `x_{n+1}` for `n = 0..count`.
///
/// A vanishing denominator is not an error: the orbit is truncated before
/// the term that could not be formed and [`Orbit::halt`] says why.
pub fn iterate(ic: &InitialConditions, coeffs: &CoefficientSequence, count: u64) -> Result<Orbit> {
    let mut terms: Vec<Rational> = ic.values().to_vec();
    terms.reserve(count as usize);
    for n in 0..count {
        let k = n as usize;
        let (a, b) = coeffs.pair(n)?;
        let (u0, u2, u4) = (&terms[k], &terms[k + 2], &terms[k + 4]);
        if u4.is_zero() {
            let halt = SingularityReport {
                step: n,
                cause: SingularityCause::ZeroPredecessor,
            };
            return Ok(Orbit {
                terms,
                halt: Some(halt),
            });
        }
        let prod = u0 * u2;
        let factor = &a + &b * &prod;
        if factor.is_zero() {
            let halt = SingularityReport {
                step: n,
                cause: SingularityCause::ZeroDenominatorFactor,
            };
            return Ok(Orbit {
                terms,
                halt: Some(halt),
            });
        }
        let next = prod.checked_div(&(u4 * &factor))?;
        terms.push(next);
    }
    Ok(Orbit { terms, halt: None })
}

/// `V_0, V_1, ..` with `V_n = 1/(u_n u_{n+2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSequence {
    values: Vec<Rational>,
}

impl InvariantSequence {
    pub fn from_values(values: Vec<Rational>) -> Self {
        InvariantSequence { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }
}

pub fn invariant_sequence(orbit: &Orbit) -> Result<InvariantSequence> {
    let u = orbit.terms();
    if u.len() < 3 {
        return Err(Error::TooShort {
            needed: 3,
            got: u.len(),
        });
    }
    let values = u
        .iter()
        .zip(&u[2..])
        .map(|(a, b)| (a * b).recip())
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantSequence { values })
}

/// Residuals `V_{n+4} - (a_n V_n + b_n)` for every `n` with `V_{n+4}` stored.
/// All of them vanish on any orbit produced by [`iterate`].
pub fn check_invariant_recurrence(
    v: &InvariantSequence,
    coeffs: &CoefficientSequence,
) -> Result<Vec<Rational>> {
    let vals = v.values();
    if vals.len() < 5 {
        return Err(Error::TooShort {
            needed: 5,
            got: vals.len(),
        });
    }
    vals.iter()
        .zip(&vals[4..])
        .enumerate()
        .map(|(n, (vn, vn4))| {
            let (a, b) = coeffs.pair(n as u64)?;
            Ok(vn4 - (&a * vn + b))
        })
        .collect()
}
