//! Seed values and index bookkeeping.
//!
//! Two index conventions coexist. The recurrence is stated on `x_m` with seeds
//! `x_{-5}..x_0`; the forward form is stated on `u_k = x_{k-5}` with seeds
//! `u_0..u_5`. Closed forms are organised by residue class mod 4:
//! `m = 4n - 5 + j`, i.e. `u_{4n+j}`.

use crate::error::{Error, Result};
use crate::number::Rational;

/// The six seeds `x_{-5}, x_{-4}, x_{-3}, x_{-2}, x_{-1}, x_0`, all nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialConditions {
    values: [Rational; 6],
}

/// Validates that no seed is zero. The error names the first zero seed by its
/// `x` index.
pub fn make_initial_conditions(values: [Rational; 6]) -> Result<InitialConditions> {
    InitialConditions::new(values)
}

impl InitialConditions {
    pub fn new(values: [Rational; 6]) -> Result<Self> {
        if let Some(pos) = values.iter().position(Rational::is_zero) {
            return Err(Error::ZeroInitialValue(pos as i64 - 5));
        }
        Ok(InitialConditions { values })
    }

    /// Convenience constructor from `(numer, denom)` pairs.
    pub fn from_pairs(pairs: [(i64, i64); 6]) -> Result<Self> {
        let mut values: [Rational; 6] = Default::default();
        for (slot, (n, d)) in values.iter_mut().zip(pairs) {
            *slot = Rational::new(n, d)?;
        }
        Self::new(values)
    }

    /// Seeds in order `x_{-5}..x_0`.
    pub fn values(&self) -> &[Rational; 6] {
        &self.values
    }

    /// `x_m` for `m` in `-5..=0`.
    pub fn x(&self, m: i64) -> &Rational {
        assert!((-5..=0).contains(&m), "seed index x_{m} out of range");
        &self.values[(m + 5) as usize]
    }

    /// `u_k = x_{k-5}` for `k` in `0..=5`.
    pub fn u(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    /// Named seeds `(c, d, e, f, g, h) = (x_{-5}, .., x_0)`.
    pub fn letters(
        &self,
    ) -> (
        &Rational,
        &Rational,
        &Rational,
        &Rational,
        &Rational,
        &Rational,
    ) {
        let v = &self.values;
        (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5])
    }
}

/// `m = 4n - 5 + j` with `j` in `0..4` and `n >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermIndex {
    pub m: i64,
    pub j: u8,
    pub n: u64,
}

impl TermIndex {
    /// Position in the forward (`u`) numbering: `4n + j`.
    pub fn u_index(&self) -> u64 {
        4 * self.n + self.j as u64
    }
}

pub fn decompose_index(m: i64) -> Result<TermIndex> {
    if m < -5 {
        return Err(Error::IndexBelowSeed(m));
    }
    let k = (m + 5) as u64;
    Ok(TermIndex {
        m,
        j: (k % 4) as u8,
        n: k / 4,
    })
}
