//! General closed-form solution.
//!
//! The invariant `V_n = 1/(u_n u_{n+2})` obeys the affine recurrence
//! `V_{n+4} = a_n V_n + b_n`, so on each residue class `4n + j` it has the
//! explicit solution
//!
//! ```text
//! V_{4n+j} = V_j · Π_{k=0}^{n-1} a_{4k+j} + Σ_{l=0}^{n-1} b_{4l+j} Π_{k=l+1}^{n-1} a_{4k+j}
//! ```
//!
//! and the terms themselves follow from the telescoping product
//! `u_{4n+j} = u_j Π_{s=0}^{n-1} V_{4s+j} / V_{4s+j+2}`.
//!
//! This module also carries the floating-point "unified" representation of
//! `|u_n|` built from the canonical coordinate of the scaling symmetry.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::number::{GaussianRational, Rational};
use crate::oracle::Orbit;
use crate::seeds::{decompose_index, InitialConditions};
use crate::sequence::CoefficientSequence;

/// `(Π_{k=0}^{len-1} a_{4k+j}, Σ_{l=0}^{len-1} b_{4l+j} Π_{k=l+1}^{len-1} a_{4k+j})`.
///
/// Empty products are one and empty sums zero.
fn affine_parts(j: u8, len: u64, coeffs: &CoefficientSequence) -> Result<(Rational, Rational)> {
    let pairs = (0..len)
        .map(|k| coeffs.pair(4 * k + j as u64))
        .collect::<Result<Vec<_>>>()?;
    // Walk backwards so the running suffix product is Π_{k=l+1}^{len-1} a.
    let mut suffix = Rational::one();
    let mut sum = Rational::zero();
    for (a, b) in pairs.iter().rev() {
        sum = sum + b * &suffix;
        suffix = suffix * a;
    }
    Ok((suffix, sum))
}

/// `V_j = 1/(u_j u_{j+2})` for `j` in `0..4`.
fn seed_invariant(j: u8, ic: &InitialConditions) -> Rational {
    let j = j as usize;
    (ic.u(j) * ic.u(j + 2)).recip().expect("seeds are nonzero")
}

/// `V_{4n+j}` from the explicit product/sum formula.
pub fn v_closed(
    j: u8,
    n: u64,
    ic: &InitialConditions,
    coeffs: &CoefficientSequence,
) -> Result<Rational> {
    assert!(j < 4, "residue class must be in 0..4, got {j}");
    let (prod, sum) = affine_parts(j, n, coeffs)?;
    Ok(seed_invariant(j, ic) * prod + sum)
}

/// `V_k` for an arbitrary index, routed to its residue class.
pub fn v_at(k: u64, ic: &InitialConditions, coeffs: &CoefficientSequence) -> Result<Rational> {
    v_closed((k % 4) as u8, k / 4, ic, coeffs)
}

/// The `(j, s)` label of the well-definedness condition that fails when
/// `V_{v_index}` vanishes (`v_index >= 4`).
fn welldef_label(v_index: u64) -> (u8, u64) {
    let j = (v_index % 4) as u8;
    let q = v_index / 4;
    if j < 2 {
        (j, q - 1)
    } else {
        (j, q)
    }
}

pub(crate) fn singular(v_index: u64) -> Error {
    let (j, s) = welldef_label(v_index);
    Error::SingularClosedForm { j, s, v_index }
}

/// `x_m` from the telescoping product over closed-form invariants.
///
/// Fails with [`Error::SingularClosedForm`] if any invariant factor in the
/// product vanishes; the error carries the `(j, s)` label of the violated
/// well-definedness condition (see [`well_defined`]).
pub fn term(m: i64, ic: &InitialConditions, coeffs: &CoefficientSequence) -> Result<Rational> {
    let t = decompose_index(m)?;
    let j = t.j as u64;
    let mut value = ic.u(t.j as usize).clone();
    for s in 0..t.n {
        let num_index = 4 * s + j;
        let den_index = num_index + 2;
        let den = v_at(den_index, ic, coeffs)?;
        if den.is_zero() {
            return Err(singular(den_index));
        }
        let num = v_at(num_index, ic, coeffs)?;
        if num.is_zero() {
            return Err(singular(num_index));
        }
        value = value * num.checked_div(&den)?;
    }
    Ok(value)
}

/// One failed well-definedness condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub j: u8,
    pub s: u64,
}

impl Violation {
    /// Index of the invariant `V` that vanishes.
    pub fn v_index(&self) -> u64 {
        if self.j < 2 {
            4 * (self.s + 1) + self.j as u64
        } else {
            4 * self.s + self.j as u64
        }
    }

    /// The iteration step `n` at which the direct recurrence meets
    /// `a_n + b_n x_{n-5} x_{n-3} = 0` if this is the first violation.
    pub fn step(&self) -> u64 {
        self.v_index() - 4
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedReport {
    /// Sorted by [`Violation::step`].
    pub violations: Vec<Violation>,
    pub seeds_nonzero: bool,
    pub horizon: u64,
}

impl WellDefinedReport {
    pub fn is_well_defined(&self) -> bool {
        self.seeds_nonzero && self.violations.is_empty()
    }

    /// The violation the direct recurrence would hit first.
    pub fn first(&self) -> Option<Violation> {
        self.violations.first().copied()
    }
}

/// Checks, for `s = 0..=horizon`,
///
/// ```text
/// -x_{-5+j} x_{-3+j} Σ_{l=0}^{s-i} b_{4l+j} Π_{k=l+1}^{s-i} a_{4k+j}  ≠  Π_{k=0}^{s-i} a_{4k+j}
/// ```
///
/// with `i = 0` for `j ∈ {0, 1}` and `i = 1` for `j ∈ {2, 3}`. Equality is
/// exactly the vanishing of `V_{4(s-i+1)+j}`.
pub fn well_defined(
    ic: &InitialConditions,
    coeffs: &CoefficientSequence,
    horizon: u64,
) -> Result<WellDefinedReport> {
    let mut violations = Vec::new();
    for j in 0..4u8 {
        let i = if j < 2 { 0 } else { 1 };
        let seed_product = ic.x(-5 + j as i64) * ic.x(-3 + j as i64);
        for s in 0..=horizon {
            // s - i + 1 terms; for (i = 1, s = 0) the condition reads 0 ≠ 1.
            let len = s + 1 - i;
            let (prod, sum) = affine_parts(j, len, coeffs)?;
            if -(&seed_product * &sum) == prod {
                violations.push(Violation { j, s });
            }
        }
    }
    violations.sort_by_key(|v| (v.step(), v.j));
    Ok(WellDefinedReport {
        violations,
        seeds_nonzero: ic.values().iter().all(|x| !x.is_zero()),
        horizon,
    })
}

/// The conditions of [`well_defined`] whose violation would stop the direct
/// recurrence at a step below `steps`. Only coefficients with index below
/// `steps` are read, so finite lists of that length suffice.
pub fn well_defined_before(
    ic: &InitialConditions,
    coeffs: &CoefficientSequence,
    steps: u64,
) -> Result<WellDefinedReport> {
    let mut violations = Vec::new();
    let mut horizon = 0;
    for j in 0..4u8 {
        let i = if j < 2 { 0 } else { 1 };
        let seed_product = ic.x(-5 + j as i64) * ic.x(-3 + j as i64);
        for s in i.. {
            let v = Violation { j, s };
            if v.step() >= steps {
                break;
            }
            horizon = horizon.max(s);
            let (prod, sum) = affine_parts(j, s + 1 - i, coeffs)?;
            if -(&seed_product * &sum) == prod {
                violations.push(v);
            }
        }
    }
    violations.sort_by_key(|v| (v.step(), v.j));
    Ok(WellDefinedReport {
        violations,
        seeds_nonzero: ic.values().iter().all(|x| !x.is_zero()),
        horizon,
    })
}

/// `γ(n, k) = β^n β̄^k = i^{n-k}`.
pub fn gamma(n: i64, k: i64) -> GaussianRational {
    GaussianRational::i_pow(n - k)
}

/// `S_n = β^{-n} ln|u_n|`.
pub fn canonical_coordinate(n: u64, orbit: &Orbit) -> Result<Complex64> {
    let u = orbit.u(n).ok_or(Error::OutOfRange(n as i64))?;
    if u.is_zero() {
        return Err(Error::OutOfRange(n as i64));
    }
    Ok(GaussianRational::i_pow(-(n as i64)).to_complex64() * u.ln_abs())
}

/// Integration constants of the unified solution:
/// `c1 + c2 = ln|u_0|` and `β (c1 - c2) = ln|u_1|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnifiedConstants {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl UnifiedConstants {
    pub fn from_seeds(ic: &InitialConditions) -> Self {
        let l0 = ic.u(0).ln_abs();
        let l1 = ic.u(1).ln_abs();
        // c1 - c2 = ln|u_1| / i = -i ln|u_1|
        let diff = Complex64::new(0.0, -l1);
        UnifiedConstants {
            c1: (Complex64::new(l0, 0.0) + diff) / 2.0,
            c2: (Complex64::new(l0, 0.0) - diff) / 2.0,
        }
    }
}

/// The exponent `β^n c1 + β̄^n c2 + Σ_{k<n} Re γ(n,k) ln|V_k|` whose
/// exponential is `|u_n|`. Its imaginary part is zero up to rounding.
pub fn unified_exponent(
    n: u64,
    ic: &InitialConditions,
    coeffs: &CoefficientSequence,
) -> Result<Complex64> {
    let c = UnifiedConstants::from_seeds(ic);
    let beta_n = GaussianRational::i_pow(n as i64).to_complex64();
    let mut acc = beta_n * c.c1 + beta_n.conj() * c.c2;
    let mut sum = 0.0;
    for k in 0..n {
        let weight = gamma(n as i64, k as i64).re;
        if weight.is_zero() {
            continue;
        }
        let v = v_at(k, ic, coeffs)?;
        if v.is_zero() {
            return Err(singular(k));
        }
        sum += weight.to_f64() * v.ln_abs();
    }
    acc += sum;
    Ok(acc)
}

/// `|u_n| = |x_{n-5}|` from the unified formula.
///
/// Only the magnitude is recovered; the sign lives on the exact path.
pub fn unified_magnitude(
    n: u64,
    ic: &InitialConditions,
    coeffs: &CoefficientSequence,
) -> Result<f64> {
    Ok(unified_exponent(n, ic, coeffs)?.re.exp())
}
