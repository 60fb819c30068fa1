//! Seeded random instances for property tests, acceptance runs and the CLI.
//!
//! All generators take a `ChaCha8Rng` so a run is reproducible from a single
//! `u64` seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::number::Rational;
use crate::oracle::iterate;
use crate::seeds::InitialConditions;
use crate::sequence::CoefficientSequence;
use crate::symmetry::LscSample;

/// Seeds plus coefficients: everything needed to run the recurrence.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ic: InitialConditions,
    pub coeffs: CoefficientSequence,
}

pub const MAX_DENOMINATOR: i64 = 10;
pub const BOUND: i64 = 10;

/// A rational `p/q` in `[-BOUND, BOUND]` with `1 <= q <= MAX_DENOMINATOR`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=MAX_DENOMINATOR);
    let p = rng.gen_range(-BOUND * q..=BOUND * q);
    Rational::new(p, q).expect("q >= 1")
}

pub fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_initial_conditions(rng: &mut ChaCha8Rng) -> InitialConditions {
    InitialConditions::new(std::array::from_fn(|_| random_nonzero_rational(rng)))
        .expect("values are nonzero")
}

/// Periodic coefficients with nonzero `a`. Period 1 is stored as
/// [`CoefficientSequence::Constant`].
pub fn random_coefficients(rng: &mut ChaCha8Rng, period: usize) -> CoefficientSequence {
    assert!(period >= 1);
    let a: Vec<Rational> = (0..period).map(|_| random_nonzero_rational(rng)).collect();
    let b: Vec<Rational> = (0..period).map(|_| random_rational(rng)).collect();
    if period == 1 {
        CoefficientSequence::constant(a[0].clone(), b[0].clone())
    } else {
        CoefficientSequence::periodic(a, b).expect("equal lengths")
    }
}

/// Random seeds with constant, 2-, 3- or 4-periodic coefficients.
pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let ic = random_initial_conditions(rng);
    let period = rng.gen_range(1..=4);
    Instance {
        ic,
        coeffs: random_coefficients(rng, period),
    }
}

/// Like [`random_instance`] but rejects instances whose orbit meets a
/// singularity within `steps` iterations.
pub fn random_regular_instance(rng: &mut ChaCha8Rng, steps: u64) -> Instance {
    loop {
        let inst = random_instance(rng);
        let orbit = iterate(&inst.ic, &inst.coeffs, steps).expect("periodic coefficients");
        if orbit.halt().is_none() {
            return inst;
        }
    }
}

/// An instance with list coefficients of length `len` that sits on or next
/// to a singularity.
///
/// A step `n* < len` is drawn and the orbit is followed up to it; then
/// `a_{n*}` is set to `-b_{n*} u_{n*} u_{n*+2}` so that the denominator
/// factor vanishes there. If `exact` is false, `a_{n*}` is shifted by a small
/// amount instead, giving an instance that narrowly avoids that singularity.
pub fn near_singular_instance(rng: &mut ChaCha8Rng, len: u64, exact: bool) -> Instance {
    assert!(len >= 1);
    loop {
        let ic = random_initial_conditions(rng);
        let target = rng.gen_range(0..len);
        let mut a: Vec<Rational> = (0..len).map(|_| random_nonzero_rational(rng)).collect();
        let b: Vec<Rational> = (0..len).map(|_| random_nonzero_rational(rng)).collect();
        let prefix =
            CoefficientSequence::list(a[..target as usize].to_vec(), b[..target as usize].to_vec())
                .expect("equal lengths");
        let orbit = iterate(&ic, &prefix, target).expect("within horizon");
        if orbit.halt().is_some() {
            continue;
        }
        let k = target as usize;
        let u = orbit.terms();
        let mut pivot = -(&b[k] * &u[k] * &u[k + 2]);
        if !exact {
            pivot = pivot + Rational::new(1, 1000).expect("nonzero denominator");
        }
        if pivot.is_zero() {
            continue;
        }
        a[k] = pivot;
        let coeffs = CoefficientSequence::list(a, b).expect("equal lengths");
        return Instance { ic, coeffs };
    }
}

/// Constant coefficients with `b` solved from `V_{4s+j} = 0` for a drawn
/// class `j` and `1 <= s <= max_s`:
/// `b = -V_j a^s / Σ_{l<s} a^l`. Returns the instance and `4s + j`.
pub fn singular_constant_instance(rng: &mut ChaCha8Rng, max_s: u64) -> (Instance, u64) {
    assert!(max_s >= 1);
    loop {
        let ic = random_initial_conditions(rng);
        let a = random_nonzero_rational(rng);
        let j = rng.gen_range(0..4usize);
        let s = rng.gen_range(1..=max_s);
        let v_j = (ic.u(j) * ic.u(j + 2)).recip().expect("nonzero seeds");
        let mut sum = Rational::zero();
        let mut power = Rational::one();
        for _ in 0..s {
            sum = sum + &power;
            power = power * &a;
        }
        let Ok(b) = (-(v_j * power)).checked_div(&sum) else {
            continue;
        };
        let coeffs = CoefficientSequence::constant(a, b);
        return (Instance { ic, coeffs }, 4 * s + j as u64);
    }
}

/// A valid point for the linearized symmetry condition.
pub fn random_lsc_sample(rng: &mut ChaCha8Rng) -> LscSample {
    loop {
        let n = rng.gen_range(0..=50);
        let s = LscSample::new(
            n,
            random_nonzero_rational(rng),
            random_nonzero_rational(rng),
            random_nonzero_rational(rng),
            random_rational(rng),
            random_rational(rng),
        );
        if let Ok(s) = s {
            return s;
        }
    }
}
