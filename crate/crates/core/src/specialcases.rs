//! Explicit solutions for constant, 2-periodic and 4-periodic coefficients.
//!
//! These are written out in their expanded product form rather than routed
//! through [`crate::closedform::term`], so each displayed formula is checked
//! independently against the oracle. All four residue classes share one
//! layout. With seed products `P_0 = ce`, `P_1 = df`, `P_2 = eg`, `P_3 = fh`
//! (seeds `c..h = x_{-5}..x_0`) and a per-class factor `F_k(s)`:
//!
//! ```text
//! x_{4n-5} = g^n c^{1-n} Π_{s<n} F_0(s) / F_2(s)
//! x_{4n-4} = h^n d^{1-n} Π_{s<n} F_1(s) / F_3(s)
//! x_{4n-3} = c^n e g^{-n} Π_{s<n} F_2(s) / F_0(s+1)
//! x_{4n-2} = d^n f h^{-n} Π_{s<n} F_3(s) / F_1(s+1)
//! ```
//!
//! where `F_k(s) = α^s + β P_k Σ_{l<s} α^l` for the class coefficients
//! `(α, β)`. The `a = -1` case collapses the products into powers and has
//! its own parity-split form.

use crate::closedform::singular;
use crate::error::{Error, Result};
use crate::number::Rational;
use crate::seeds::{decompose_index, InitialConditions};
use crate::sequence::{CoefficientSequence, SequenceKind};

/// Constant coefficients `a_n = a`, `b_n = b` with `a ≠ 0`.
///
/// `b = 0` is accepted; it reduces every case to the pure telescoping
/// solution `x_{4n-5} = g^n / c^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantCoeffs {
    a: Rational,
    b: Rational,
}

impl ConstantCoeffs {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidCoefficients(
                "constant case needs a ≠ 0".into(),
            ));
        }
        Ok(ConstantCoeffs { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn to_sequence(&self) -> CoefficientSequence {
        CoefficientSequence::constant(self.a.clone(), self.b.clone())
    }
}

/// `a = (a_0, a_1, a_0, ..)`, `b = (b_0, b_1, b_0, ..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCoeffs2 {
    pub a: [Rational; 2],
    pub b: [Rational; 2],
}

impl PeriodicCoeffs2 {
    /// Whether `a_0 ≠ a_1` and `b_0 ≠ b_1`. The formulas do not need this;
    /// it is reported for callers that track it.
    pub fn has_distinct_phases(&self) -> bool {
        self.a[0] != self.a[1] && self.b[0] != self.b[1]
    }

    pub fn to_sequence(&self) -> CoefficientSequence {
        CoefficientSequence::Periodic {
            a: self.a.to_vec(),
            b: self.b.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCoeffs4 {
    pub a: [Rational; 4],
    pub b: [Rational; 4],
}

impl PeriodicCoeffs4 {
    pub fn to_sequence(&self) -> CoefficientSequence {
        CoefficientSequence::Periodic {
            a: self.a.to_vec(),
            b: self.b.to_vec(),
        }
    }
}

/// `P_k = u_k u_{k+2}`: `ce`, `df`, `eg`, `fh`.
fn seed_products(ic: &InitialConditions) -> [Rational; 4] {
    std::array::from_fn(|k| ic.u(k) * ic.u(k + 2))
}

/// `Σ_{l<s} α^l`.
fn geometric_sum(alpha: &Rational, s: u64) -> Rational {
    let mut sum = Rational::zero();
    let mut power = Rational::one();
    for _ in 0..s {
        sum = sum + &power;
        power = power * alpha;
    }
    sum
}

/// Evaluates the shared four-class layout for `x_m`. `factor(k, s)` is
/// `F_k(s)`; a vanishing factor is the vanishing of `V_{4s+k}`.
fn assemble(
    m: i64,
    ic: &InitialConditions,
    factor: impl Fn(usize, u64) -> Rational,
) -> Result<Rational> {
    let t = decompose_index(m)?;
    let (j, n) = (t.j as usize, t.n);
    let ni = n as i64;
    let (c, d, e, f, g, h) = ic.letters();
    let prefactor = match j {
        0 => g.pow(ni)? * c.pow(1 - ni)?,
        1 => h.pow(ni)? * d.pow(1 - ni)?,
        2 => c.pow(ni)? * e * g.pow(-ni)?,
        _ => d.pow(ni)? * f * h.pow(-ni)?,
    };
    let mut value = prefactor;
    for s in 0..n {
        // numerator class and shift, denominator class and shift
        let (nk, ns, dk, ds) = if j < 2 {
            (j, s, j + 2, s)
        } else {
            (j, s, j - 2, s + 1)
        };
        let den = factor(dk, ds);
        if den.is_zero() {
            return Err(singular(4 * ds + dk as u64));
        }
        let num = factor(nk, ns);
        if num.is_zero() {
            return Err(singular(4 * ns + nk as u64));
        }
        value = value * num.checked_div(&den)?;
    }
    Ok(value)
}

/// Constant coefficients with `a ≠ 1`:
/// `F_k(s) = a^s + b P_k (1 - a^s)/(1 - a)`.
pub fn term_const_general(m: i64, ic: &InitialConditions, cc: &ConstantCoeffs) -> Result<Rational> {
    if cc.a.is_one() {
        return Err(Error::WrongCase("a = 1 has its own formula"));
    }
    let p = seed_products(ic);
    let one = Rational::one();
    let one_minus_a = &one - &cc.a;
    assemble(m, ic, |k, s| {
        let a_s = cc.a.pow(s as i64).expect("a ≠ 0");
        let ratio = (&one - &a_s).checked_div(&one_minus_a).expect("a ≠ 1");
        a_s + &cc.b * &p[k] * ratio
    })
}

/// Constant coefficients with `a = 1`: `F_k(s) = 1 + b P_k s`.
pub fn term_const_a1(m: i64, ic: &InitialConditions, b: &Rational) -> Result<Rational> {
    let p = seed_products(ic);
    assemble(m, ic, |k, s| {
        Rational::one() + b * &p[k] * Rational::from(s as i64)
    })
}

/// Constant coefficients with `a = -1`.
///
/// The invariant alternates between `V_k` and `b - V_k`, so each product
/// collapses to a power of `R_k = (-1 + b P_k) / (-1 + b P_{k+2})`:
///
/// ```text
/// x_{4n-5} = c^{1-n} g^n R_0^{e(n)}
/// x_{4n-4} = d^{1-n} h^n R_1^{e(n)}
/// x_{4n-3} = c^n g^{-n} e (-1 + bce)^{-[n odd]} (1/R_0)^{⌊(n-1)/2⌋ + [n even]}
/// x_{4n-2} = d^n h^{-n} f (-1 + bdf)^{-[n odd]} (1/R_1)^{⌊(n-1)/2⌋ + [n even]}
/// ```
///
/// with `e(n) = ⌊(n-1)/2⌋` for odd `n` and `⌊(n-1)/2⌋ + 1` for even `n`
/// (both equal `⌊n/2⌋`, floors taken toward negative infinity). Every class
/// uses the same parity assignment.
pub fn term_const_a_neg1(m: i64, ic: &InitialConditions, b: &Rational) -> Result<Rational> {
    let t = decompose_index(m)?;
    let (j, n) = (t.j as usize, t.n as i64);
    let (c, d, e, f, g, h) = ic.letters();
    let p = seed_products(ic);
    let minus_one = -Rational::one();
    // -1 + b P_k vanishes exactly when V_{4+k} = b - V_k does.
    let shifted: [Rational; 4] = std::array::from_fn(|k| &minus_one + b * &p[k]);
    let guard = |k: usize, needed: bool| -> Result<()> {
        if needed && shifted[k].is_zero() {
            return Err(singular(4 + k as u64));
        }
        Ok(())
    };
    let odd = n % 2 != 0;
    let floor_half = (n - 1).div_euclid(2);
    let exponent = if odd { floor_half } else { floor_half + 1 };
    match j {
        0 | 1 => {
            // V_{4+j} and V_{4+j+2} enter once n ≥ 2.
            guard(j + 2, n >= 2)?;
            guard(j, n >= 2)?;
            let (first, last) = if j == 0 { (c, g) } else { (d, h) };
            let base = first.pow(1 - n)? * last.pow(n)?;
            if exponent == 0 {
                return Ok(base);
            }
            let ratio = shifted[j].checked_div(&shifted[j + 2])?;
            Ok(base * ratio.pow(exponent)?)
        }
        _ => {
            let k = j - 2;
            guard(k, n >= 1)?;
            guard(j, n >= 2)?;
            let (first, mid, last) = if j == 2 { (c, e, g) } else { (d, f, h) };
            let mut value = first.pow(n)? * mid * last.pow(-n)?;
            if odd {
                value = value.checked_div(&shifted[k])?;
            }
            if exponent == 0 {
                return Ok(value);
            }
            let ratio = shifted[j].checked_div(&shifted[k])?;
            Ok(value * ratio.pow(exponent)?)
        }
    }
}

/// 2-periodic coefficients: classes 0 and 2 use `(a_0, b_0)`, classes 1 and
/// 3 use `(a_1, b_1)`; `F_k(s) = a^s + b P_k Σ_{l<s} a^l`.
pub fn term_periodic2(m: i64, ic: &InitialConditions, pc: &PeriodicCoeffs2) -> Result<Rational> {
    let p = seed_products(ic);
    assemble(m, ic, |k, s| {
        let (a, b) = (&pc.a[k % 2], &pc.b[k % 2]);
        a.pow(s as i64).expect("nonnegative power") + b * &p[k] * geometric_sum(a, s)
    })
}

/// 4-periodic coefficients: class `k` uses `(a_k, b_k)`.
pub fn term_periodic4(m: i64, ic: &InitialConditions, pc: &PeriodicCoeffs4) -> Result<Rational> {
    let p = seed_products(ic);
    assemble(m, ic, |k, s| {
        let (a, b) = (&pc.a[k], &pc.b[k]);
        a.pow(s as i64).expect("nonnegative power") + b * &p[k] * geometric_sum(a, s)
    })
}

/// The dedicated formula applicable to a coefficient sequence.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    ConstGeneral(ConstantCoeffs),
    ConstANeg1(Rational),
    ConstA1(Rational),
    Periodic2(PeriodicCoeffs2),
    Periodic4(PeriodicCoeffs4),
}

impl SpecialCase {
    /// Picks the formula for constant (or period-1), 2-periodic and
    /// 4-periodic sequences. Anything else is [`Error::WrongCase`].
    pub fn detect(seq: &CoefficientSequence) -> Result<Self> {
        let constant = |a: &Rational, b: &Rational| -> Result<SpecialCase> {
            if a.is_one() {
                Ok(SpecialCase::ConstA1(b.clone()))
            } else if *a == -Rational::one() {
                Ok(SpecialCase::ConstANeg1(b.clone()))
            } else if a.is_zero() {
                Err(Error::WrongCase("constant a = 0 has no dedicated formula"))
            } else {
                Ok(SpecialCase::ConstGeneral(ConstantCoeffs::new(
                    a.clone(),
                    b.clone(),
                )?))
            }
        };
        match (seq, seq.kind()) {
            (CoefficientSequence::Constant { a, b }, _) => constant(a, b),
            (CoefficientSequence::Periodic { a, b }, SequenceKind::Periodic(1)) => {
                constant(&a[0], &b[0])
            }
            (CoefficientSequence::Periodic { a, b }, SequenceKind::Periodic(2)) => {
                Ok(SpecialCase::Periodic2(PeriodicCoeffs2 {
                    a: [a[0].clone(), a[1].clone()],
                    b: [b[0].clone(), b[1].clone()],
                }))
            }
            (CoefficientSequence::Periodic { a, b }, SequenceKind::Periodic(4)) => {
                Ok(SpecialCase::Periodic4(PeriodicCoeffs4 {
                    a: std::array::from_fn(|i| a[i].clone()),
                    b: std::array::from_fn(|i| b[i].clone()),
                }))
            }
            _ => Err(Error::WrongCase(
                "dedicated formulas exist for periods 1, 2 and 4 only",
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpecialCase::ConstGeneral(_) => "constant, a != 1",
            SpecialCase::ConstANeg1(_) => "constant, a = -1",
            SpecialCase::ConstA1(_) => "constant, a = 1",
            SpecialCase::Periodic2(_) => "2-periodic",
            SpecialCase::Periodic4(_) => "4-periodic",
        }
    }

    pub fn term(&self, m: i64, ic: &InitialConditions) -> Result<Rational> {
        match self {
            SpecialCase::ConstGeneral(cc) => term_const_general(m, ic, cc),
            SpecialCase::ConstANeg1(b) => term_const_a_neg1(m, ic, b),
            SpecialCase::ConstA1(b) => term_const_a1(m, ic, b),
            SpecialCase::Periodic2(pc) => term_periodic2(m, ic, pc),
            SpecialCase::Periodic4(pc) => term_periodic4(m, ic, pc),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::iterate;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn sample_ic() -> InitialConditions {
        InitialConditions::from_pairs([(2, 3), (-1, 1), (5, 1), (7, 2), (-4, 9), (3, 1)]).unwrap()
    }

    fn check_against_oracle(
        ic: &InitialConditions,
        seq: &CoefficientSequence,
        f: impl Fn(i64) -> Result<Rational>,
    ) {
        let orbit = iterate(ic, seq, 40).unwrap();
        assert!(orbit.halt().is_none(), "{seq:?} halts: {:?}", orbit.halt());
        for m in -5..=40 {
            assert_eq!(&f(m).unwrap(), orbit.x(m).unwrap(), "x_{m}");
        }
    }

    #[test]
    fn seeds_are_returned_unchanged() {
        let ic = sample_ic();
        let cc = ConstantCoeffs::new(r(3), r(2)).unwrap();
        for m in -5..=-2 {
            let seed = ic.x(m);
            assert_eq!(&term_const_general(m, &ic, &cc).unwrap(), seed);
            assert_eq!(&term_const_a1(m, &ic, &r(2)).unwrap(), seed);
            assert_eq!(&term_const_a_neg1(m, &ic, &r(2)).unwrap(), seed);
        }
    }

    #[test]
    fn zero_b_telescopes() {
        let ic = sample_ic();
        let (c, _, _, _, g, _) = ic.letters();
        let cc = ConstantCoeffs::new(r(1), r(0)).unwrap();
        let pc2 = PeriodicCoeffs2 {
            a: [r(1), r(1)],
            b: [r(0), r(0)],
        };
        let five = ConstantCoeffs::new(r(5), r(0)).unwrap();
        for n in 0..8i64 {
            let expected = g.pow(n).unwrap() * c.pow(1 - n).unwrap();
            let m = 4 * n - 5;
            assert_eq!(term_const_a1(m, &ic, &r(0)).unwrap(), expected);
            assert_eq!(term_periodic2(m, &ic, &pc2).unwrap(), expected);
            assert_eq!(term_const_general(m, &ic, &five).unwrap(), expected);
        }
        assert!(matches!(
            term_const_general(3, &ic, &cc),
            Err(Error::WrongCase(_))
        ));
    }

    #[test]
    fn a_neg1_symmetric_seeds() {
        let ones = InitialConditions::from_pairs([(1, 1); 6]).unwrap();
        for n in 0..10 {
            assert_eq!(term_const_a_neg1(4 * n - 5, &ones, &r(2)).unwrap(), r(1));
        }
    }

    #[test]
    fn each_case_matches_oracle() {
        let ic = sample_ic();
        let cc = ConstantCoeffs::new(q(-2, 3), q(1, 7)).unwrap();
        check_against_oracle(&ic, &cc.to_sequence(), |m| term_const_general(m, &ic, &cc));

        let b = q(3, 7);
        let seq = CoefficientSequence::constant(r(1), b.clone());
        check_against_oracle(&ic, &seq, |m| term_const_a1(m, &ic, &b));

        let seq = CoefficientSequence::constant(r(-1), b.clone());
        check_against_oracle(&ic, &seq, |m| term_const_a_neg1(m, &ic, &b));

        let pc2 = PeriodicCoeffs2 {
            a: [r(2), q(-1, 2)],
            b: [r(1), r(3)],
        };
        check_against_oracle(&ic, &pc2.to_sequence(), |m| term_periodic2(m, &ic, &pc2));

        let pc4 = PeriodicCoeffs4 {
            a: [r(2), q(-1, 2), r(3), r(5)],
            b: [q(1, 7), r(1), r(-3), q(2, 5)],
        };
        check_against_oracle(&ic, &pc4.to_sequence(), |m| term_periodic4(m, &ic, &pc4));
    }

    #[test]
    fn a_neg1_singular_guard() {
        // b·c·e = 1 makes V_4 = b - V_0 vanish.
        let ic = InitialConditions::from_pairs([(1, 1), (1, 1), (1, 2), (1, 1), (2, 1), (1, 1)])
            .unwrap();
        let b = r(2);
        assert_eq!(term_const_a_neg1(-1, &ic, &b).unwrap(), r(2));
        assert!(matches!(
            term_const_a_neg1(1, &ic, &b),
            Err(Error::SingularClosedForm { v_index: 4, .. })
        ));
        assert!(matches!(
            term_const_a_neg1(3, &ic, &b),
            Err(Error::SingularClosedForm { v_index: 4, .. })
        ));
    }

    #[test]
    fn detect_dispatch() {
        let c = |a: i64, b: i64| CoefficientSequence::constant(r(a), r(b));
        assert!(matches!(
            SpecialCase::detect(&c(1, 3)),
            Ok(SpecialCase::ConstA1(_))
        ));
        assert!(matches!(
            SpecialCase::detect(&c(-1, 3)),
            Ok(SpecialCase::ConstANeg1(_))
        ));
        assert!(matches!(
            SpecialCase::detect(&c(4, 3)),
            Ok(SpecialCase::ConstGeneral(_))
        ));
        assert!(SpecialCase::detect(&c(0, 3)).is_err());
        let p = |k: usize| CoefficientSequence::periodic(vec![r(2); k], vec![r(1); k]).unwrap();
        assert!(matches!(
            SpecialCase::detect(&p(1)),
            Ok(SpecialCase::ConstGeneral(_))
        ));
        assert!(matches!(
            SpecialCase::detect(&p(2)),
            Ok(SpecialCase::Periodic2(_))
        ));
        assert!(matches!(
            SpecialCase::detect(&p(4)),
            Ok(SpecialCase::Periodic4(_))
        ));
        assert!(matches!(
            SpecialCase::detect(&p(3)),
            Err(Error::WrongCase(_))
        ));
        let list = CoefficientSequence::list(vec![r(1)], vec![r(1)]).unwrap();
        assert!(SpecialCase::detect(&list).is_err());
    }

    #[test]
    fn geometric_sum_identity() {
        for a in [q(2, 3), r(-1), r(3), q(-5, 2)] {
            for s in 0..12 {
                let closed = (r(1) - a.pow(s).unwrap())
                    .checked_div(&(r(1) - &a))
                    .unwrap();
                assert_eq!(geometric_sum(&a, s as u64), closed);
            }
        }
    }
}
