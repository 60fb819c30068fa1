//! Lie point symmetries of the forward recurrence
//! `u_{n+6} = Ψ = u_n u_{n+2} / (u_{n+4}(a_n + b_n u_n u_{n+2}))`.
//!
//! The characteristics are `Q1(n, u) = β^n u` and `Q2(n, u) = β̄^n u` with
//! `β = i`. Everything here is checked by exact evaluation in Gaussian
//! rationals: the linearized symmetry condition is a rational function of
//! `(u_n, u_{n+2}, u_{n+4}, a_n, b_n)` that has to vanish identically, so it
//! is evaluated at many random rational points.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closedform::{canonical_coordinate, gamma};
use crate::error::{Error, Result};
use crate::number::{GaussianRational, Rational};
use crate::oracle::Orbit;
use crate::sampling;

/// A candidate characteristic `Q(n, u)`.
#[derive(Clone, Copy)]
pub enum Characteristic {
    /// `β^n u`
    Q1,
    /// `β̄^n u`
    Q2,
    /// Any other candidate, e.g. to confirm that non-symmetries are rejected.
    Custom(fn(i64, &Rational) -> GaussianRational),
}

impl fmt::Debug for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Q1 => f.write_str("Q1"),
            Characteristic::Q2 => f.write_str("Q2"),
            Characteristic::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl Characteristic {
    pub fn value(&self, n: i64, u: &Rational) -> GaussianRational {
        match self {
            Characteristic::Q1 => GaussianRational::i_pow(n).scale(u),
            Characteristic::Q2 => GaussianRational::i_pow(-n).scale(u),
            Characteristic::Custom(q) => q(n, u),
        }
    }
}

pub fn characteristic_value(c: Characteristic, n: i64, u: &Rational) -> GaussianRational {
    c.value(n, u)
}

/// The constant-in-`n` candidate `Q(n, u) = u`. It is not a symmetry.
pub fn unscaled(_n: i64, u: &Rational) -> GaussianRational {
    GaussianRational::real(u.clone())
}

/// A point at which to evaluate the linearized symmetry condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LscSample {
    pub n: i64,
    pub u_n: Rational,
    pub u_n2: Rational,
    pub u_n4: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl LscSample {
    pub fn new(
        n: i64,
        u_n: Rational,
        u_n2: Rational,
        u_n4: Rational,
        a: Rational,
        b: Rational,
    ) -> Result<Self> {
        let s = LscSample {
            n,
            u_n,
            u_n2,
            u_n4,
            a,
            b,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 0 {
            return Err(Error::DegenerateSample("n must be nonnegative"));
        }
        if self.u_n.is_zero() || self.u_n2.is_zero() || self.u_n4.is_zero() {
            return Err(Error::DegenerateSample(
                "u_n, u_{n+2}, u_{n+4} must be nonzero",
            ));
        }
        if self.denominator_factor().is_zero() {
            return Err(Error::DegenerateSample(
                "a_n + b_n u_n u_{n+2} must be nonzero",
            ));
        }
        Ok(())
    }

    fn denominator_factor(&self) -> Rational {
        &self.a + &self.b * &self.u_n * &self.u_n2
    }

    /// `Ψ = u_n u_{n+2} / (u_{n+4}(a + b u_n u_{n+2}))`.
    pub fn psi(&self) -> Result<Rational> {
        (&self.u_n * &self.u_n2).checked_div(&(&self.u_n4 * self.denominator_factor()))
    }
}

/// `S^6 Q - X Ψ` at the sample:
///
/// ```text
/// Q(n+6, Ψ) + u_n u_{n+2} Q(n+4, u_{n+4}) / (u_{n+4}² D)
///           - a u_n     Q(n+2, u_{n+2}) / (u_{n+4} D²)
///           - a u_{n+2} Q(n,   u_n)     / (u_{n+4} D²)
/// ```
///
/// with `D = a + b u_n u_{n+2}`. Zero for every symmetry characteristic.
pub fn lsc_residual(c: Characteristic, s: &LscSample) -> Result<GaussianRational> {
    s.validate()?;
    let n = s.n;
    let d = s.denominator_factor();
    let psi = s.psi()?;
    let w1 = (&s.u_n * &s.u_n2).checked_div(&(&s.u_n4 * &s.u_n4 * &d))?;
    let d2 = &d * &d;
    let w2 = (&s.a * &s.u_n).checked_div(&(&s.u_n4 * &d2))?;
    let w3 = (&s.a * &s.u_n2).checked_div(&(&s.u_n4 * &d2))?;
    let residual = c.value(n + 6, &psi) + c.value(n + 4, &s.u_n4).scale(&w1)
        - c.value(n + 2, &s.u_n2).scale(&w2)
        - c.value(n, &s.u_n).scale(&w3);
    Ok(residual)
}

/// Indices `n` in `0..=n_max` where `β_n + β_{n+2} ≠ 0` for `β_n = base^n`.
pub fn reduced_relation_failures(base: &GaussianRational, n_max: i64) -> Result<Vec<i64>> {
    let mut failures = Vec::new();
    for n in 0..=n_max {
        let lhs = gaussian_pow(base, n)? + gaussian_pow(base, n + 2)?;
        if !lhs.is_zero() {
            failures.push(n);
        }
    }
    Ok(failures)
}

fn gaussian_pow(base: &GaussianRational, exp: i64) -> Result<GaussianRational> {
    if exp < 0 {
        return gaussian_pow(&base.recip()?, -exp);
    }
    let mut acc = GaussianRational::one();
    for _ in 0..exp {
        acc = &acc * base;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSystemReport {
    pub n_max: i64,
    /// Failing `n` for `β_n = i^n`.
    pub beta_failures: Vec<i64>,
    /// Failing `n` for `β_n = (-i)^n`.
    pub beta_bar_failures: Vec<i64>,
}

impl ReducedSystemReport {
    pub fn passed(&self) -> bool {
        self.beta_failures.is_empty() && self.beta_bar_failures.is_empty()
    }
}

/// Checks `β_n + β_{n+2} = 0` for both roots `i^n` and `(-i)^n`. The
/// quadratic coefficient `α_n` of `Q = α_n u² + β_n u` is zero in the
/// derived characteristics; [`lsc_residual`] rejects a nonzero one.
pub fn verify_reduced_system(n_max: i64) -> ReducedSystemReport {
    let beta = GaussianRational::i();
    ReducedSystemReport {
        n_max,
        beta_failures: reduced_relation_failures(&beta, n_max).expect("i is invertible"),
        beta_bar_failures: reduced_relation_failures(&beta.conj(), n_max)
            .expect("-i is invertible"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X1,
    X2,
}

impl Generator {
    pub fn characteristic(self) -> Characteristic {
        match self {
            Generator::X1 => Characteristic::Q1,
            Generator::X2 => Characteristic::Q2,
        }
    }
}

/// `X(Ṽ_n)` for the prolonged generator of `c`, where
/// `Ṽ_n = ln|u_n| + ln|u_{n+2}|`: `Q(n, u_n)/u_n + Q(n+2, u_{n+2})/u_{n+2}`.
pub fn generator_on_invariant(
    c: Characteristic,
    n: i64,
    u_n: &Rational,
    u_n2: &Rational,
) -> Result<GaussianRational> {
    Ok(c.value(n, u_n).scale(&u_n.recip()?) + c.value(n + 2, u_n2).scale(&u_n2.recip()?))
}

/// Indices `n` in `0..=n_max` at which the generator does not annihilate
/// `Ṽ_n`. The `u` values cancel, leaving the coefficient sum
/// `β^n + β^{n+2}` (resp. `β̄^n + β̄^{n+2}`).
pub fn generator_failures(c: Characteristic, n_max: i64) -> Vec<i64> {
    let one = Rational::one();
    (0..=n_max)
        .filter(|&n| {
            !generator_on_invariant(c, n, &one, &one)
                .expect("u = 1")
                .is_zero()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    pub generator: Generator,
    pub n_max: i64,
    pub failures: Vec<i64>,
}

impl GeneratorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn generator_annihilates_invariant(variant: Generator, n_max: i64) -> GeneratorReport {
    GeneratorReport {
        generator: variant,
        n_max,
        failures: generator_failures(variant.characteristic(), n_max),
    }
}

/// `Ṽ_n = S_n β^n + S_{n+2} β^{n+2}`, which simplifies to
/// `ln|u_n| + ln|u_{n+2}|`; `exp(-Ṽ_n) = |V_n|`.
pub fn tilde_v(n: u64, orbit: &Orbit) -> Result<f64> {
    let s_n = canonical_coordinate(n, orbit)?;
    let s_n2 = canonical_coordinate(n + 2, orbit)?;
    let b_n = GaussianRational::i_pow(n as i64).to_complex64();
    let b_n2 = GaussianRational::i_pow(n as i64 + 2).to_complex64();
    let v: Complex64 = s_n * b_n + s_n2 * b_n2;
    Ok(v.re)
}

/// The seven relations satisfied by `γ(n, k) = β^n β̄^k`, checked for
/// `n, k` in `0..=limit`. Returns a description of each failure.
pub fn gamma_identity_failures(limit: i64) -> Vec<String> {
    let beta = GaussianRational::i();
    let mut failures = Vec::new();
    if gamma(0, 1) != beta.conj() {
        failures.push("γ(0,1) ≠ β̄".to_string());
    }
    if gamma(1, 0) != beta {
        failures.push("γ(1,0) ≠ β".to_string());
    }
    for n in 0..=limit {
        if gamma(n, n) != GaussianRational::one() {
            failures.push(format!("γ({n},{n}) ≠ 1"));
        }
        for k in 0..=limit {
            let g = gamma(n, k);
            if gamma(n + 2, k) != -g.clone() {
                failures.push(format!("γ({n}+2,{k}) ≠ -γ({n},{k})"));
            }
            if gamma(n, k + 2) != -g.clone() {
                failures.push(format!("γ({n},{k}+2) ≠ -γ({n},{k})"));
            }
            if gamma(4 * n, k) != gamma(0, k) {
                failures.push(format!("γ(4·{n},{k}) ≠ γ(0,{k})"));
            }
            if gamma(n, 4 * k) != gamma(n, 0) {
                failures.push(format!("γ({n},4·{k}) ≠ γ({n},0)"));
            }
        }
    }
    failures
}

/// Tallies of residual checks for one characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualTally {
    pub name: &'static str,
    pub samples: usize,
    pub nonzero: usize,
    pub first_nonzero: Option<GaussianRational>,
}

/// The whole symmetry verification, run over seeded random samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub seed: u64,
    pub residuals: Vec<ResidualTally>,
    pub period_failures: usize,
    pub reduced: ReducedSystemReport,
    pub generators: Vec<GeneratorReport>,
    pub gamma_failures: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|t| t.nonzero == 0)
            && self.period_failures == 0
            && self.reduced.passed()
            && self.generators.iter().all(GeneratorReport::passed)
            && self.gamma_failures.is_empty()
    }
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        for t in &self.residuals {
            write!(
                f,
                "lsc {}: {} samples, {} nonzero",
                t.name, t.samples, t.nonzero
            )?;
            if let Some(z) = &t.first_nonzero {
                write!(f, " (first: {z})")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "period-4 failures: {}", self.period_failures)?;
        writeln!(
            f,
            "reduced system (n <= {}): beta failures {}, beta-bar failures {}",
            self.reduced.n_max,
            self.reduced.beta_failures.len(),
            self.reduced.beta_bar_failures.len()
        )?;
        for g in &self.generators {
            writeln!(
                f,
                "generator {:?} (n <= {}): {} failures",
                g.generator,
                g.n_max,
                g.failures.len()
            )?;
        }
        writeln!(f, "gamma identity failures: {}", self.gamma_failures.len())?;
        writeln!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs every symmetry check. `characteristics` are the candidates whose
/// residuals are sampled (normally `Q1` and `Q2`).
pub fn run_symmetry_suite(
    samples: usize,
    seed: u64,
    characteristics: &[(&'static str, Characteristic)],
) -> SymmetryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<LscSample> = (0..samples)
        .map(|_| sampling::random_lsc_sample(&mut rng))
        .collect();
    let residuals = characteristics
        .iter()
        .map(|&(name, c)| {
            let mut tally = ResidualTally {
                name,
                samples,
                nonzero: 0,
                first_nonzero: None,
            };
            for p in &points {
                let r = lsc_residual(c, p).expect("sampler emits valid points");
                if !r.is_zero() {
                    tally.nonzero += 1;
                    tally.first_nonzero.get_or_insert(r);
                }
            }
            tally
        })
        .collect();
    let period_failures = characteristics
        .iter()
        .flat_map(|&(_, c)| points.iter().map(move |p| (c, p)))
        .filter(|(c, p)| {
            c.value(p.n + 4, &p.u_n) != c.value(p.n, &p.u_n)
                || !c.value(p.n, &Rational::zero()).is_zero()
        })
        .count();
    SymmetryReport {
        seed,
        residuals,
        period_failures,
        reduced: verify_reduced_system(50),
        generators: vec![
            generator_annihilates_invariant(Generator::X1, 50),
            generator_annihilates_invariant(Generator::X2, 50),
        ],
        gamma_failures: gamma_identity_failures(16),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::iterate;
    use crate::seeds::InitialConditions;
    use crate::sequence::CoefficientSequence;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn characteristic_examples() {
        let u = Rational::new(3, 7).unwrap();
        assert_eq!(
            characteristic_value(Characteristic::Q1, 0, &u),
            GaussianRational::real(u.clone())
        );
        assert_eq!(
            characteristic_value(Characteristic::Q1, 2, &u),
            GaussianRational::real(-&u)
        );
        assert_eq!(
            characteristic_value(Characteristic::Q2, 1, &r(3)),
            GaussianRational::new(r(0), r(-3))
        );
        for n in -8..8 {
            for c in [Characteristic::Q1, Characteristic::Q2] {
                assert_eq!(c.value(n + 4, &u), c.value(n, &u));
                assert!(c.value(n, &Rational::zero()).is_zero());
            }
        }
    }

    #[test]
    fn lsc_vanishes_for_derived_characteristics() {
        let s = LscSample::new(
            3,
            r(2),
            Rational::new(-5, 3).unwrap(),
            r(7),
            r(4),
            Rational::new(1, 9).unwrap(),
        )
        .unwrap();
        assert!(lsc_residual(Characteristic::Q1, &s).unwrap().is_zero());
        assert!(lsc_residual(Characteristic::Q2, &s).unwrap().is_zero());
    }

    #[test]
    fn counterfeit_characteristic_is_rejected() {
        let s = LscSample::new(0, r(1), r(1), r(1), r(2), r(1)).unwrap();
        // Ψ = 1/3: 1/3 + 1/3 - 2/9 - 2/9
        assert_eq!(
            lsc_residual(Characteristic::Custom(unscaled), &s).unwrap(),
            GaussianRational::real(Rational::new(2, 9).unwrap())
        );
        fn quadratic(n: i64, u: &Rational) -> GaussianRational {
            GaussianRational::i_pow(n).scale(&(u * u))
        }
        let s = LscSample::new(1, r(2), r(3), r(5), r(1), r(1)).unwrap();
        assert!(!lsc_residual(Characteristic::Custom(quadratic), &s)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn degenerate_samples() {
        assert!(LscSample::new(0, r(0), r(1), r(1), r(1), r(1)).is_err());
        assert!(LscSample::new(0, r(1), r(1), r(1), r(1), r(-1)).is_err());
        let bad = LscSample {
            n: 0,
            u_n: r(1),
            u_n2: r(1),
            u_n4: r(0),
            a: r(1),
            b: r(0),
        };
        assert!(matches!(
            lsc_residual(Characteristic::Q1, &bad),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn reduced_system() {
        let report = verify_reduced_system(50);
        assert!(report.passed());
        assert_eq!(
            reduced_relation_failures(&GaussianRational::one(), 3).unwrap(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn generators() {
        assert!(generator_annihilates_invariant(Generator::X1, 50).passed());
        assert!(generator_annihilates_invariant(Generator::X2, 50).passed());
        // X2 at n = 3: β̄³ + β̄⁵ = i - i
        let x2 = generator_on_invariant(Characteristic::Q2, 3, &r(5), &r(-2)).unwrap();
        assert!(x2.is_zero());
        assert_eq!(
            generator_failures(Characteristic::Custom(unscaled), 2),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn tilde_v_examples() {
        let ones = InitialConditions::from_pairs([(1, 1); 6]).unwrap();
        let orbit = iterate(&ones, &CoefficientSequence::constant(r(1), r(0)), 4).unwrap();
        assert_eq!(tilde_v(0, &orbit).unwrap(), 0.0);

        let ic = InitialConditions::from_pairs([(2, 1), (1, 1), (3, 1), (1, 1), (1, 1), (1, 1)])
            .unwrap();
        let orbit = iterate(&ic, &CoefficientSequence::constant(r(1), r(0)), 0).unwrap();
        let v = tilde_v(0, &orbit).unwrap();
        assert!((v - 6f64.ln()).abs() < 1e-15);
        assert!(((-v).exp() - 1.0 / 6.0).abs() < 1e-15);
        assert!(matches!(tilde_v(4, &orbit), Err(Error::OutOfRange(6))));
    }

    #[test]
    fn gamma_identities() {
        assert!(gamma_identity_failures(16).is_empty());
    }

    #[test]
    fn suite_is_reproducible_and_detects_counterfeits() {
        let good = [("Q1", Characteristic::Q1), ("Q2", Characteristic::Q2)];
        let a = run_symmetry_suite(20, 7, &good);
        let b = run_symmetry_suite(20, 7, &good);
        assert!(a.passed());
        assert_eq!(a.to_string(), b.to_string());
        let bad = [("Q(n,u)=u", Characteristic::Custom(unscaled))];
        assert!(!run_symmetry_suite(20, 7, &bad).passed());
    }
}
