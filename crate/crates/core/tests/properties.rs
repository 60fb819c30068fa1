//! Property tests tying every engine back to direct iteration.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sixfold::closedform::{term, unified_exponent, v_at, well_defined, well_defined_before};
use sixfold::number::Rational;
use sixfold::oracle::{check_invariant_recurrence, invariant_sequence, iterate, SingularityCause};
use sixfold::sampling::{
    near_singular_instance, random_instance, random_lsc_sample, singular_constant_instance,
    Instance,
};
use sixfold::seeds::InitialConditions;
use sixfold::specialcases::SpecialCase;
use sixfold::symmetry::{lsc_residual, tilde_v, Characteristic};

fn instance(seed: u64) -> Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Checks that the first well-definedness violation below `steps` sits
/// exactly where iteration halts.
fn guard_matches_halt(inst: &Instance, steps: u64) -> bool {
    let orbit = iterate(&inst.ic, &inst.coeffs, steps).unwrap();
    let report = well_defined_before(&inst.ic, &inst.coeffs, steps).unwrap();
    let halt = orbit.halt();
    if let Some(h) = halt {
        if h.cause != SingularityCause::ZeroDenominatorFactor {
            return false;
        }
    }
    report.first().map(|v| v.step()) == halt.map(|h| h.step)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_equals_iteration(seed in any::<u64>()) {
        let inst = instance(seed);
        let orbit = iterate(&inst.ic, &inst.coeffs, 24).unwrap();
        let upto = orbit.last_index();
        for m in -5..=upto {
            prop_assert_eq!(&term(m, &inst.ic, &inst.coeffs).unwrap(), orbit.x(m).unwrap());
        }
    }

    #[test]
    fn invariant_recurrence_holds(seed in any::<u64>()) {
        let inst = instance(seed);
        let orbit = iterate(&inst.ic, &inst.coeffs, 30).unwrap();
        prop_assume!(orbit.terms().len() >= 7);
        let v = invariant_sequence(&orbit).unwrap();
        for r in check_invariant_recurrence(&v, &inst.coeffs).unwrap() {
            prop_assert!(r.is_zero());
        }
        for (k, vk) in v.values().iter().enumerate() {
            prop_assert_eq!(&v_at(k as u64, &inst.ic, &inst.coeffs).unwrap(), vk);
        }
    }

    #[test]
    fn special_case_equals_general(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(SpecialCase::detect(&inst.coeffs).is_ok());
        let case = SpecialCase::detect(&inst.coeffs).unwrap();
        let orbit = iterate(&inst.ic, &inst.coeffs, 24).unwrap();
        for m in -5..=orbit.last_index() {
            prop_assert_eq!(&case.term(m, &inst.ic).unwrap(), orbit.x(m).unwrap());
        }
    }

    #[test]
    fn guard_corresponds_to_halt(seed in any::<u64>(), exact in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = near_singular_instance(&mut rng, 24, exact);
        prop_assert!(guard_matches_halt(&inst, 24));
        prop_assert!(guard_matches_halt(&instance(seed), 24));
    }

    #[test]
    fn crafted_constant_singularity_is_located(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (inst, v_index) = singular_constant_instance(&mut rng, 6);
        let report = well_defined(&inst.ic, &inst.coeffs, 8).unwrap();
        prop_assert!(report.violations.iter().any(|v| v.v_index() == v_index));
        prop_assert!(guard_matches_halt(&inst, 32));
        let halt = iterate(&inst.ic, &inst.coeffs, 32).unwrap().halt().unwrap();
        prop_assert!(halt.step <= v_index - 4);
    }

    #[test]
    fn tilde_v_bridges_to_invariant(seed in any::<u64>()) {
        let inst = instance(seed);
        let orbit = iterate(&inst.ic, &inst.coeffs, 40).unwrap();
        let v = invariant_sequence(&orbit).unwrap();
        for (n, vn) in v.values().iter().enumerate() {
            let t = tilde_v(n as u64, &orbit).unwrap();
            // exp(-Ṽ_n) / |V_n| in log space
            let rel = (-t - vn.ln_abs()).exp_m1().abs();
            prop_assert!(rel < 1e-12, "n = {}: {}", n, rel);
        }
    }

    #[test]
    fn unified_exponent_tracks_magnitude(seed in any::<u64>()) {
        let inst = instance(seed);
        let orbit = iterate(&inst.ic, &inst.coeffs, 40).unwrap();
        for (k, u) in orbit.terms().iter().enumerate() {
            let e = unified_exponent(k as u64, &inst.ic, &inst.coeffs).unwrap();
            prop_assert!((e.re - u.ln_abs()).exp_m1().abs() < 1e-9);
            prop_assert!(e.im.abs() < 1e-12);
        }
    }

    #[test]
    fn lsc_residual_vanishes(seed in any::<u64>()) {
        let s = random_lsc_sample(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(lsc_residual(Characteristic::Q1, &s).unwrap().is_zero());
        prop_assert!(lsc_residual(Characteristic::Q2, &s).unwrap().is_zero());
    }

    /// The real combinations of the two characteristics integrate to the
    /// finite scalings u_{4k} -> λu, u_{4k+2} -> u/λ (and the same on odd
    /// classes), which must carry orbits to orbits.
    #[test]
    fn finite_scalings_map_orbits_to_orbits(seed in any::<u64>(), lambda in 1i64..9, odd in any::<bool>()) {
        let inst = instance(seed);
        let orbit = iterate(&inst.ic, &inst.coeffs, 30).unwrap();
        let l = Rational::from(lambda + 1);
        let li = l.recip().unwrap();
        let scale = |k: usize| match (k % 4, odd) {
            (0, false) | (1, true) => l.clone(),
            (2, false) | (3, true) => li.clone(),
            _ => Rational::one(),
        };
        let moved: Vec<Rational> = orbit.terms().iter().enumerate().map(|(k, u)| u * scale(k)).collect();
        let ic = InitialConditions::new(std::array::from_fn(|k| moved[k].clone())).unwrap();
        let image = iterate(&ic, &inst.coeffs, 30).unwrap();
        prop_assert_eq!(image.terms(), &moved[..]);
    }
}
