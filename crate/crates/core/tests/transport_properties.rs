use aelgate::transport::tdho::{evolve_between, GaussianMotionalState, Reference};
use aelgate::transport::{run_tdho, TransportSetup};
use aelgate::Species;
use proptest::prelude::*;

fn setup() -> TransportSetup {
    TransportSetup::for_species(&Species::Yb173.params(), 1.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn symplectic_invariant_holds(t_up in 1e-6f64..8e-6, t_sweep in 2e-6f64..15e-6) {
        let ramp = setup().locally_adiabatic(t_up, t_sweep, t_up).unwrap();
        let run = run_tdho(&ramp, ramp.total_duration(), 1e-10).unwrap();
        prop_assert!(run.max_symplectic_error < 1e-9);
        prop_assert!(run.state.symplectic_error().abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&run.fidelity));
    }

    #[test]
    fn time_reversal_restores_the_ground_state(t_up in 0.5e-6f64..5e-6, t_sweep in 1e-6f64..5e-6) {
        let ramp = setup().naive(t_up, t_sweep, t_up).unwrap();
        let reference = Reference::of(&ramp).unwrap();
        let ground = GaussianMotionalState::ground(reference.omega0, reference.x0);
        let total = ramp.total_duration();
        let fwd = evolve_between(&ramp, ground, 0.0, total, 1e-12, |_| Ok(())).unwrap();
        let back = evolve_between(&ramp, fwd.state, total, 0.0, 1e-12, |_| Ok(())).unwrap();
        prop_assert!((back.fidelity - 1.0).abs() < 1e-8, "{}", back.fidelity);
    }

    #[test]
    fn adiabatic_limit_approaches_unit_fidelity(eps in 0.02f64..0.1) {
        let ramp = setup().locally_adiabatic_uniform(eps).unwrap();
        let run = run_tdho(&ramp, ramp.total_duration(), 1e-10).unwrap();
        // Excitation from a ramp with constant adiabaticity ε stays below
        // a few ε².
        prop_assert!(1.0 - run.fidelity < 5.0 * eps * eps, "eps {eps}: {}", 1.0 - run.fidelity);
    }
}
