mod common;

use alpha_hs::coordinates::{relabel, tau_profile, validate_eulerian, validate_lagrangian, Relabelling};
use alpha_hs::evolution::solve_lagrangian;
use alpha_hs::pwl::PwLinear;
use alpha_hs::reference_cases::{build_example, ExampleId, Field};
use alpha_hs::transform::{to_eulerian, to_lagrangian};
use common::{golden_deviation, GOLDEN_TIMES};

#[test]
fn every_branch_matches_simulation() {
    for id in ExampleId::ALL {
        let alphas: &[Option<f64>] = if id == ExampleId::RampWithConcentration {
            &[None, Some(0.0), Some(0.5), Some(1.0)]
        } else {
            &[None]
        };
        for &a in alphas {
            let ex = build_example(id, a).unwrap();
            let (worst, n) = golden_deviation(&ex, &GOLDEN_TIMES);
            assert!(n > 0);
            assert!(worst <= 1e-12, "{id} alpha {a:?}: deviation {worst}");
        }
    }
}

#[test]
fn tabulated_lagrangian_data_is_what_l_produces() {
    for id in [ExampleId::RampNormalizedLabel, ExampleId::RampWithConcentration, ExampleId::TwoRamps] {
        let ex = build_example(id, None).unwrap();
        let x = to_lagrangian(&ex.eulerian).unwrap();
        for xi in (-60..=60).map(|k| k as f64 / 10.0) {
            let (a, b) = (x.eval(xi), ex.lagrangian.eval(xi));
            for c in 0..4 {
                assert!((a[c] - b[c]).abs() < 1e-12, "{id} component {c} at {xi}: {} vs {}", a[c], b[c]);
            }
        }
    }
}

#[test]
fn example_data_is_valid() {
    for id in ExampleId::ALL {
        let ex = build_example(id, None).unwrap();
        assert!(validate_eulerian(&ex.eulerian).is_valid(), "{id}");
        let r = validate_lagrangian(&ex.lagrangian, false);
        assert!(r.is_valid(), "{id}: {r}");
        let normalized = validate_lagrangian(&ex.lagrangian, true).is_valid();
        assert_eq!(normalized, id != ExampleId::RampIdentityLabel, "{id}");
    }
}

#[test]
fn breaking_times() {
    let a = build_example(ExampleId::TwoRamps, None).unwrap();
    let tau = tau_profile(&a.lagrangian);
    for (xi, want) in [(-1.0, 2.0), (3.0, 2.0), (1.0, f64::INFINITY), (-5.0, f64::INFINITY), (5.0, f64::INFINITY)] {
        assert_eq!(tau.eval(xi), want, "xi = {xi}");
    }
    let c = build_example(ExampleId::RampWithConcentration, None).unwrap();
    let tau = tau_profile(&c.lagrangian);
    assert_eq!(tau.eval(3.5), 0.0);
    assert_eq!(tau.eval(1.0), 2.0);
}

#[test]
fn single_event_with_two_thirds_dissipated() {
    let a = build_example(ExampleId::TwoRamps, None).unwrap();
    let traj = solve_lagrangian(&a.lagrangian, 3.0).unwrap();
    assert_eq!(traj.events().len(), 1);
    let e = &traj.events()[0];
    assert_eq!(e.time, 2.0);
    assert!((e.dissipated_energy - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(e.segments, vec![(-2.0, 0.0), (2.0, 4.0)]);

    let r = build_example(ExampleId::RampIdentityLabel, None).unwrap();
    let traj = solve_lagrangian(&r.lagrangian, 3.0).unwrap();
    assert_eq!(traj.events().len(), 1);
    assert_eq!(traj.events()[0].segments, vec![(0.0, 1.0)]);
}

#[test]
fn relabelling_connects_the_two_ramp_labellings() {
    let x = build_example(ExampleId::RampIdentityLabel, None).unwrap().lagrangian;
    let xh = build_example(ExampleId::RampNormalizedLabel, None).unwrap().lagrangian;
    let f = Relabelling::new(PwLinear::with_tails(vec![0.0, 1.0], vec![0.0, 2.0], 1.0, 1.0).unwrap()).unwrap();
    let moved = relabel(&xh, &f);
    for xi in (-30..=30).map(|k| k as f64 / 10.0) {
        let (a, b) = (moved.eval(xi), x.eval(xi));
        for c in 0..4 {
            assert!((a[c] - b[c]).abs() < 1e-15);
        }
    }
}

#[test]
fn concentration_at_full_dissipation_keeps_unit_excess_atom() {
    let c = build_example(ExampleId::RampWithConcentration, Some(1.0)).unwrap();
    let traj = solve_lagrangian(&c.lagrangian, 1.9).unwrap();
    for t in [0.25, 0.5, 1.0, 1.5, 1.9] {
        let e = to_eulerian(&traj.state_at(t).unwrap()).unwrap();
        assert!(e.mu.atoms().is_empty());
        assert_eq!(e.nu.atoms().len(), 1);
        let (p, m) = e.nu.atoms()[0];
        assert!((p - (2.0 + t * t / 8.0)).abs() < 1e-12);
        assert!((m - 1.0).abs() < 1e-12);
        assert!(c.reference_eval(Field::NuExcessAtom, 0.0, t).is_ok());
    }
}
