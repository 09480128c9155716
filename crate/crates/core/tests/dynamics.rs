//! End-to-end integration runs against the analytic results.

use ringcc_core::dynamics::{
    init_central_configuration, integrate, integrate_rotating_test_particle, measure_frequency,
    CentralConfiguration, IntegratorConfig, IntegratorMethod, RotatingModel,
};
use ringcc_core::equilibrium::{epicyclic_omega, equilibrium_angular_momentum};
use ringcc_core::libration::{solve_full, LibrationBranch};
use ringcc_core::two_ring::{build_two_ring, Arrangement, TwoRingParams};
use ringcc_core::{RingSystem, TestParticleState};

fn ring20() -> RingSystem {
    RingSystem::normalized(20, 1e-3).unwrap()
}

#[test]
fn single_ring_stays_stationary_for_one_period() {
    let s = ring20();
    let st = init_central_configuration(&s).unwrap();
    let cfg = IntegratorConfig::for_period(s.period().unwrap(), 1.0);
    let t = integrate(&st, &cfg).unwrap();
    assert!(t.max_radius_deviation < 1e-6, "{}", t.max_radius_deviation);
    assert!(t.spacing_error(1..21) < 1e-6);
}

#[test]
fn leapfrog_conserves_energy_and_momentum() {
    let s = ring20();
    let st = init_central_configuration(&s).unwrap();
    let period = s.period().unwrap();
    let orbits = 3.0;
    let cfg = IntegratorConfig {
        method: IntegratorMethod::Leapfrog,
        ..IntegratorConfig::for_period(period, orbits)
    };
    let t = integrate(&st, &cfg).unwrap();
    let (first, last) = (t.diagnostics[0], *t.diagnostics.last().unwrap());
    let de = ((last.energy - first.energy) / first.energy).abs() / orbits;
    assert!(de < 1e-8, "energy drift {de:e} per orbit");
    let dl = ((last.ang_momentum - first.ang_momentum) / first.ang_momentum).abs() / orbits;
    assert!(dl < 1e-10, "angular momentum drift {dl:e} per orbit");
}

#[test]
fn two_ring_configuration_starts_with_zero_momentum() {
    let s = build_two_ring(TwoRingParams {
        n_per_ring: 12,
        inner_mass: 1e-5,
        outer_mass: 1e-5,
        inner_radius: 1.0,
        outer_radius: 2.0,
        central_mass: 1.0,
        grav_constant: 1.0,
        arrangement: Arrangement::Noncollinear,
    })
    .unwrap();
    let st = init_central_configuration(&s).unwrap();
    assert_eq!(st.len(), 25);
    let p = st.total_momentum();
    assert!(p[0].hypot(p[1]) < 1e-15);
}

/// Radial kick of ring member 0 keeping L = ΩR², the angular momentum the
/// epicyclic formula assumes. Returns (measured, predicted).
fn kicked_member_frequency(ring_mass_fraction: f64) -> (f64, f64) {
    let s = RingSystem::normalized(20, ring_mass_fraction).unwrap();
    let l = equilibrium_angular_momentum(&s).unwrap();
    let predicted = epicyclic_omega(&s, l).unwrap();
    let omega = l / (s.radius() * s.radius());
    let x = 1e-4 * s.radius();
    let r = s.radius() + x;
    let kick = TestParticleState {
        x,
        phi: 0.0,
        x_dot: 0.0,
        phi_dot: l / (r * r) - omega,
    };
    let cfg = IntegratorConfig {
        record_every: 16,
        ..IntegratorConfig::for_period(2.0 * std::f64::consts::PI / predicted, 12.0)
    };
    let run = integrate_rotating_test_particle(&s, kick, &cfg, RotatingModel::RingMember).unwrap();
    (measure_frequency(&run.times, &run.x_series()).unwrap().omega, predicted)
}

#[test]
fn kicked_ring_member_oscillates_at_epicyclic_frequency() {
    let (measured, predicted) = kicked_member_frequency(1e-4);
    assert!((measured / predicted - 1.0).abs() < 0.01, "{measured} vs {predicted}");
}

#[test]
fn tangential_coupling_lowers_the_frequency_in_proportion_to_ring_mass() {
    // the formula ignores the neighbours' tangential pull once the epicycle
    // moves the member off its symmetry ray; the shortfall scales with m
    let dev = |f: f64| {
        let (m, p) = kicked_member_frequency(f);
        m / p - 1.0
    };
    let (a, b) = (dev(1e-4), dev(1e-3));
    assert!(a < 0.0 && b < 0.0);
    assert!((b / a - 10.0).abs() < 1.0, "{a} {b}");
}

#[test]
fn collinear_libration_point_is_nearly_stationary() {
    let s = RingSystem::normalized(50, 1e-3).unwrap();
    let period = s.period().unwrap();
    for branch in [LibrationBranch::Inner, LibrationBranch::Outer] {
        let x = solve_full(&s, branch).unwrap().unwrap().x_over_r * s.radius();
        let cfg = IntegratorConfig::for_period(period, 0.1);
        let run = integrate_rotating_test_particle(
            &s,
            TestParticleState::at_rest(x, 0.0),
            &cfg,
            RotatingModel::TestParticle,
        )
        .unwrap();
        let drift = run.states.iter().map(|p| (p.x - x).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-4 * s.radius(), "{branch}: {drift:e}");
    }
}
