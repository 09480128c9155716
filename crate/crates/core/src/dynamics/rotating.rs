//! Test particle in the frame co-rotating with a frozen ring, plus the
//! inertial-frame runs used to check that model.

use crate::equilibrium::omega_equilibrium;
use crate::error::{Error, Result};
use crate::ring_model::{ring_force, RingSystem, TestParticleState};

use super::{init_central_configuration, integrate, IntegratorConfig, IntegratorMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotatingModel {
    /// A separate massless particle; every ring body pulls on it.
    #[default]
    TestParticle,
    /// The particle is ring member 0 itself, displaced; the other N − 1 pull on it.
    RingMember,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RotatingTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<TestParticleState>,
    /// Rotation rate of the frame.
    pub omega: f64,
}

impl RotatingTrajectory {
    pub fn x_series(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.x).collect()
    }
}

type Deriv = [f64; 4];

fn rhs(system: &RingSystem, model: RotatingModel, omega: f64, y: &Deriv) -> Result<Deriv> {
    let [x, phi, xd, phid] = *y;
    let r = system.radius() + x;
    let f = ring_force(system, x, phi, model == RotatingModel::TestParticle)?;
    let w = phid + omega;
    let central = system.grav_constant() * system.central_mass() / (r * r);
    Ok([
        xd,
        phid,
        r * w * w - central + f.radial,
        (f.tangential - 2.0 * xd * w) / r,
    ])
}

fn add(y: &Deriv, k: &Deriv, h: f64) -> Deriv {
    [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]]
}

/// Integrates the polar equations of motion in the rotating frame,
///   ẍ = (R+x)(φ̇+Ω)² − GM/(R+x)² + F_r,
///   d/dt[(R+x)²(φ̇+Ω)] = (R+x)·F_t,
/// with the ring held rigid. RK4 only: the Coriolis terms make leapfrog
/// non-symplectic here.
pub fn integrate_rotating_test_particle(
    system: &RingSystem,
    initial: TestParticleState,
    config: &IntegratorConfig,
    model: RotatingModel,
) -> Result<RotatingTrajectory> {
    if config.method != IntegratorMethod::Rk4 {
        return Err(Error::Unsupported("rotating-frame runs use RK4".into()));
    }
    config.validate()?;
    let omega = omega_equilibrium(system)?.omega;
    let h = config.step;
    let steps = config.steps();
    let mut y = [initial.x, initial.phi, initial.x_dot, initial.phi_dot];
    let mut out = RotatingTrajectory {
        omega,
        ..Default::default()
    };
    let push = |out: &mut RotatingTrajectory, t: f64, y: &Deriv| {
        out.times.push(t);
        out.states.push(TestParticleState {
            x: y[0],
            phi: y[1],
            x_dot: y[2],
            phi_dot: y[3],
        });
    };
    push(&mut out, 0.0, &y);
    for k in 1..=steps {
        let k1 = rhs(system, model, omega, &y)?;
        let k2 = rhs(system, model, omega, &add(&y, &k1, 0.5 * h))?;
        let k3 = rhs(system, model, omega, &add(&y, &k2, 0.5 * h))?;
        let k4 = rhs(system, model, omega, &add(&y, &k3, h))?;
        for i in 0..4 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y.iter().any(|v| !v.is_finite()) || system.radius() + y[0] <= 0.0 {
            return Err(Error::Coincidence { distance: system.radius() + y[0] });
        }
        if k % config.record_every == 0 || k == steps {
            push(&mut out, k as f64 * h, &y);
        }
    }
    Ok(out)
}

/// Inertial position and velocity of a rotating-frame state at time t, the
/// frame having turned by Ωt.
pub fn rotating_to_inertial(radius: f64, omega: f64, t: f64, s: &TestParticleState) -> ([f64; 2], [f64; 2]) {
    let r = radius + s.x;
    let theta = s.phi + omega * t;
    let (sn, cs) = theta.sin_cos();
    let vt = r * (s.phi_dot + omega);
    (
        [r * cs, r * sn],
        [s.x_dot * cs - vt * sn, s.x_dot * sn + vt * cs],
    )
}

/// Massless particle in the inertial frame with the ring's motion prescribed
/// as rigid rotation at Ω. Returns (t, position) at the recorded steps.
pub fn integrate_prescribed_ring(
    system: &RingSystem,
    position: [f64; 2],
    velocity: [f64; 2],
    config: &IntegratorConfig,
) -> Result<Vec<(f64, [f64; 2])>> {
    config.validate()?;
    let omega = omega_equilibrium(system)?.omega;
    let n = system.n_particles();
    let g = system.grav_constant();
    let r0 = system.radius();
    let min_d = crate::ring_model::MIN_SEPARATION * r0;
    let accel = |t: f64, p: [f64; 2]| -> Result<[f64; 2]> {
        let mut a = [0.0, 0.0];
        let mut pull = |q: [f64; 2], gm: f64| -> Result<()> {
            let dx = q[0] - p[0];
            let dy = q[1] - p[1];
            let d2 = dx * dx + dy * dy;
            let d = d2.sqrt();
            if d < min_d {
                return Err(Error::Coincidence { distance: d });
            }
            a[0] += gm * dx / (d2 * d);
            a[1] += gm * dy / (d2 * d);
            Ok(())
        };
        if system.central_mass() > 0.0 {
            pull([0.0, 0.0], g * system.central_mass())?;
        }
        if system.particle_mass() > 0.0 {
            for k in 0..n {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + omega * t;
                pull([r0 * th.cos(), r0 * th.sin()], g * system.particle_mass())?;
            }
        }
        Ok(a)
    };
    let h = config.step;
    let steps = config.steps();
    let (mut p, mut v) = (position, velocity);
    let mut out = vec![(0.0, p)];
    let mv = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    for k in 1..=steps {
        let t = (k - 1) as f64 * h;
        let a1 = accel(t, p)?;
        let (p2, v2) = (mv(p, v, 0.5 * h), mv(v, a1, 0.5 * h));
        let a2 = accel(t + 0.5 * h, p2)?;
        let (p3, v3) = (mv(p, v2, 0.5 * h), mv(v, a2, 0.5 * h));
        let a3 = accel(t + 0.5 * h, p3)?;
        let (p4, v4) = (mv(p, v3, h), mv(v, a3, h));
        let a4 = accel(t + h, p4)?;
        for c in 0..2 {
            p[c] += h / 6.0 * (v[c] + 2.0 * v2[c] + 2.0 * v3[c] + v4[c]);
            v[c] += h / 6.0 * (a1[c] + 2.0 * a2[c] + 2.0 * a3[c] + a4[c]);
        }
        if k % config.record_every == 0 || k == steps {
            out.push((k as f64 * h, p));
        }
    }
    Ok(out)
}

/// Largest separation, in units of R, between the frozen-ring rotating model
/// and a full inertial run in which the ring bodies move under their own
/// gravity, for a massless test particle started at `initial`.
pub fn frozen_ring_discrepancy(
    system: &RingSystem,
    initial: TestParticleState,
    config: &IntegratorConfig,
) -> Result<f64> {
    let rot = integrate_rotating_test_particle(system, initial, config, RotatingModel::TestParticle)?;
    let mut st = init_central_configuration(system)?;
    let (p, v) = rotating_to_inertial(system.radius(), rot.omega, 0.0, &initial);
    st.positions.push(p);
    st.velocities.push(v);
    st.masses.push(0.0);
    st.nominal_radius.push(None);
    let full = integrate(&st, &IntegratorConfig { method: IntegratorMethod::Rk4, ..*config })?;
    let idx = st.len() - 1;
    let mut worst: f64 = 0.0;
    for (frame, (t, s)) in full.frames.iter().zip(rot.times.iter().zip(&rot.states)) {
        let (q, _) = rotating_to_inertial(system.radius(), rot.omega, *t, s);
        let p = frame.positions[idx];
        worst = worst.max((p[0] - q[0]).hypot(p[1] - q[1]) / system.radius());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::CentralConfiguration;
    use crate::libration::{solve_full, LibrationBranch};
    use std::f64::consts::PI;

    #[test]
    fn leapfrog_is_refused() {
        let s = RingSystem::normalized(10, 1e-3).unwrap();
        let cfg = IntegratorConfig {
            method: IntegratorMethod::Leapfrog,
            ..IntegratorConfig::for_period(1.0, 1.0)
        };
        assert!(matches!(
            integrate_rotating_test_particle(&s, TestParticleState::default(), &cfg, RotatingModel::RingMember),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn noncollinear_fixed_point_stays_put() {
        let s = RingSystem::normalized(20, 1e-4).unwrap();
        let x = solve_full(&s, LibrationBranch::Noncollinear).unwrap().unwrap().x_over_r;
        let init = TestParticleState::at_rest(x, PI / 20.0);
        let cfg = IntegratorConfig::for_period(s.period().unwrap(), 1.0);
        let tr = integrate_rotating_test_particle(&s, init, &cfg, RotatingModel::TestParticle).unwrap();
        let worst = tr
            .states
            .iter()
            .map(|st| (st.x - x).abs().max((st.phi - PI / 20.0).abs()))
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn angular_momentum_conserved_without_torque() {
        // no ring mass: no torque at all
        let s = RingSystem::new(8, 0.0, 1.0, 1.0, 1.0).unwrap();
        let init = TestParticleState { x: 1e-3, phi: 0.0, x_dot: 0.0, phi_dot: 0.0 };
        let cfg = IntegratorConfig::for_period(2.0 * PI, 1.0);
        let tr = integrate_rotating_test_particle(&s, init, &cfg, RotatingModel::TestParticle).unwrap();
        let l0 = init.angular_momentum(1.0, tr.omega);
        for st in &tr.states {
            assert!((st.angular_momentum(1.0, tr.omega) / l0 - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn angular_momentum_changes_by_integrated_torque() {
        let s = RingSystem::normalized(8, 1e-3).unwrap();
        let init = TestParticleState { x: 1e-3, phi: 0.0, x_dot: 0.0, phi_dot: 0.0 };
        let period = s.period().unwrap();
        let cfg = IntegratorConfig { record_every: 1, ..IntegratorConfig::for_period(period, 0.25) };
        let tr = integrate_rotating_test_particle(&s, init, &cfg, RotatingModel::RingMember).unwrap();
        // trapezoid over r·F_t
        let torque: Vec<f64> = tr
            .states
            .iter()
            .map(|st| (1.0 + st.x) * ring_force(&s, st.x, st.phi, false).unwrap().tangential)
            .collect();
        let mut integral = 0.0;
        for k in 1..torque.len() {
            integral += 0.5 * (torque[k] + torque[k - 1]) * (tr.times[k] - tr.times[k - 1]);
        }
        let l = |st: &TestParticleState| st.angular_momentum(1.0, tr.omega);
        let dl = l(tr.states.last().unwrap()) - l(&tr.states[0]);
        assert!((dl - integral).abs() < 1e-9 * l(&tr.states[0]), "{dl} vs {integral}");
    }

    #[test]
    fn rotating_and_inertial_frames_agree() {
        let s = RingSystem::normalized(12, 1e-3).unwrap();
        let init = TestParticleState { x: 0.3, phi: 0.1, x_dot: 0.0, phi_dot: -0.2 };
        let period = s.period().unwrap();
        let cfg = IntegratorConfig::for_period(period, 1.0);
        let rot = integrate_rotating_test_particle(&s, init, &cfg, RotatingModel::TestParticle).unwrap();
        let (p0, v0) = rotating_to_inertial(1.0, rot.omega, 0.0, &init);
        let inertial = integrate_prescribed_ring(&s, p0, v0, &cfg).unwrap();
        assert_eq!(inertial.len(), rot.states.len());
        for ((t, p), st) in inertial.iter().zip(&rot.states) {
            let (q, _) = rotating_to_inertial(1.0, rot.omega, *t, st);
            assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-6);
        }
    }

    #[test]
    fn frozen_ring_matches_dynamic_ring_for_stationary_ring() {
        let s = RingSystem::normalized(10, 1e-3).unwrap();
        let init = TestParticleState { x: 0.4, phi: 0.2, x_dot: 0.0, phi_dot: 0.0 };
        let cfg = IntegratorConfig::for_period(s.period().unwrap(), 0.5);
        let d = frozen_ring_discrepancy(&s, init, &cfg).unwrap();
        assert!(d < 1e-6, "{d}");
    }
}
