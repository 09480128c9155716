//! Exact geometry and gravitational pull of a ring of N equal masses on a
//! test particle. Everything analytic elsewhere in the crate is checked
//! against these sums.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::summation::Neumaier;

/// Separations below this fraction of R count as a collision.
pub const MIN_SEPARATION: f64 = 1e-12;

/// One N+1 configuration: N particles of mass m on a circle of radius R
/// around a central mass M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSystem {
    n_particles: u64,
    particle_mass: f64,
    central_mass: f64,
    radius: f64,
    grav_constant: f64,
}

impl RingSystem {
    pub fn new(
        n_particles: u64,
        particle_mass: f64,
        central_mass: f64,
        radius: f64,
        grav_constant: f64,
    ) -> Result<Self> {
        if n_particles < 2 {
            return Err(Error::InvalidSystem(format!(
                "need at least 2 ring particles, got {n_particles}"
            )));
        }
        let checks = [
            ("radius", radius, radius > 0.0),
            ("grav_constant", grav_constant, grav_constant > 0.0),
            ("particle_mass", particle_mass, particle_mass >= 0.0),
            ("central_mass", central_mass, central_mass >= 0.0),
        ];
        for (name, value, ok) in checks {
            if !value.is_finite() || !ok {
                return Err(Error::InvalidSystem(format!("{name} = {value}")));
            }
        }
        if particle_mass == 0.0 && central_mass == 0.0 {
            return Err(Error::DegenerateSystem);
        }
        Ok(Self {
            n_particles,
            particle_mass,
            central_mass,
            radius,
            grav_constant,
        })
    }

    /// G = M = R = 1 with total ring mass N·m = `ring_mass_fraction`·M.
    pub fn normalized(n_particles: u64, ring_mass_fraction: f64) -> Result<Self> {
        Self::new(
            n_particles,
            ring_mass_fraction / n_particles as f64,
            1.0,
            1.0,
            1.0,
        )
    }

    pub fn n_particles(&self) -> u64 {
        self.n_particles
    }
    pub fn particle_mass(&self) -> f64 {
        self.particle_mass
    }
    pub fn central_mass(&self) -> f64 {
        self.central_mass
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn grav_constant(&self) -> f64 {
        self.grav_constant
    }

    /// m/M, infinite when M = 0.
    pub fn mass_ratio(&self) -> f64 {
        self.particle_mass / self.central_mass
    }

    pub fn total_ring_mass(&self) -> f64 {
        self.particle_mass * self.n_particles as f64
    }

    pub fn with_particle_mass(&self, particle_mass: f64) -> Result<Self> {
        Self::new(
            self.n_particles,
            particle_mass,
            self.central_mass,
            self.radius,
            self.grav_constant,
        )
    }

    /// Angular spacing 2π/N.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n_particles as f64
    }
}

/// Test particle in the rotating frame: radius R + x, angle φ from the ray
/// through a ring particle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TestParticleState {
    pub x: f64,
    pub phi: f64,
    pub x_dot: f64,
    pub phi_dot: f64,
}

impl TestParticleState {
    pub fn at_rest(x: f64, phi: f64) -> Self {
        Self {
            x,
            phi,
            ..Self::default()
        }
    }

    /// L = (φ̇ + Ω)(R + x)², per unit mass.
    pub fn angular_momentum(&self, radius: f64, omega: f64) -> f64 {
        (self.phi_dot + omega) * (radius + self.x).powi(2)
    }
}

/// Acceleration split along the centre→particle ray (positive outward) and
/// perpendicular to it (positive toward increasing φ).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ForceSample {
    pub radial: f64,
    pub tangential: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordGeometry {
    pub dist_sq: f64,
    /// Cosine of the angle between the outward ray and the line to the ring particle,
    /// measured so that a positive value means the particle lies inward.
    pub cos_phi: f64,
    pub sin_phi: f64,
}

/// Distance to a ring particle separated by angle `alpha_j` when the test
/// particle is at radius R + x.
pub fn chord_geometry(system: &RingSystem, x: f64, alpha_j: f64) -> Result<ChordGeometry> {
    let r = system.radius;
    if r + x <= 0.0 {
        return Err(Error::Domain(format!(
            "test particle must stay outside the centre (R + x = {})",
            r + x
        )));
    }
    let (s, c) = (0.5 * alpha_j).sin_cos();
    let chord = 2.0 * r * s;
    let dist_sq = x * x + chord * chord * (1.0 + x / r);
    let dist = dist_sq.sqrt();
    if !(dist >= MIN_SEPARATION * r) {
        return Err(Error::Coincidence { distance: dist });
    }
    Ok(ChordGeometry {
        dist_sq,
        cos_phi: (2.0 * r * s * s + x) / dist,
        sin_phi: 2.0 * r * s * c / dist,
    })
}

/// Pull of the ring alone (no central mass) on a test particle at (R + x, φ).
///
/// Terms run over α_j = 2πj/N + φ in ascending j; j = 0 is the particle the
/// test particle is measured from and is skipped unless `include_nearest`.
pub fn ring_force(
    system: &RingSystem,
    x: f64,
    phi: f64,
    include_nearest: bool,
) -> Result<ForceSample> {
    let gm = system.grav_constant * system.particle_mass;
    let n = system.n_particles;
    let mut radial = Neumaier::new();
    let mut tangential = Neumaier::new();
    let start = if include_nearest { 0 } else { 1 };
    for j in start..n {
        let alpha = 2.0 * PI * j as f64 / n as f64 + phi;
        let g = chord_geometry(system, x, alpha)?;
        let inv = gm / g.dist_sq;
        radial.add(-inv * g.cos_phi);
        tangential.add(-inv * g.sin_phi);
    }
    Ok(ForceSample {
        radial: radial.value(),
        tangential: tangential.value(),
    })
}

/// Ring particle positions R(cos 2πk/N, sin 2πk/N).
pub fn ring_positions(system: &RingSystem) -> Vec<[f64; 2]> {
    let n = system.n_particles;
    (0..n)
        .map(|k| {
            let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
            [system.radius * c, system.radius * s]
        })
        .collect()
}

/// U = GM/r + Σ Gm/d_k at an inertial point, with the ring at angles 2πk/N.
/// The acceleration of a test particle is ∇U.
pub fn potential(system: &RingSystem, position: [f64; 2]) -> Result<f64> {
    let g = system.grav_constant;
    let min = MIN_SEPARATION * system.radius;
    let mut acc = Neumaier::new();
    if system.central_mass > 0.0 {
        let r = position[0].hypot(position[1]);
        if r < min {
            return Err(Error::Coincidence { distance: r });
        }
        acc.add(g * system.central_mass / r);
    }
    if system.particle_mass > 0.0 {
        for p in ring_positions(system) {
            let d = (position[0] - p[0]).hypot(position[1] - p[1]);
            if d < min {
                return Err(Error::Coincidence { distance: d });
            }
            acc.add(g * system.particle_mass / d);
        }
    }
    Ok(acc.value())
}

/// Total acceleration (central mass plus ring) in polar components.
pub fn total_force(system: &RingSystem, x: f64, phi: f64) -> Result<ForceSample> {
    let mut f = ring_force(system, x, phi, true)?;
    let r = system.radius + x;
    f.radial -= system.grav_constant * system.central_mass / (r * r);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: u64) -> RingSystem {
        RingSystem::new(n, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            RingSystem::new(1, 1.0, 1.0, 1.0, 1.0),
            Err(Error::InvalidSystem(_))
        ));
        assert!(RingSystem::new(3, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(RingSystem::new(3, 1.0, 1.0, 1.0, -1.0).is_err());
        assert!(RingSystem::new(3, -1.0, 1.0, 1.0, 1.0).is_err());
        assert!(RingSystem::new(3, f64::NAN, 1.0, 1.0, 1.0).is_err());
        assert!(matches!(
            RingSystem::new(3, 0.0, 0.0, 1.0, 1.0),
            Err(Error::DegenerateSystem)
        ));
    }

    #[test]
    fn chord_lengths() {
        let s = unit(4);
        assert!((chord_geometry(&s, 0.0, PI).unwrap().dist_sq - 4.0).abs() < 1e-15);
        assert!((chord_geometry(&s, 0.0, PI / 2.0).unwrap().dist_sq - 2.0).abs() < 1e-15);
        assert!((chord_geometry(&s, 0.1, PI).unwrap().dist_sq - 4.41).abs() < 1e-14);
        assert!(matches!(
            chord_geometry(&s, 0.0, 0.0),
            Err(Error::Coincidence { .. })
        ));
        assert!(matches!(chord_geometry(&s, -1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn chord_matches_cartesian_distance() {
        let s = RingSystem::new(5, 1.0, 1.0, 2.0, 1.0).unwrap();
        let (x, a) = (0.3_f64, 0.7_f64);
        let test = [2.0 + x, 0.0];
        let ring = [2.0 * a.cos(), -2.0 * a.sin()];
        let d2 = (test[0] - ring[0]).powi(2) + (test[1] - ring[1]).powi(2);
        let g = chord_geometry(&s, x, a).unwrap();
        assert!((g.dist_sq - d2).abs() < 1e-14);
        assert!((g.cos_phi.powi(2) + g.sin_phi.powi(2) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_particle_ring_single_term() {
        let f = ring_force(&unit(2), 0.0, 0.0, false).unwrap();
        assert!((f.radial + 0.25).abs() < 1e-16);
        assert!(f.tangential.abs() < 1e-16);
    }

    #[test]
    fn nearest_particle_coincides_at_origin() {
        assert!(matches!(
            ring_force(&unit(6), 0.0, 0.0, true),
            Err(Error::Coincidence { .. })
        ));
    }

    #[test]
    fn radial_pull_on_ring_member_is_b_coefficient() {
        let s = unit(10);
        let f = ring_force(&s, 0.0, 0.0, false).unwrap();
        let b = crate::ring_sums::coeff_ab(&s).b_coeff;
        assert!(((f.radial + b) / b).abs() < 1e-12);
    }

    #[test]
    fn symmetric_point_has_no_tangential_pull() {
        for n in [7u64, 8] {
            let s = unit(n);
            let f = ring_force(&s, 0.0, PI / n as f64, true).unwrap();
            assert!(f.tangential.abs() < 1e-12 * f.radial.abs(), "n = {n}");
        }
    }

    #[test]
    fn outward_offset_pulls_inward() {
        for n in [2u64, 3, 10, 101] {
            let f = ring_force(&unit(n), 0.05, 0.0, false).unwrap();
            assert!(f.radial < 0.0);
        }
    }

    #[test]
    fn potential_simple_cases() {
        let s = RingSystem::new(4, 1.0, 0.0, 1.0, 1.0).unwrap();
        assert!((potential(&s, [0.0, 0.0]).unwrap() - 4.0).abs() < 1e-15);
        let s = RingSystem::new(2, 1.0, 0.0, 1.0, 1.0).unwrap();
        // distance 1 to (1,0), distance √5 to (−1,0)
        let u = potential(&s, [1.0, 1.0]).unwrap();
        assert!((u - (1.0 + 1.0 / 5f64.sqrt())).abs() < 1e-15);
        assert!(potential(&unit(3), [1.0, 0.0]).is_err());
    }

    #[test]
    fn angular_momentum_of_state() {
        let st = TestParticleState {
            x: 0.1,
            phi: 0.0,
            x_dot: 0.0,
            phi_dot: 0.5,
        };
        assert!((st.angular_momentum(1.0, 1.5) - 2.0 * 1.21).abs() < 1e-15);
    }
}
