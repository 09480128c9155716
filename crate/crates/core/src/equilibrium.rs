//! Rigid rotation rate of the ring, its linearisation about the ring radius,
//! and the small-oscillation relations that follow from it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ring_model::{ring_force, RingSystem};
use crate::ring_sums::{csc3_sum, csc_sum};
use crate::summation::Neumaier;

/// Default tolerance for calling γ = ω/ω₀ an integer.
pub const STATIONARY_TOL: f64 = 1e-6;

/// Stand-in for an infinite |radial|/|tangential| ratio in tabulated output.
pub const RATIO_SENTINEL: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumInfo {
    pub omega: f64,
    /// √(GM/R³)
    pub omega_kepler: f64,
    /// Ω/Ω₀; `f64::INFINITY` when M = 0.
    pub ratio: f64,
}

/// Ω² = GM/R³ + (Gm/4R³)·Σcsc(πj/N): every particle, including each ring
/// member, is then in radial balance while the whole system turns rigidly.
pub fn omega_equilibrium(system: &RingSystem) -> Result<EquilibriumInfo> {
    let (g, m, big_m, r) = (
        system.grav_constant(),
        system.particle_mass(),
        system.central_mass(),
        system.radius(),
    );
    if m == 0.0 && big_m == 0.0 {
        return Err(Error::DegenerateSystem);
    }
    let r3 = r * r * r;
    let kepler_sq = g * big_m / r3;
    let omega = (kepler_sq + g * m / (4.0 * r3) * csc_sum(system.n_particles())).sqrt();
    let omega_kepler = kepler_sq.sqrt();
    let ratio = if big_m > 0.0 {
        omega / omega_kepler
    } else {
        f64::INFINITY
    };
    Ok(EquilibriumInfo {
        omega,
        omega_kepler,
        ratio,
    })
}

/// Ω/Ω₀ for each N at a fixed total ring mass N·m = `ring_mass_fraction`·M.
pub fn omega_ratio_sweep(n_list: &[u64], ring_mass_fraction: f64) -> Result<Vec<(u64, f64)>> {
    n_list
        .iter()
        .map(|&n| {
            let sys = RingSystem::normalized(n, ring_mass_fraction)?;
            Ok((n, omega_equilibrium(&sys)?.ratio))
        })
        .collect()
}

/// Ring force on a ring member near x = 0: F_r ≈ a0 + a_lin·x, F_t ≈ tangential_lin·x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoeffs {
    pub a0: f64,
    /// dF_r/dx at x = 0, i.e. −(parts[0] − parts[1]).
    pub a_lin: f64,
    /// [Gm/(8R³)·Σcsc³, 3Gm/(8R³)·Σcsc], both non-negative.
    pub a_lin_parts: [f64; 2],
    pub tangential_lin: f64,
}

impl LinearCoeffs {
    /// parts[0]/parts[1]; grows with N as nearest neighbours take over.
    pub fn part_ratio(&self) -> f64 {
        self.a_lin_parts[0] / self.a_lin_parts[1]
    }
}

pub fn linearize_radial(system: &RingSystem) -> LinearCoeffs {
    let n = system.n_particles();
    let gm = system.grav_constant() * system.particle_mass();
    let r = system.radius();
    let r3 = r * r * r;
    let csc = csc_sum(n);
    let parts = [gm / (8.0 * r3) * csc3_sum(n), 3.0 * gm / (8.0 * r3) * csc];

    // Σ cos/sin² over the raw angles; cancels pairwise, so this is a check
    // that the symmetric terms really do cancel in floating point.
    let mut tang = Neumaier::new();
    for j in 1..n {
        let (s, c) = (PI * j as f64 / n as f64).sin_cos();
        tang.add(c / (s * s));
    }
    LinearCoeffs {
        a0: -gm / (4.0 * r * r) * csc,
        a_lin: -(parts[0] - parts[1]),
        a_lin_parts: parts,
        tangential_lin: 3.0 * gm / (8.0 * r3) * tang.value(),
    }
}

/// Central-difference dF_r/dx of the exact ring force on a ring member.
pub fn radial_derivative_fd(system: &RingSystem, h: f64) -> Result<f64> {
    let plus = ring_force(system, h, 0.0, false)?.radial;
    let minus = ring_force(system, -h, 0.0, false)?.radial;
    Ok((plus - minus) / (2.0 * h))
}

/// Frequency of small radial oscillations about the ring radius for a given
/// specific angular momentum L:
/// ω² = −2GM/R³ + 3L²/R⁴ + Gm/(8R³)·Σcsc³.
pub fn epicyclic_omega(system: &RingSystem, angular_momentum: f64) -> Result<f64> {
    let radicand = fundamental_sq(system, angular_momentum) + ring_stiffness(system);
    if radicand < 0.0 {
        return Err(Error::ImaginaryFrequency { radicand });
    }
    Ok(radicand.sqrt())
}

/// L = ΩR² of the rigidly rotating ring.
pub fn equilibrium_angular_momentum(system: &RingSystem) -> Result<f64> {
    Ok(omega_equilibrium(system)?.omega * system.radius().powi(2))
}

/// ω₀² = −2GM/R³ + 3L²/R⁴.
fn fundamental_sq(system: &RingSystem, l: f64) -> f64 {
    let r = system.radius();
    -2.0 * system.grav_constant() * system.central_mass() / r.powi(3) + 3.0 * l * l / r.powi(4)
}

/// Gm/(8R³)·Σcsc³.
fn ring_stiffness(system: &RingSystem) -> f64 {
    system.grav_constant() * system.particle_mass() / (8.0 * system.radius().powi(3))
        * csc3_sum(system.n_particles())
}

/// Amplitude above which the ring's stiffening term dominates the
/// oscillation condition: x_crit = m·R·Σcsc³/(48M).
pub fn oscillation_threshold(system: &RingSystem) -> Result<f64> {
    if system.central_mass() <= 0.0 {
        return Err(Error::Domain(
            "oscillation threshold needs a central mass".into(),
        ));
    }
    Ok(system.particle_mass() * system.radius() * csc3_sum(system.n_particles())
        / (48.0 * system.central_mass()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedParams {
    pub resistance: f64,
    pub omega0: f64,
    pub omega: f64,
    pub delta: f64,
    /// ω/ω₀
    pub gamma_ratio: f64,
    /// 2π/γ
    pub wavelength: f64,
    /// γ within tolerance of an integer.
    pub stationary: bool,
}

/// tan δ = 2kω/(ω₀² − ω²), with δ taken in (−π/2, π/2).
pub fn phase_angle(resistance: f64, omega0: f64, omega: f64) -> Result<f64> {
    let denom = omega0 * omega0 - omega * omega;
    if denom == 0.0 {
        if resistance == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::Resonance);
    }
    Ok((2.0 * resistance * omega / denom).atan())
}

pub fn damped_response(system: &RingSystem, resistance: f64, angular_momentum: f64) -> Result<DampedParams> {
    damped_response_with(system, resistance, angular_momentum, STATIONARY_TOL)
}

/// Fills the damped-oscillation parameters. ω₀ is the frequency without the
/// ring's stiffening term and γ = √(stiffness/ω₀² + 1).
///
/// When the ring is massless ω = ω₀; the phase is then 0 for k = 0 and a
/// [`Error::Resonance`] otherwise.
pub fn damped_response_with(
    system: &RingSystem,
    resistance: f64,
    angular_momentum: f64,
    integer_tol: f64,
) -> Result<DampedParams> {
    if !(resistance >= 0.0) {
        return Err(Error::Domain(format!("resistance must be >= 0, got {resistance}")));
    }
    let w0_sq = fundamental_sq(system, angular_momentum);
    if w0_sq <= 0.0 {
        return Err(Error::ImaginaryFrequency { radicand: w0_sq });
    }
    let stiff = ring_stiffness(system);
    let omega0 = w0_sq.sqrt();
    let omega = (w0_sq + stiff).sqrt();
    let delta = if stiff == 0.0 {
        if resistance == 0.0 {
            0.0
        } else {
            return Err(Error::Resonance);
        }
    } else {
        (2.0 * resistance * omega / -stiff).atan()
    };
    let gamma_ratio = (stiff / w0_sq + 1.0).sqrt();
    Ok(DampedParams {
        resistance,
        omega0,
        omega,
        delta,
        gamma_ratio,
        wavelength: 2.0 * PI / gamma_ratio,
        stationary: (gamma_ratio - gamma_ratio.round()).abs() < integer_tol,
    })
}

/// φ offset at which the force-ratio series is sampled: π/(4N).
pub fn force_ratio_phi(system: &RingSystem) -> f64 {
    PI / (4.0 * system.n_particles() as f64)
}

/// |F_r|/|F_t| of the ring (nearest member excluded) on a ring member
/// displaced to (R + x, φ), for each x in `x_over_r`. Rows where the
/// tangential pull vanishes (to roundoff) carry [`RATIO_SENTINEL`].
pub fn force_ratio_series(system: &RingSystem, x_over_r: &[f64], phi: f64) -> Result<Vec<(f64, f64)>> {
    x_over_r
        .iter()
        .map(|&s| {
            let f = ring_force(system, s * system.radius(), phi, false)?;
            // below this the tangential pull is roundoff from cancelling pairs
            let ratio = if f.tangential.abs() <= 1e-13 * f.radial.abs() {
                RATIO_SENTINEL
            } else {
                f.radial.abs() / f.tangential.abs()
            };
            Ok((s, ratio))
        })
        .collect()
}
