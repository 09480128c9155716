//! Two nested rings of N particles around a central mass (2N+1 bodies),
//! either on common rays (collinear) or with the outer ring turned by π/N.

use std::f64::consts::PI;

use crate::equilibrium::linearize_radial;
use crate::error::{Error, Result};
use crate::libration::{solve_full, LibrationBranch, LibrationResult};
use crate::ring_model::{ring_force, ForceSample, RingSystem, MIN_SEPARATION};
use crate::ring_sums::{csc_sum, csc3_sum};
use crate::summation::Neumaier;

/// Relative gap below which collinear rings are reported as nearly touching.
pub const PROXIMITY_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arrangement {
    /// Particles of both rings share rays.
    Collinear,
    /// Outer ring rotated by π/N.
    Noncollinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingId {
    Inner,
    Outer,
}

impl RingId {
    pub fn other(self) -> Self {
        match self {
            Self::Inner => Self::Outer,
            Self::Outer => Self::Inner,
        }
    }
}

/// How one rigid rotation rate is chosen for both rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaFit {
    /// Zero the outer ring's radial residual.
    #[default]
    Outer,
    /// Zero the inner ring's radial residual.
    Inner,
    /// Minimise the sum of both squared residuals.
    LeastSquares,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoRingParams {
    pub n_per_ring: u64,
    pub inner_mass: f64,
    pub outer_mass: f64,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub central_mass: f64,
    pub arrangement: Arrangement,
    pub grav_constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoRingSystem {
    params: TwoRingParams,
}

pub fn build_two_ring(params: TwoRingParams) -> Result<TwoRingSystem> {
    let p = params;
    if p.n_per_ring < 2 {
        return Err(Error::InvalidSystem(format!("need N >= 2 per ring, got {}", p.n_per_ring)));
    }
    let masses = [p.inner_mass, p.outer_mass, p.central_mass];
    if masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
        return Err(Error::InvalidSystem(format!("masses must be finite and >= 0: {masses:?}")));
    }
    if masses.iter().all(|&m| m == 0.0) {
        return Err(Error::DegenerateSystem);
    }
    if !(p.inner_radius > 0.0 && p.inner_radius < p.outer_radius && p.outer_radius.is_finite()) {
        return Err(Error::InvalidSystem(format!(
            "radii must satisfy 0 < R_i < R_o (got {}, {})",
            p.inner_radius, p.outer_radius
        )));
    }
    if !(p.grav_constant > 0.0 && p.grav_constant.is_finite()) {
        return Err(Error::InvalidSystem(format!("grav_constant = {}", p.grav_constant)));
    }
    if p.arrangement == Arrangement::Collinear
        && p.outer_radius - p.inner_radius < PROXIMITY_WARNING * p.outer_radius
    {
        log::warn!(
            "rings nearly touch: R_o - R_i = {:e}",
            p.outer_radius - p.inner_radius
        );
    }
    Ok(TwoRingSystem { params })
}

impl TwoRingSystem {
    pub fn params(&self) -> &TwoRingParams {
        &self.params
    }

    pub fn n_per_ring(&self) -> u64 {
        self.params.n_per_ring
    }

    pub fn radius(&self, which: RingId) -> f64 {
        match which {
            RingId::Inner => self.params.inner_radius,
            RingId::Outer => self.params.outer_radius,
        }
    }

    pub fn particle_mass(&self, which: RingId) -> f64 {
        match which {
            RingId::Inner => self.params.inner_mass,
            RingId::Outer => self.params.outer_mass,
        }
    }

    /// Angle of particle 0 of the ring.
    pub fn phase(&self, which: RingId) -> f64 {
        match (which, self.params.arrangement) {
            (RingId::Outer, Arrangement::Noncollinear) => PI / self.params.n_per_ring as f64,
            _ => 0.0,
        }
    }

    pub fn ring_angles(&self, which: RingId) -> Vec<f64> {
        let n = self.params.n_per_ring;
        let phase = self.phase(which);
        (0..n).map(|j| 2.0 * PI * j as f64 / n as f64 + phase).collect()
    }

    pub fn ring_positions(&self, which: RingId) -> Vec<[f64; 2]> {
        let r = self.radius(which);
        self.ring_angles(which)
            .into_iter()
            .map(|a| [r * a.cos(), r * a.sin()])
            .collect()
    }

    /// Central mass, inner ring, outer ring.
    pub fn positions(&self) -> Vec<[f64; 2]> {
        let mut out = vec![[0.0, 0.0]];
        out.extend(self.ring_positions(RingId::Inner));
        out.extend(self.ring_positions(RingId::Outer));
        out
    }

    pub fn masses(&self) -> Vec<f64> {
        let n = self.params.n_per_ring as usize;
        let mut out = vec![self.params.central_mass];
        out.extend(std::iter::repeat(self.params.inner_mass).take(n));
        out.extend(std::iter::repeat(self.params.outer_mass).take(n));
        out
    }

    pub fn center_of_mass(&self) -> [f64; 2] {
        let (mut mx, mut my, mut mt) = (Neumaier::new(), Neumaier::new(), Neumaier::new());
        for (p, m) in self.positions().iter().zip(self.masses()) {
            mx.add(m * p[0]);
            my.add(m * p[1]);
            mt.add(m);
        }
        [mx.value() / mt.value(), my.value() / mt.value()]
    }

    /// One ring with the central mass, as a single-ring system. `None` when
    /// both the ring and the centre are massless.
    pub fn single_ring(&self, which: RingId) -> Option<RingSystem> {
        RingSystem::new(
            self.params.n_per_ring,
            self.particle_mass(which),
            self.params.central_mass,
            self.radius(which),
            self.params.grav_constant,
        )
        .ok()
    }
}

/// Linear coefficients of the force on a member of one ring from its own
/// ring: F_r ≈ B_k + A_k·x, F_t ≈ b_k + a_k·x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingExpansion {
    pub radial_slope: f64,
    pub radial_offset: f64,
    /// Vanishes by symmetry; reported as an exact zero.
    pub tangential_slope: f64,
    /// Vanishes by symmetry; reported as an exact zero.
    pub tangential_offset: f64,
    /// GM/R_k³ + Gm_k/(4R_k³)·Σcsc.
    pub omega_sq: f64,
    /// The summed tangential terms were checked to cancel to 1e-12.
    pub verified: bool,
}

pub fn ring_expansion(system: &TwoRingSystem, which: RingId) -> RingExpansion {
    let p = system.params;
    let n = p.n_per_ring;
    let g = p.grav_constant;
    let m = system.particle_mass(which);
    let r = system.radius(which);
    let r3 = r * r * r;
    let gm = g * m;
    let csc = csc_sum(n);
    let slope = -(gm / (8.0 * r3) * csc3_sum(n) - 3.0 * gm / (8.0 * r3) * csc);

    let verified = match system.single_ring(which) {
        Some(own) if m > 0.0 => {
            let lin = linearize_radial(&own);
            let scale = lin.a_lin_parts[0].max(gm * csc / (4.0 * r * r));
            let offset = ring_force(&own, 0.0, 0.0, false).map(|f| f.tangential);
            matches!(offset, Ok(t) if t.abs() < 1e-12 * scale)
                && lin.tangential_lin.abs() < 1e-12 * scale
        }
        _ => true,
    };
    RingExpansion {
        radial_slope: slope,
        radial_offset: -gm / (4.0 * r * r) * csc,
        tangential_slope: 0.0,
        tangential_offset: 0.0,
        omega_sq: g * p.central_mass / r3 + gm / (4.0 * r3) * csc,
        verified,
    }
}

fn point_pull(target: [f64; 2], source: [f64; 2], gm: f64, scale: f64) -> Result<[f64; 2]> {
    let dx = source[0] - target[0];
    let dy = source[1] - target[1];
    let d2 = dx * dx + dy * dy;
    let d = d2.sqrt();
    if d < MIN_SEPARATION * scale {
        return Err(Error::Coincidence { distance: d });
    }
    let k = gm / (d2 * d);
    Ok([k * dx, k * dy])
}

fn polar(acc: [f64; 2], angle: f64) -> ForceSample {
    let (s, c) = angle.sin_cos();
    ForceSample {
        radial: acc[0] * c + acc[1] * s,
        tangential: -acc[0] * s + acc[1] * c,
    }
}

fn displaced(system: &TwoRingSystem, which: RingId, x: f64, phi: f64) -> ([f64; 2], f64) {
    let angle = system.phase(which) + phi;
    let r = system.radius(which) + x;
    ([r * angle.cos(), r * angle.sin()], angle)
}

/// Force on particle 0 of ring `which`, displaced to (R_k + x, φ) from its
/// place, due to the other ring and the central mass.
pub fn cross_ring_force(system: &TwoRingSystem, which: RingId, x: f64, phi: f64) -> Result<ForceSample> {
    let p = system.params;
    let (pos, angle) = displaced(system, which, x, phi);
    let scale = system.radius(RingId::Outer);
    let g = p.grav_constant;
    let mut ax = Neumaier::new();
    let mut ay = Neumaier::new();
    let other = which.other();
    let gm = g * system.particle_mass(other);
    if gm > 0.0 {
        for q in system.ring_positions(other) {
            let a = point_pull(pos, q, gm, scale)?;
            ax.add(a[0]);
            ay.add(a[1]);
        }
    }
    if p.central_mass > 0.0 {
        let a = point_pull(pos, [0.0, 0.0], g * p.central_mass, scale)?;
        ax.add(a[0]);
        ay.add(a[1]);
    }
    Ok(polar([ax.value(), ay.value()], angle))
}

/// Force on a displaced particle 0 of ring `which` from every other body.
pub fn total_force_on(system: &TwoRingSystem, which: RingId, x: f64, phi: f64) -> Result<ForceSample> {
    let mut f = cross_ring_force(system, which, x, phi)?;
    if system.particle_mass(which) > 0.0 {
        if let Some(own) = system.single_ring(which) {
            let s = ring_force(&own, x, phi, false)?;
            f.radial += s.radial;
            f.tangential += s.tangential;
        }
    }
    Ok(f)
}

/// Potential Σ Gm_b/d_b at a point, skipping the ring named in `exclude`.
pub fn two_ring_potential(
    system: &TwoRingSystem,
    position: [f64; 2],
    exclude: Option<RingId>,
) -> Result<f64> {
    let g = system.params.grav_constant;
    let scale = system.radius(RingId::Outer);
    let mut acc = Neumaier::new();
    let mut add = |q: [f64; 2], m: f64| -> Result<()> {
        if m == 0.0 {
            return Ok(());
        }
        let d = (position[0] - q[0]).hypot(position[1] - q[1]);
        if d < MIN_SEPARATION * scale {
            return Err(Error::Coincidence { distance: d });
        }
        acc.add(g * m / d);
        Ok(())
    };
    add([0.0, 0.0], system.params.central_mass)?;
    for which in [RingId::Inner, RingId::Outer] {
        if exclude == Some(which) {
            continue;
        }
        for q in system.ring_positions(which) {
            add(q, system.particle_mass(which))?;
        }
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityReport {
    /// Common Ω² used for both rings.
    pub omega_sq: f64,
    pub fit: OmegaFit,
    /// Radial residual −R_kΩ² − F_r for each ring (zero when stationary).
    pub inner: f64,
    pub outer: f64,
}

/// Radial residuals of both rings at their nominal radii under one common
/// rotation rate chosen by `fit`.
pub fn stationarity_residual(system: &TwoRingSystem, fit: OmegaFit) -> Result<StationarityReport> {
    // pull g_k = −F_r,k ≥ 0 inward, balanced when g_k = R_k Ω²
    let pull = |which| -> Result<f64> { Ok(-total_force_on(system, which, 0.0, 0.0)?.radial) };
    let (gi, go) = (pull(RingId::Inner)?, pull(RingId::Outer)?);
    let (ri, ro) = (system.radius(RingId::Inner), system.radius(RingId::Outer));
    let w = match fit {
        OmegaFit::Outer => go / ro,
        OmegaFit::Inner => gi / ri,
        OmegaFit::LeastSquares => (ri * gi + ro * go) / (ri * ri + ro * ro),
    };
    log::debug!("two-ring common omega^2 = {w} ({fit:?} fit)");
    Ok(StationarityReport {
        omega_sq: w,
        fit,
        inner: gi - ri * w,
        outer: go - ro * w,
    })
}

/// A second ring placed on the libration radius of an existing one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedRing {
    pub system: TwoRingSystem,
    /// Which ring of `system` is the new one.
    pub placed: RingId,
    /// Ω fit that keeps the original ring stationary.
    pub fit: OmegaFit,
    pub libration: LibrationResult,
}

/// Puts N particles of mass `second_mass` at the libration radius of `base`
/// on `branch`: collinear points give a collinear double ring, the
/// noncollinear point an offset one.
pub fn place_second_ring(base: &RingSystem, branch: LibrationBranch, second_mass: f64) -> Result<PlacedRing> {
    let lib = solve_full(base, branch)?
        .ok_or_else(|| Error::NoLibrationPoint(branch.to_string()))?;
    let r = base.radius();
    let r_new = r * (1.0 + lib.x_over_r);
    let placed = if lib.x_over_r < 0.0 { RingId::Inner } else { RingId::Outer };
    let (inner_mass, outer_mass, inner_radius, outer_radius) = match placed {
        RingId::Inner => (second_mass, base.particle_mass(), r_new, r),
        RingId::Outer => (base.particle_mass(), second_mass, r, r_new),
    };
    // the offset arrangement rotates the outer ring, so the placed ring must
    // be that one for the geometry to match
    let arrangement = match branch {
        LibrationBranch::Noncollinear => {
            if placed == RingId::Inner {
                return Err(Error::Unsupported(
                    "noncollinear point inside the base ring".into(),
                ));
            }
            Arrangement::Noncollinear
        }
        _ => Arrangement::Collinear,
    };
    let system = build_two_ring(TwoRingParams {
        n_per_ring: base.n_particles(),
        inner_mass,
        outer_mass,
        inner_radius,
        outer_radius,
        central_mass: base.central_mass(),
        arrangement,
        grav_constant: base.grav_constant(),
    })?;
    Ok(PlacedRing {
        system,
        placed,
        fit: match placed {
            RingId::Inner => OmegaFit::Outer,
            RingId::Outer => OmegaFit::Inner,
        },
        libration: lib,
    })
}
