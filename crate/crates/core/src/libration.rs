//! Stationary points of a test particle in the frame rotating with the ring.
//!
//! Collinear points lie on the ray through a ring particle, just inside
//! (inner branch) or outside (outer branch) it; the noncollinear point sits on
//! the bisector between two neighbours. Four independent estimates are
//! offered: the exact residual ([`solve_full`]), a quintic from the linearised
//! ring force, a cubic small-mass approximation and leading-order asymptotics.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::equilibrium::omega_equilibrium;
use crate::error::{Error, Result};
use crate::ring_model::{ring_force, ForceSample, RingSystem};
use crate::ring_sums::{coeff_ab, CoeffAB};
use crate::roots::{brent_try, poly_add, poly_eval, poly_mul, poly_scale, real_roots};

/// Mass ratios mN/M of the reference libration tables.
pub const TABLE_RATIOS: [f64; 10] = [1e-5, 1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4];
/// Ring sizes of the reference libration tables.
pub const TABLE_N: [u64; 3] = [50, 100, 1000];

/// Constant in the cubic approximation's k = 2.4041·mN³/(8Mπ³).
const CUBIC_ALPHA: f64 = 2.4041;
/// The cubic approximation is only meant for m/M below this over N³.
pub const CUBIC_VALIDITY: f64 = 7.840_48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LibrationBranch {
    /// x < 0 on a ring particle's ray.
    Inner,
    /// x > 0 on a ring particle's ray.
    Outer,
    /// On the bisector φ = π/N.
    Noncollinear,
}

impl LibrationBranch {
    /// Sign of x on the collinear branches.
    pub fn sign(self) -> f64 {
        match self {
            Self::Inner => -1.0,
            Self::Outer | Self::Noncollinear => 1.0,
        }
    }

    /// Angle of the branch's ray measured from a ring particle.
    pub fn phi(self, system: &RingSystem) -> f64 {
        match self {
            Self::Noncollinear => PI / system.n_particles() as f64,
            _ => 0.0,
        }
    }
}

impl fmt::Display for LibrationBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Inner => "inner",
            Self::Outer => "outer",
            Self::Noncollinear => "noncollinear",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Full,
    Quintic,
    Cubic,
    Asymptotic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Quintic => "quintic",
            Self::Cubic => "cubic",
            Self::Asymptotic => "asymptotic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LibrationResult {
    pub branch: LibrationBranch,
    pub x_over_r: f64,
    pub method: Method,
    pub converged: bool,
    /// Exact residual acceleration at the reported point.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Points in the geometric bracketing grid per branch.
    pub grid_points: usize,
    /// Smallest |x|/R on the grid.
    pub min_offset: f64,
    pub inner_max: f64,
    pub outer_max: f64,
    /// Convergence is |f| < rel_tol·G(M + Nm)/R².
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points: 400,
            min_offset: 1e-9,
            inner_max: 0.9,
            outer_max: 1.0,
            rel_tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Acceleration scale G(M + Nm)/R² used for the convergence test.
pub fn residual_scale(system: &RingSystem) -> f64 {
    system.grav_constant() * (system.central_mass() + system.total_ring_mass())
        / system.radius().powi(2)
}

fn omega_sq(system: &RingSystem) -> Result<f64> {
    Ok(omega_equilibrium(system)?.omega.powi(2))
}

/// Net inward acceleration −(R+x)Ω² + GM/(R+x)² − F_ring at (R + x, φ) in the
/// rotating frame, all N ring particles included. Zero at a stationary point.
pub fn residual_at(system: &RingSystem, x: f64, phi: f64, w: f64) -> Result<f64> {
    let r = system.radius() + x;
    let ring = ring_force(system, x, phi, true)?;
    Ok(-r * w + system.grav_constant() * system.central_mass() / (r * r) - ring.radial)
}

/// Collinear residual; its zeros are the collinear libration points.
pub fn residual_collinear(system: &RingSystem, x: f64, branch: LibrationBranch) -> Result<f64> {
    match branch {
        LibrationBranch::Noncollinear => {
            return Err(Error::Domain("collinear residual needs a collinear branch".into()))
        }
        b if x != 0.0 && x.signum() != b.sign() => {
            return Err(Error::Domain(format!("x = {x} is not on the {b} branch")))
        }
        _ => {}
    }
    if x == 0.0 {
        return Err(Error::Coincidence { distance: 0.0 });
    }
    residual_at(system, x, 0.0, omega_sq(system)?)
}

/// Same residual with the nearest particle written separately as ±Gm/x².
pub fn residual_collinear_split(system: &RingSystem, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Coincidence { distance: 0.0 });
    }
    let r = system.radius() + x;
    let rest = ring_force(system, x, 0.0, false)?.radial;
    let gm = system.grav_constant() * system.particle_mass();
    let nearest = -gm * x.signum() / (x * x);
    Ok(-r * omega_sq(system)? + system.grav_constant() * system.central_mass() / (r * r)
        - rest
        - nearest)
}

pub fn solve_full(system: &RingSystem, branch: LibrationBranch) -> Result<Option<LibrationResult>> {
    solve_full_with(system, branch, &SolverConfig::default())
}

/// Root of the exact residual on one branch: scan a geometric grid outward
/// from |x| = min_offset·R, take the first sign change and refine it. `None`
/// means the branch has no stationary point in range.
pub fn solve_full_with(
    system: &RingSystem,
    branch: LibrationBranch,
    cfg: &SolverConfig,
) -> Result<Option<LibrationResult>> {
    let w = omega_sq(system)?;
    let r0 = system.radius();
    let phi = branch.phi(system);
    let tol = cfg.rel_tol * residual_scale(system);
    let f = |x: f64| residual_at(system, x, phi, w);

    if branch == LibrationBranch::Noncollinear {
        let f0 = f(0.0)?;
        if f0.abs() < tol {
            return Ok(Some(LibrationResult {
                branch,
                x_over_r: 0.0,
                method: Method::Full,
                converged: true,
                residual: f0,
                iterations: 0,
            }));
        }
        let grid = offsets(cfg, r0, cfg.inner_max.min(cfg.outer_max) * r0);
        // nearest sign change on either side of the bisector
        let (mut prev_in, mut prev_out) = (0.0, 0.0);
        for &d in &grid {
            for (x, prev) in [(-d, &mut prev_in), (d, &mut prev_out)] {
                if (f(x)? > 0.0) != (f0 > 0.0) {
                    return refine(system, branch, &f, *prev, x, tol, cfg);
                }
                *prev = x;
            }
        }
        return Ok(None);
    }

    let s = branch.sign();
    let x_max = match branch {
        LibrationBranch::Inner => cfg.inner_max,
        _ => cfg.outer_max,
    } * r0;
    let grid = offsets(cfg, r0, x_max);
    let mut prev_x = s * grid[0];
    let mut prev_f = f(prev_x)?;
    for &d in &grid[1..] {
        let x = s * d;
        let fx = f(x)?;
        if prev_f == 0.0 || (fx > 0.0) != (prev_f > 0.0) {
            return refine(system, branch, &f, prev_x, x, tol, cfg);
        }
        prev_x = x;
        prev_f = fx;
    }
    Ok(None)
}

fn offsets(cfg: &SolverConfig, r0: f64, x_max: f64) -> Vec<f64> {
    let lo = cfg.min_offset * r0;
    let n = cfg.grid_points.max(2);
    let ratio = (x_max / lo).ln() / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { x_max } else { lo * (ratio * i as f64).exp() })
        .collect()
}

fn refine<F: Fn(f64) -> Result<f64>>(
    system: &RingSystem,
    branch: LibrationBranch,
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    cfg: &SolverConfig,
) -> Result<Option<LibrationResult>> {
    let xtol = 4.0 * f64::EPSILON * a.abs().max(b.abs());
    let out = brent_try(f, a, b, xtol, tol, cfg.max_iter)?;
    Ok(out.map(|o| LibrationResult {
        branch,
        x_over_r: o.root / system.radius(),
        method: Method::Full,
        converged: o.value.abs() < tol,
        residual: o.value,
        iterations: o.iterations,
    }))
}

/// Coefficients (ascending powers of x) of
/// −(R+x)³x²Ω² + GMx² + s·Gm(R+x)² + (Ax + B)(R+x)²x²,
/// the collinear balance with the ring beyond the nearest particle linearised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuinticCoeffs {
    pub c: [f64; 6],
    pub branch: LibrationBranch,
    /// Interval searched for roots.
    pub domain: (f64, f64),
}

impl QuinticCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        poly_eval(&self.c, x)
    }
}

pub fn quintic_coeffs(system: &RingSystem, branch: LibrationBranch) -> Result<QuinticCoeffs> {
    if branch == LibrationBranch::Noncollinear {
        return Err(Error::Domain("quintic form is for collinear branches".into()));
    }
    let w = omega_sq(system)?;
    let CoeffAB { a_coeff: a, b_coeff: b } = coeff_ab(system);
    let r = system.radius();
    let g = system.grav_constant();
    let s = branch.sign();

    let rx = [r, 1.0];
    let rx2 = poly_mul(&rx, &rx);
    let rx3 = poly_mul(&rx2, &rx);
    let x2 = [0.0, 0.0, 1.0];

    let mut p = poly_scale(&poly_mul(&rx3, &x2), -w);
    p = poly_add(&p, &poly_scale(&x2, g * system.central_mass()));
    p = poly_add(&p, &poly_scale(&rx2, s * g * system.particle_mass()));
    p = poly_add(&p, &poly_mul(&poly_mul(&[b, a], &rx2), &x2));

    let mut c = [0.0; 6];
    c.copy_from_slice(&p[..6]);
    Ok(QuinticCoeffs {
        c,
        branch,
        domain: (-r, SolverConfig::default().outer_max * r),
    })
}

/// Real roots of the quintic inside its domain, ascending.
pub fn solve_quintic(coeffs: &QuinticCoeffs) -> Vec<f64> {
    real_roots(&coeffs.c, coeffs.domain.0, coeffs.domain.1)
}

/// Quintic root on the requested branch closest to the ring, with the exact
/// residual evaluated there.
pub fn quintic_root(system: &RingSystem, branch: LibrationBranch) -> Result<Option<LibrationResult>> {
    let q = quintic_coeffs(system, branch)?;
    let s = branch.sign();
    let best = solve_quintic(&q)
        .into_iter()
        .filter(|x| x * s > 0.0)
        .min_by(|a, b| a.abs().total_cmp(&b.abs()));
    let Some(x) = best else { return Ok(None) };
    Ok(Some(LibrationResult {
        branch,
        x_over_r: x / system.radius(),
        method: Method::Quintic,
        converged: true,
        residual: residual_collinear(system, x, branch)?,
        iterations: 0,
    }))
}

/// x³ = s·mR³/(M(3 − k)), k = 2.4041·mN³/(8Mπ³).
///
/// Fails when k ≥ 3 − 1e-3, where the approximation breaks down; logs a
/// warning outside m/M < 7.84048/N³.
pub fn approx_cubic(system: &RingSystem, branch: LibrationBranch) -> Result<LibrationResult> {
    if branch == LibrationBranch::Noncollinear {
        return Err(Error::Domain("cubic approximation is for collinear branches".into()));
    }
    if system.central_mass() <= 0.0 {
        return Err(Error::Domain("cubic approximation needs a central mass".into()));
    }
    let q = system.mass_ratio();
    let n3 = (system.n_particles() as f64).powi(3);
    let k = CUBIC_ALPHA * q * n3 / (8.0 * PI.powi(3));
    if k > 3.0 || (3.0 - k).abs() < 1e-3 {
        return Err(Error::CubicSingular { k });
    }
    if q >= CUBIC_VALIDITY / n3 {
        log::warn!("cubic approximation outside its range: m/M = {q:e} >= 7.84048/N^3");
    }
    let x_over_r = branch.sign() * (q / (3.0 - k)).cbrt();
    Ok(LibrationResult {
        branch,
        x_over_r,
        method: Method::Cubic,
        converged: true,
        residual: residual_collinear(system, x_over_r * system.radius(), branch)?,
        iterations: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticLimit {
    /// Leading root for small m: x = s·(Gm/(A + 3Ω²))^{1/3}.
    SmallMass,
    /// Shift of the zero root for small B: x = −B/(A + 3Ω²).
    SmallB,
}

pub fn asymptotic_roots(
    system: &RingSystem,
    branch: LibrationBranch,
    limit: AsymptoticLimit,
) -> Result<LibrationResult> {
    if branch == LibrationBranch::Noncollinear {
        return Err(Error::Domain("asymptotic roots are for collinear branches".into()));
    }
    let w = omega_sq(system)?;
    let ab = coeff_ab(system);
    let denom = ab.a_coeff + 3.0 * w;
    let gm = system.grav_constant() * system.particle_mass();
    let x = match limit {
        AsymptoticLimit::SmallMass => branch.sign() * (gm / denom).cbrt(),
        AsymptoticLimit::SmallB => -ab.b_coeff / denom,
    };
    let branch = match limit {
        AsymptoticLimit::SmallMass => branch,
        AsymptoticLimit::SmallB if x < 0.0 => LibrationBranch::Inner,
        AsymptoticLimit::SmallB => LibrationBranch::Outer,
    };
    let residual = if x == 0.0 { f64::NAN } else { residual_collinear(system, x, branch)? };
    Ok(LibrationResult {
        branch,
        x_over_r: x / system.radius(),
        method: Method::Asymptotic,
        converged: true,
        residual,
        iterations: 0,
    })
}

/// Distance of the collinear point from the small body in the classical
/// restricted three-body limit: X₀/R = (q/3)^{1/3} with q = m/M.
pub fn three_body_collinear(mass_ratio: f64) -> Result<f64> {
    if !(mass_ratio > 0.0) || !mass_ratio.is_finite() {
        return Err(Error::Domain(format!("mass ratio must be positive, got {mass_ratio}")));
    }
    Ok((mass_ratio / 3.0).cbrt())
}

/// Radial and tangential residuals at φ = π/N, x = 0.
///
/// The tangential one vanishes by symmetry. The radial one is the difference
/// between the ring's pull at the bisector and at a ring member, because Ω is
/// fixed by the latter.
pub fn noncollinear_check(system: &RingSystem) -> Result<ForceSample> {
    let phi = LibrationBranch::Noncollinear.phi(system);
    let w = omega_sq(system)?;
    let ring = ring_force(system, 0.0, phi, true)?;
    Ok(ForceSample {
        radial: residual_at(system, 0.0, phi, w)?,
        tangential: ring.tangential,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub n: u64,
    /// mN/M
    pub ratio: f64,
    pub inner: Option<LibrationResult>,
    pub outer: Option<LibrationResult>,
    /// Classical three-body offset (m/3M)^{1/3}.
    pub x0: f64,
}

/// Inner and outer libration points for every (N, mN/M) pair, in input order
/// (N outer, ratio inner). Rows are solved in parallel.
pub fn sweep_tables(n_set: &[u64], ratio_set: &[f64], cfg: &SolverConfig) -> Result<Vec<TableRow>> {
    let jobs: Vec<(u64, f64)> = n_set
        .iter()
        .flat_map(|&n| ratio_set.iter().map(move |&r| (n, r)))
        .collect();
    jobs.par_iter()
        .map(|&(n, ratio)| {
            let sys = RingSystem::normalized(n, ratio)?;
            Ok(TableRow {
                n,
                ratio,
                inner: solve_full_with(&sys, LibrationBranch::Inner, cfg)?,
                outer: solve_full_with(&sys, LibrationBranch::Outer, cfg)?,
                x0: three_body_collinear(ratio / n as f64)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_system(n: u64, ratio: f64) -> RingSystem {
        RingSystem::normalized(n, ratio).unwrap()
    }

    #[test]
    fn massless_ring_has_no_collinear_points() {
        let s = RingSystem::new(50, 0.0, 1.0, 1.0, 1.0).unwrap();
        assert!(solve_full(&s, LibrationBranch::Inner).unwrap().is_none());
        assert!(solve_full(&s, LibrationBranch::Outer).unwrap().is_none());
        assert!(residual_collinear(&s, 0.01, LibrationBranch::Outer).unwrap() < 0.0);
        assert!(residual_collinear(&s, -0.01, LibrationBranch::Inner).unwrap() > 0.0);
    }

    #[test]
    fn residual_guards() {
        let s = table_system(10, 0.1);
        assert!(matches!(
            residual_collinear(&s, 0.0, LibrationBranch::Inner),
            Err(Error::Coincidence { .. })
        ));
        assert!(matches!(
            residual_collinear(&s, 0.1, LibrationBranch::Inner),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn residual_changes_sign_inside_ring() {
        let s = table_system(50, 1e-3);
        let a = residual_collinear(&s, -0.05, LibrationBranch::Inner).unwrap();
        let b = residual_collinear(&s, -0.005, LibrationBranch::Inner).unwrap();
        assert!(a * b < 0.0);
    }

    #[test]
    fn nearest_term_split_is_equivalent() {
        let s = table_system(40, 0.3);
        for x in [-0.2, -0.01, 0.003, 0.05] {
            let b = if x < 0.0 { LibrationBranch::Inner } else { LibrationBranch::Outer };
            let u = residual_collinear(&s, x, b).unwrap();
            let v = residual_collinear_split(&s, x).unwrap();
            let scale = (s.particle_mass() / (x * x)).max(1.0);
            assert!((u - v).abs() < 1e-12 * scale, "x = {x}: {u} vs {v}");
        }
    }

    #[test]
    fn small_ratio_inner_point() {
        let s = table_system(50, 1e-3);
        let r = solve_full(&s, LibrationBranch::Inner).unwrap().unwrap();
        assert!(r.converged);
        assert!(r.residual.abs() < 1e-12 * residual_scale(&s));
        assert!((r.x_over_r + 0.0185).abs() < 0.005, "{}", r.x_over_r);
        assert!(r.x_over_r < 0.0 && r.x_over_r > -1.0);
    }

    #[test]
    fn classical_limit() {
        let s = RingSystem::new(50, 1e-12, 1.0, 1.0, 1.0).unwrap();
        let x0 = three_body_collinear(1e-12).unwrap();
        for b in [LibrationBranch::Inner, LibrationBranch::Outer] {
            let r = solve_full(&s, b).unwrap().unwrap();
            let q = r.x_over_r.abs() / x0;
            assert!((0.98..=1.02).contains(&q), "{b}: {q}");
        }
    }

    #[test]
    fn three_body_values() {
        assert!((three_body_collinear(3e-6).unwrap() - 0.01).abs() < 1e-15);
        assert!((three_body_collinear(2e-7).unwrap() - 0.0041).abs() < 5e-5);
        assert!((three_body_collinear(200.0).unwrap() - 4.0548).abs() < 5e-5);
        assert!(three_body_collinear(0.0).is_err());
    }

    #[test]
    fn quintic_leading_coefficient_and_expansion() {
        let s = table_system(30, 0.2);
        let q = quintic_coeffs(&s, LibrationBranch::Outer).unwrap();
        let w = omega_sq(&s).unwrap();
        let ab = coeff_ab(&s);
        assert!((q.c[5] - (ab.a_coeff - w)).abs() < 1e-14);
        let gm = s.particle_mass();
        for x in [-0.7_f64, -0.2, 0.01, 0.3, 0.9] {
            let direct = -(1.0 + x).powi(3) * x * x * w
                + x * x
                + gm * (1.0 + x).powi(2)
                + (ab.a_coeff * x + ab.b_coeff) * (1.0 + x).powi(2) * x * x;
            assert!((q.eval(x) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn quintic_without_ring_has_double_zero() {
        let s = RingSystem::new(10, 0.0, 1.0, 1.0, 1.0).unwrap();
        let q = quintic_coeffs(&s, LibrationBranch::Inner).unwrap();
        assert_eq!((q.c[0], q.c[1]), (0.0, 0.0));
        assert!(q.c[2].abs() < 1e-15);
    }

    #[test]
    fn quintic_matches_full_root() {
        let s = table_system(100, 1e-4);
        let full = solve_full(&s, LibrationBranch::Inner).unwrap().unwrap();
        let quin = quintic_root(&s, LibrationBranch::Inner).unwrap().unwrap();
        assert!((quin.x_over_r / full.x_over_r - 1.0).abs() < 0.01);
        let q = quintic_coeffs(&s, LibrationBranch::Inner).unwrap();
        let lead = q.c[5].abs() * full.x_over_r.abs().powi(5)
            + q.c[2].abs() * full.x_over_r.powi(2);
        assert!(q.eval(full.x_over_r).abs() < 1e-3 * lead.max(q.c[0].abs()));
    }

    #[test]
    fn quintic_in_kepler_like_limit() {
        // massless ring coefficients with a point-mass offset term: A = B = 0
        let w = 1.0;
        let m = 1e-9;
        let mut c = poly_scale(&poly_mul(&poly_mul(&[1.0, 1.0], &poly_mul(&[1.0, 1.0], &[1.0, 1.0])), &[0.0, 0.0, 1.0]), -w);
        c = poly_add(&c, &[0.0, 0.0, 1.0]);
        c = poly_add(&c, &poly_scale(&[1.0, 2.0, 1.0], m));
        let q = QuinticCoeffs {
            c: c.try_into().unwrap(),
            branch: LibrationBranch::Outer,
            domain: (-1.0, 1.0),
        };
        let roots = solve_quintic(&q);
        let x = roots.iter().copied().filter(|&x| x > 0.0).fold(f64::INFINITY, f64::min);
        assert!(((x / (m / 3.0).cbrt()) - 1.0).abs() < 1e-2, "{roots:?}");
    }

    #[test]
    fn cubic_approximation() {
        let s = RingSystem::new(10, 1e-15, 1.0, 1.0, 1.0).unwrap();
        let c = approx_cubic(&s, LibrationBranch::Outer).unwrap();
        assert!((c.x_over_r / three_body_collinear(1e-15).unwrap() - 1.0).abs() < 1e-9);

        let s = table_system(100, 1e-4);
        let full = solve_full(&s, LibrationBranch::Inner).unwrap().unwrap();
        let c = approx_cubic(&s, LibrationBranch::Inner).unwrap();
        assert!((c.x_over_r / full.x_over_r - 1.0).abs() < 0.1);

        // k = 2.9999
        let n = 100u64;
        let q = 2.9999 * 8.0 * PI.powi(3) / (CUBIC_ALPHA * (n as f64).powi(3));
        let s = RingSystem::new(n, q, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            approx_cubic(&s, LibrationBranch::Inner),
            Err(Error::CubicSingular { .. })
        ));
    }

    #[test]
    fn asymptotic_estimates() {
        let s = table_system(1000, 1e-5);
        let full = solve_full(&s, LibrationBranch::Inner).unwrap().unwrap();
        let a = asymptotic_roots(&s, LibrationBranch::Inner, AsymptoticLimit::SmallMass).unwrap();
        assert!((a.x_over_r / full.x_over_r - 1.0).abs() < 0.05);

        let s = RingSystem::new(10, 0.0, 1.0, 1.0, 1.0).unwrap();
        let a = asymptotic_roots(&s, LibrationBranch::Outer, AsymptoticLimit::SmallMass).unwrap();
        assert_eq!(a.x_over_r, 0.0);
        let b = asymptotic_roots(&s, LibrationBranch::Outer, AsymptoticLimit::SmallB).unwrap();
        assert_eq!(b.x_over_r, 0.0);
    }

    #[test]
    fn noncollinear_residuals() {
        let s = RingSystem::new(12, 0.0, 1.0, 1.0, 1.0).unwrap();
        let c = noncollinear_check(&s).unwrap();
        assert_eq!((c.radial, c.tangential), (0.0, 0.0));
        for n in [7u64, 8, 50] {
            let s = table_system(n, 0.01);
            let c = noncollinear_check(&s).unwrap();
            assert!(c.tangential.abs() < 1e-12 * residual_scale(&s));
            // pull at the bisector minus pull on a member
            let member = ring_force(&s, 0.0, 0.0, false).unwrap().radial;
            let mid = ring_force(&s, 0.0, PI / n as f64, true).unwrap().radial;
            assert!((c.radial - (member - mid)).abs() < 1e-12);
        }
    }

    #[test]
    fn noncollinear_point_refines_radius() {
        let s = table_system(20, 0.01);
        let r = solve_full(&s, LibrationBranch::Noncollinear).unwrap().unwrap();
        assert!(r.converged);
        assert!(r.x_over_r.abs() < 0.05);
    }

    #[test]
    fn outer_existence_is_monotone_in_mass() {
        let rows = sweep_tables(&[50], &TABLE_RATIOS, &SolverConfig::default()).unwrap();
        let mut absent = false;
        for row in rows {
            if absent {
                assert!(row.outer.is_none(), "outer reappears at {}", row.ratio);
            }
            absent |= row.outer.is_none();
        }
    }

    #[test]
    fn sweep_preserves_input_order() {
        let rows = sweep_tables(&[100, 50], &[1e-3, 1e-5], &SolverConfig::default()).unwrap();
        let keys: Vec<(u64, f64)> = rows.iter().map(|r| (r.n, r.ratio)).collect();
        assert_eq!(keys, vec![(100, 1e-3), (100, 1e-5), (50, 1e-3), (50, 1e-5)]);
    }
}
