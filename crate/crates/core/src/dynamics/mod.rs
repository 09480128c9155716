//! Direct integration: the full planar N+1 / 2N+1 problem in the inertial
//! frame, and the rotating-frame test-particle model with the ring frozen.

mod frequency;
mod rotating;

pub use frequency::{measure_frequency, oscillation_demo, DemoSeries, FrequencyEstimate};
pub use rotating::{
    frozen_ring_discrepancy, integrate_prescribed_ring, integrate_rotating_test_particle,
    rotating_to_inertial, RotatingModel, RotatingTrajectory,
};

use rayon::prelude::*;

use crate::equilibrium::omega_equilibrium;
use crate::error::{Error, Result};
use crate::ring_model::{ring_positions, RingSystem, MIN_SEPARATION};
use crate::summation::Neumaier;
use crate::two_ring::{stationarity_residual, OmegaFit, RingId, TwoRingSystem};

/// Bodies at or above this count get their accelerations in parallel.
const PARALLEL_BODIES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub time: f64,
    pub positions: Vec<[f64; 2]>,
    pub velocities: Vec<[f64; 2]>,
    pub masses: Vec<f64>,
    /// Ring radius each body started on; `None` for bodies off any ring.
    pub nominal_radius: Vec<Option<f64>>,
    pub grav_constant: f64,
}

impl SimState {
    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.masses.len();
        if self.positions.len() != n || self.velocities.len() != n || self.nominal_radius.len() != n {
            return Err(Error::InvalidSystem("state arrays differ in length".into()));
        }
        let finite = self
            .positions
            .iter()
            .chain(&self.velocities)
            .all(|p| p[0].is_finite() && p[1].is_finite());
        if !finite || self.masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidSystem("non-finite or negative state entries".into()));
        }
        Ok(())
    }

    pub fn total_momentum(&self) -> [f64; 2] {
        let mut px = Neumaier::new();
        let mut py = Neumaier::new();
        for (v, m) in self.velocities.iter().zip(&self.masses) {
            px.add(m * v[0]);
            py.add(m * v[1]);
        }
        [px.value(), py.value()]
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let g = self.grav_constant;
        let mut e = Neumaier::new();
        let mut l = Neumaier::new();
        for i in 0..self.len() {
            let (p, v, m) = (self.positions[i], self.velocities[i], self.masses[i]);
            e.add(0.5 * m * (v[0] * v[0] + v[1] * v[1]));
            l.add(m * (p[0] * v[1] - p[1] * v[0]));
            for j in (i + 1)..self.len() {
                let q = self.positions[j];
                let d = (p[0] - q[0]).hypot(p[1] - q[1]);
                e.add(-g * m * self.masses[j] / d);
            }
        }
        let max_dev = self
            .positions
            .iter()
            .zip(&self.nominal_radius)
            .filter_map(|(p, r)| r.map(|r| (p[0].hypot(p[1]) - r).abs() / r))
            .fold(0.0, f64::max);
        Diagnostics {
            time: self.time,
            energy: e.value(),
            ang_momentum: l.value(),
            max_radius_deviation: max_dev,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegratorMethod {
    Rk4,
    /// Kick-drift-kick.
    Leapfrog,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub method: IntegratorMethod,
    pub step: f64,
    pub duration: f64,
    /// Record a frame every this many steps (the final step is always kept).
    pub record_every: usize,
}

impl IntegratorConfig {
    /// RK4 at T/4096 for `periods` periods of length `period`.
    pub fn for_period(period: f64, periods: f64) -> Self {
        Self {
            method: IntegratorMethod::Rk4,
            step: period / 4096.0,
            duration: period * periods,
            record_every: 64,
        }
    }

    pub fn steps(&self) -> usize {
        (self.duration / self.step).round() as usize
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.duration >= self.step && self.record_every > 0) {
            return Err(Error::InvalidSystem(format!("bad integrator settings: {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub time: f64,
    pub energy: f64,
    pub ang_momentum: f64,
    /// max over ring bodies of |‖r‖ − R|/R.
    pub max_radius_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub time: f64,
    pub positions: Vec<[f64; 2]>,
    pub velocities: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub frames: Vec<Frame>,
    pub diagnostics: Vec<Diagnostics>,
    /// Largest radius deviation over every step, not only recorded ones.
    pub max_radius_deviation: f64,
}

impl Trajectory {
    fn record(&mut self, s: &SimState) {
        self.frames.push(Frame {
            time: s.time,
            positions: s.positions.clone(),
            velocities: s.velocities.clone(),
        });
        self.diagnostics.push(s.diagnostics());
    }
}

/// Something that can be laid out as a rigidly rotating central configuration.
pub trait CentralConfiguration {
    fn initial_state(&self) -> Result<SimState>;
    /// Period 2π/Ω of the rigid rotation.
    fn period(&self) -> Result<f64>;
}

impl CentralConfiguration for RingSystem {
    fn initial_state(&self) -> Result<SimState> {
        let omega = omega_equilibrium(self)?.omega;
        let mut st = SimState {
            time: 0.0,
            positions: Vec::new(),
            velocities: Vec::new(),
            masses: Vec::new(),
            nominal_radius: Vec::new(),
            grav_constant: self.grav_constant(),
        };
        if self.central_mass() > 0.0 {
            push_body(&mut st, [0.0, 0.0], [0.0, 0.0], self.central_mass(), None);
        }
        for p in ring_positions(self) {
            push_body(&mut st, p, [-omega * p[1], omega * p[0]], self.particle_mass(), Some(self.radius()));
        }
        Ok(st)
    }

    fn period(&self) -> Result<f64> {
        Ok(2.0 * std::f64::consts::PI / omega_equilibrium(self)?.omega)
    }
}

impl CentralConfiguration for TwoRingSystem {
    /// Both rings turn at the common rate of the default [`OmegaFit`].
    fn initial_state(&self) -> Result<SimState> {
        let omega = stationarity_residual(self, OmegaFit::default())?.omega_sq.sqrt();
        let p = self.params();
        let mut st = SimState {
            time: 0.0,
            positions: Vec::new(),
            velocities: Vec::new(),
            masses: Vec::new(),
            nominal_radius: Vec::new(),
            grav_constant: p.grav_constant,
        };
        if p.central_mass > 0.0 {
            push_body(&mut st, [0.0, 0.0], [0.0, 0.0], p.central_mass, None);
        }
        for which in [RingId::Inner, RingId::Outer] {
            for q in self.ring_positions(which) {
                push_body(&mut st, q, [-omega * q[1], omega * q[0]], self.particle_mass(which), Some(self.radius(which)));
            }
        }
        Ok(st)
    }

    fn period(&self) -> Result<f64> {
        let w = stationarity_residual(self, OmegaFit::default())?.omega_sq;
        Ok(2.0 * std::f64::consts::PI / w.sqrt())
    }
}

fn push_body(st: &mut SimState, p: [f64; 2], v: [f64; 2], m: f64, r: Option<f64>) {
    st.positions.push(p);
    st.velocities.push(v);
    st.masses.push(m);
    st.nominal_radius.push(r);
}

/// Bodies on their polygon(s) with tangential velocity Ω·R, centre at rest.
pub fn init_central_configuration<C: CentralConfiguration + ?Sized>(system: &C) -> Result<SimState> {
    system.initial_state()
}

fn length_scale(st: &SimState) -> f64 {
    st.positions
        .iter()
        .map(|p| p[0].hypot(p[1]))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE)
}

fn accel_on(i: usize, pos: &[[f64; 2]], masses: &[f64], g: f64, min_d: f64) -> std::result::Result<[f64; 2], f64> {
    let mut ax = Neumaier::new();
    let mut ay = Neumaier::new();
    let p = pos[i];
    for (j, q) in pos.iter().enumerate() {
        if j == i || masses[j] == 0.0 {
            continue;
        }
        let dx = q[0] - p[0];
        let dy = q[1] - p[1];
        let d2 = dx * dx + dy * dy;
        let d = d2.sqrt();
        if !(d >= min_d) {
            return Err(d);
        }
        let k = g * masses[j] / (d2 * d);
        ax.add(k * dx);
        ay.add(k * dy);
    }
    Ok([ax.value(), ay.value()])
}

/// Pairwise Newtonian accelerations. Each body's sum runs in body order, so
/// the result does not depend on how bodies are spread over threads.
fn accelerations(pos: &[[f64; 2]], masses: &[f64], g: f64, min_d: f64) -> std::result::Result<Vec<[f64; 2]>, f64> {
    if pos.len() >= PARALLEL_BODIES {
        (0..pos.len())
            .into_par_iter()
            .map(|i| accel_on(i, pos, masses, g, min_d))
            .collect()
    } else {
        (0..pos.len()).map(|i| accel_on(i, pos, masses, g, min_d)).collect()
    }
}

fn axpy(base: &[[f64; 2]], k: &[[f64; 2]], h: f64) -> Vec<[f64; 2]> {
    base.iter()
        .zip(k)
        .map(|(b, d)| [b[0] + h * d[0], b[1] + h * d[1]])
        .collect()
}

fn rk4_step(st: &mut SimState, h: f64, min_d: f64) -> std::result::Result<(), f64> {
    let g = st.grav_constant;
    let (x0, v0) = (st.positions.clone(), st.velocities.clone());
    let a1 = accelerations(&x0, &st.masses, g, min_d)?;
    let x2 = axpy(&x0, &v0, 0.5 * h);
    let v2 = axpy(&v0, &a1, 0.5 * h);
    let a2 = accelerations(&x2, &st.masses, g, min_d)?;
    let x3 = axpy(&x0, &v2, 0.5 * h);
    let v3 = axpy(&v0, &a2, 0.5 * h);
    let a3 = accelerations(&x3, &st.masses, g, min_d)?;
    let x4 = axpy(&x0, &v3, h);
    let v4 = axpy(&v0, &a3, h);
    let a4 = accelerations(&x4, &st.masses, g, min_d)?;
    for i in 0..st.len() {
        for c in 0..2 {
            st.positions[i][c] = x0[i][c] + h / 6.0 * (v0[i][c] + 2.0 * v2[i][c] + 2.0 * v3[i][c] + v4[i][c]);
            st.velocities[i][c] = v0[i][c] + h / 6.0 * (a1[i][c] + 2.0 * a2[i][c] + 2.0 * a3[i][c] + a4[i][c]);
        }
    }
    Ok(())
}

fn leapfrog_step(st: &mut SimState, h: f64, min_d: f64, acc: &mut Vec<[f64; 2]>) -> std::result::Result<(), f64> {
    let g = st.grav_constant;
    for i in 0..st.len() {
        for c in 0..2 {
            st.velocities[i][c] += 0.5 * h * acc[i][c];
            st.positions[i][c] += h * st.velocities[i][c];
        }
    }
    *acc = accelerations(&st.positions, &st.masses, g, min_d)?;
    for i in 0..st.len() {
        for c in 0..2 {
            st.velocities[i][c] += 0.5 * h * acc[i][c];
        }
    }
    Ok(())
}

/// Fixed-step integration of pairwise gravity. Aborts, returning the
/// trajectory so far, on a close encounter or non-finite state.
pub fn integrate(state: &SimState, config: &IntegratorConfig) -> Result<Trajectory> {
    state.validate()?;
    config.validate()?;
    let mut st = state.clone();
    let min_d = MIN_SEPARATION * length_scale(&st);
    let steps = config.steps();
    let mut traj = Trajectory {
        frames: Vec::new(),
        diagnostics: Vec::new(),
        max_radius_deviation: 0.0,
    };
    traj.record(&st);
    let mut acc = match config.method {
        IntegratorMethod::Leapfrog => accelerations(&st.positions, &st.masses, st.grav_constant, min_d)
            .map_err(|d| abort(&st, &traj, format!("bodies within {d:e}")))?,
        IntegratorMethod::Rk4 => Vec::new(),
    };
    for k in 1..=steps {
        let res = match config.method {
            IntegratorMethod::Rk4 => rk4_step(&mut st, config.step, min_d),
            IntegratorMethod::Leapfrog => leapfrog_step(&mut st, config.step, min_d, &mut acc),
        };
        if let Err(d) = res {
            return Err(abort(&st, &traj, format!("bodies within {d:e}")));
        }
        st.time = state.time + k as f64 * config.step;
        if st.positions.iter().chain(&st.velocities).any(|p| !(p[0].is_finite() && p[1].is_finite())) {
            return Err(abort(&st, &traj, "non-finite state".into()));
        }
        let dev = st
            .positions
            .iter()
            .zip(&st.nominal_radius)
            .filter_map(|(p, r)| r.map(|r| (p[0].hypot(p[1]) - r).abs() / r))
            .fold(0.0, f64::max);
        traj.max_radius_deviation = traj.max_radius_deviation.max(dev);
        if k % config.record_every == 0 || k == steps {
            traj.record(&st);
        }
    }
    Ok(traj)
}

fn abort(st: &SimState, traj: &Trajectory, reason: String) -> Error {
    Error::IntegrationAborted {
        time: st.time,
        reason,
        partial: Box::new(traj.clone()),
    }
}

impl Trajectory {
    pub fn final_frame(&self) -> &Frame {
        self.frames.last().expect("trajectory always holds the initial frame")
    }

    /// Largest angular-spacing error between consecutive ring bodies of one
    /// ring (given by index range) in the final frame, radians.
    pub fn spacing_error(&self, ring: std::ops::Range<usize>) -> f64 {
        let f = self.final_frame();
        let n = ring.len();
        let expect = 2.0 * std::f64::consts::PI / n as f64;
        let angles: Vec<f64> = ring.map(|i| f.positions[i][1].atan2(f.positions[i][0])).collect();
        (0..n)
            .map(|k| {
                let d = (angles[(k + 1) % n] - angles[k]).rem_euclid(2.0 * std::f64::consts::PI);
                (d - expect).abs()
            })
            .fold(0.0, f64::max)
    }
}
