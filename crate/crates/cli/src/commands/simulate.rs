use std::io::Write;
use std::path::{Path, PathBuf};

use ringcc_core::dynamics::{
    init_central_configuration, integrate, integrate_rotating_test_particle, measure_frequency,
    CentralConfiguration, IntegratorConfig, IntegratorMethod, RotatingModel, Trajectory,
};
use ringcc_core::equilibrium::{epicyclic_omega, equilibrium_angular_momentum};
use ringcc_core::two_ring::{build_two_ring, Arrangement, TwoRingParams};
use ringcc_core::{RingSystem, TestParticleState};

use super::create;
use crate::config::RunConfig;
use crate::format::{fmt_float, CsvWriter};
use crate::{CliError, MethodArg, SimulateArgs};

pub const KEYS: &[&str] = &[
    "rings",
    "n",
    "ratio",
    "outer_ratio",
    "outer_radius",
    "arrangement",
    "method",
    "periods",
    "steps_per_period",
    "record_every",
    "trajectory",
    "diagnostics",
    "frequency",
    "kick",
    "frequency_periods",
];

/// Body column value of the row appended when a run is cut short.
pub const TRUNCATED: &str = "truncated";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencySummary {
    pub measured: f64,
    pub predicted: f64,
    pub std_error: f64,
}

/// Ring member 0 kicked radially by `kick`·R keeping L = ΩR², integrated
/// in the rotating frame; the measured radial frequency against the
/// epicyclic prediction.
pub fn kicked_member_frequency(system: &RingSystem, kick: f64, periods: f64) -> Result<FrequencySummary, CliError> {
    let l = equilibrium_angular_momentum(system)?;
    let predicted = epicyclic_omega(system, l)?;
    let r0 = system.radius();
    let r = r0 + kick * r0;
    let start = TestParticleState {
        x: kick * r0,
        phi: 0.0,
        x_dot: 0.0,
        phi_dot: l / (r * r) - l / (r0 * r0),
    };
    let cfg = IntegratorConfig {
        record_every: 16,
        ..IntegratorConfig::for_period(2.0 * std::f64::consts::PI / predicted, periods)
    };
    let run = integrate_rotating_test_particle(system, start, &cfg, RotatingModel::RingMember)?;
    let est = measure_frequency(&run.times, &run.x_series())?;
    Ok(FrequencySummary {
        measured: est.omega,
        predicted,
        std_error: est.std_error,
    })
}

fn write_trajectory(traj: &Trajectory, path: &Path, truncated_at: Option<f64>) -> Result<(), CliError> {
    let mut w = CsvWriter::new(create(path)?, &["t", "body", "x", "y", "vx", "vy"])?;
    for f in &traj.frames {
        for (i, (p, v)) in f.positions.iter().zip(&f.velocities).enumerate() {
            w.row(&[
                fmt_float(f.time),
                i.to_string(),
                fmt_float(p[0]),
                fmt_float(p[1]),
                fmt_float(v[0]),
                fmt_float(v[1]),
            ])?;
        }
    }
    if let Some(t) = truncated_at {
        w.row(&[fmt_float(t), TRUNCATED.into(), String::new(), String::new(), String::new(), String::new()])?;
    }
    w.finish()?;
    Ok(())
}

fn write_diagnostics(traj: &Trajectory, path: &Path, truncated_at: Option<f64>) -> Result<(), CliError> {
    let mut w = CsvWriter::new(
        create(path)?,
        &["t", "energy", "ang_momentum", "max_radius_deviation"],
    )?;
    for d in &traj.diagnostics {
        w.row(&[
            fmt_float(d.time),
            fmt_float(d.energy),
            fmt_float(d.ang_momentum),
            fmt_float(d.max_radius_deviation),
        ])?;
    }
    if let Some(t) = truncated_at {
        w.row(&[fmt_float(t), TRUNCATED.into(), String::new(), String::new()])?;
    }
    w.finish()?;
    Ok(())
}

pub fn run(args: &SimulateArgs, config: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let cfg = RunConfig::load(config, KEYS)?;
    let rings = cfg.pick(None, "rings", 1u8)?;
    let n = cfg.pick(args.n, "n", 20u64)?;
    let ratio = cfg.pick(args.ratio, "ratio", 1e-3)?;
    let method = match cfg.pick(args.method, "method", MethodArg::Rk4)? {
        MethodArg::Rk4 => IntegratorMethod::Rk4,
        MethodArg::Leapfrog => IntegratorMethod::Leapfrog,
    };
    let periods = cfg.pick(args.periods, "periods", 1.0)?;
    let steps_per_period = cfg.pick(None, "steps_per_period", 4096usize)?;
    let record_every = cfg.pick(None, "record_every", 64usize)?;
    let trajectory: PathBuf = cfg.pick(args.trajectory.clone(), "trajectory", "trajectory.csv".into())?;
    let diagnostics: PathBuf = cfg.pick(args.diagnostics.clone(), "diagnostics", "diagnostics.csv".into())?;
    let want_frequency = cfg.pick_bool(args.frequency, "frequency")?;
    if !(periods > 0.0 && periods <= 1e5) || steps_per_period < 1 || record_every < 1 {
        return Err(CliError::Usage("periods, steps_per_period and record_every must be positive".into()));
    }
    if n < 2 {
        return Err(CliError::Usage("N must be at least 2".into()));
    }

    let single = RingSystem::normalized(n, ratio)?;
    let (state, period) = match rings {
        1 => (init_central_configuration(&single)?, single.period()?),
        2 => {
            let arrangement = match cfg.raw("arrangement").unwrap_or("noncollinear") {
                "collinear" => Arrangement::Collinear,
                "noncollinear" => Arrangement::Noncollinear,
                v => return Err(CliError::Usage(format!("invalid value for 'arrangement': '{v}'"))),
            };
            let outer_ratio = cfg.pick(None, "outer_ratio", ratio)?;
            let s = build_two_ring(TwoRingParams {
                n_per_ring: n,
                inner_mass: ratio / n as f64,
                outer_mass: outer_ratio / n as f64,
                inner_radius: 1.0,
                outer_radius: cfg.pick(None, "outer_radius", 1.5)?,
                central_mass: 1.0,
                arrangement,
                grav_constant: 1.0,
            })?;
            (init_central_configuration(&s)?, s.period()?)
        }
        r => return Err(CliError::Usage(format!("rings must be 1 or 2, got {r}"))),
    };
    let icfg = IntegratorConfig {
        method,
        step: period / steps_per_period as f64,
        duration: period * periods,
        record_every,
    };
    let bodies = state.len();
    let traj = match integrate(&state, &icfg) {
        Ok(t) => t,
        Err(ringcc_core::Error::IntegrationAborted { time, reason, partial }) => {
            write_trajectory(&partial, &trajectory, Some(time))?;
            write_diagnostics(&partial, &diagnostics, Some(time))?;
            return Err(CliError::Numerical(format!("integration aborted at t = {time}: {reason}")));
        }
        Err(e) => return Err(e.into()),
    };
    write_trajectory(&traj, &trajectory, None)?;
    write_diagnostics(&traj, &diagnostics, None)?;

    let (e0, e1) = (traj.diagnostics[0].energy, traj.diagnostics.last().expect("initial frame").energy);
    write!(
        stdout,
        "bodies={bodies} steps={} period={} max_radius_deviation={} energy_drift={}",
        icfg.steps(),
        fmt_float(period),
        fmt_float(traj.max_radius_deviation),
        fmt_float(((e1 - e0) / e0).abs()),
    )?;
    if want_frequency {
        if rings != 1 {
            return Err(CliError::Usage("frequency measurement needs rings = 1".into()));
        }
        let kick = cfg.pick(None, "kick", 1e-4)?;
        let fp = cfg.pick(None, "frequency_periods", 12.0)?;
        let f = kicked_member_frequency(&single, kick, fp)?;
        write!(
            stdout,
            " frequency={} predicted={} rel_error={}",
            fmt_float(f.measured),
            fmt_float(f.predicted),
            fmt_float(f.measured / f.predicted - 1.0)
        )?;
    }
    writeln!(stdout)?;
    Ok(())
}
