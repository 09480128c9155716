use std::io::Write;
use std::path::{Path, PathBuf};

use ringcc_core::dynamics::oscillation_demo;
use ringcc_core::equilibrium::{force_ratio_phi, force_ratio_series};
use ringcc_core::RingSystem;

use super::sink;
use crate::config::RunConfig;
use crate::format::{fmt_float, CsvWriter};
use crate::{CliError, FiguresArgs};

pub const KEYS: &[&str] = &["fig", "n", "ratio", "resistance", "periods", "x_min", "x_max", "points", "output"];

pub fn run(args: &FiguresArgs, config: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let cfg = RunConfig::load(config, KEYS)?;
    let fig = match (args.fig1, args.fig2) {
        (true, _) => 1,
        (_, true) => 2,
        _ => cfg.get::<u8>("fig")?.ok_or_else(|| CliError::Usage("choose --fig1 or --fig2".into()))?,
    };
    let output: Option<PathBuf> = args.output.clone().or(cfg.get("output")?);
    match fig {
        1 => fig1(args, &cfg, output.as_deref(), stdout),
        2 => fig2(args, &cfg, output.as_deref(), stdout),
        f => Err(CliError::Usage(format!("no figure {f}; use 1 or 2"))),
    }
}

/// |F_r/F_t| on a ring member displaced to (R + x, π/4N), x/R on an even grid.
fn fig1(args: &FiguresArgs, cfg: &RunConfig, output: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let n = cfg.pick(args.n, "n", 50u64)?;
    let ratio = cfg.pick(args.ratio, "ratio", 1e-3)?;
    let lo = cfg.pick(None, "x_min", 0.02)?;
    let hi = cfg.pick(None, "x_max", 0.5)?;
    let points = cfg.pick(None, "points", 49usize)?;
    if !(lo < hi) || points < 2 {
        return Err(CliError::Usage("need x_min < x_max and points >= 2".into()));
    }
    let sys = RingSystem::normalized(n, ratio)?;
    let xs: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();
    let series = force_ratio_series(&sys, &xs, force_ratio_phi(&sys))?;
    let mut w = CsvWriter::new(sink(output, stdout)?, &["x_over_R", "force_ratio"])?;
    for (x, r) in series {
        w.row(&[fmt_float(x), fmt_float(r)])?;
    }
    w.finish()?;
    Ok(())
}

/// x/x₀ against t/T with and without resistance.
fn fig2(args: &FiguresArgs, cfg: &RunConfig, output: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let n = cfg.pick(args.n, "n", 20u64)?;
    let ratio = cfg.pick(args.ratio, "ratio", 1e-3)?;
    let k = cfg.pick(args.resistance, "resistance", 0.05)?;
    let periods = cfg.pick(None, "periods", 10.0)?;
    if !(periods > 0.0 && periods <= 1e4) {
        return Err(CliError::Usage("periods must lie in (0, 1e4]".into()));
    }
    let demo = oscillation_demo(&RingSystem::normalized(n, ratio)?, k, periods)?;
    let mut w = CsvWriter::new(sink(output, stdout)?, &["t_over_T", "stationary", "damped"])?;
    for i in 0..demo.t_over_period.len() {
        w.row(&[
            fmt_float(demo.t_over_period[i]),
            fmt_float(demo.stationary[i]),
            fmt_float(demo.damped[i]),
        ])?;
    }
    w.finish()?;
    Ok(())
}
