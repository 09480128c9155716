use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use ringcc_core::equilibrium::omega_equilibrium;
use ringcc_core::RingSystem;

use super::sink;
use crate::config::RunConfig;
use crate::format::{fmt_float, CsvWriter};
use crate::{CliError, OmegaArgs};

pub const KEYS: &[&str] = &["n", "fraction", "output"];

const DEFAULT_N: [u64; 6] = [10, 100, 1_000, 1_000_000, 1_000_000_000, 1_000_000_000_000];

pub fn run(args: &OmegaArgs, config: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let cfg = RunConfig::load(config, KEYS)?;
    let ns = cfg.pick_counts(&args.n, "n", &DEFAULT_N)?;
    let fractions = cfg.pick_floats(&args.fraction, "fraction", &[0.01])?;
    let jobs: Vec<(u64, f64)> = fractions
        .iter()
        .flat_map(|&f| ns.iter().map(move |&n| (n, f)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(n, f)| {
            let ratio = omega_equilibrium(&RingSystem::normalized(n, f)?)?.ratio;
            Ok(vec![n.to_string(), fmt_float(f), fmt_float(ratio)])
        })
        .collect::<Result<Vec<_>, ringcc_core::Error>>()?;
    let output: Option<PathBuf> = args.output.clone().or(cfg.get("output")?);
    let mut w = CsvWriter::new(sink(output.as_deref(), stdout)?, &["N", "mass_fraction", "omega_ratio"])?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()?;
    Ok(())
}
