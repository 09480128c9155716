use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use ringcc_core::ring_sums::{alpha, alpha_prime, csc3_sum, csc_sum, csc_sum_asymptotic, AsymptoticVariant};

use super::sink;
use crate::config::RunConfig;
use crate::format::{fmt_float, fmt_opt, CsvWriter};
use crate::{CliError, SumsArgs};

pub const KEYS: &[&str] = &["n", "table4", "output"];

/// N column of the coefficient table.
pub const TABLE4_N: [u64; 10] = [10, 20, 50, 100, 200, 1250, 2500, 5000, 10_000, 20_000];

pub const HEADER: [&str; 6] = ["N", "csc_sum", "csc3_sum", "csc_sum_asymptotic", "alpha", "alpha_prime"];

pub fn run(args: &SumsArgs, config: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let cfg = RunConfig::load(config, KEYS)?;
    let mut ns = cfg.pick_counts(&args.n, "n", &[])?;
    if cfg.pick_bool(args.table4, "table4")? {
        ns.extend(TABLE4_N);
    }
    if ns.is_empty() {
        return Err(CliError::Usage("give -N <count> or --table4".into()));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("N must be at least 2, got {n}")));
    }
    let rows: Vec<Vec<String>> = ns
        .par_iter()
        .map(|&n| {
            vec![
                n.to_string(),
                fmt_float(csc_sum(n)),
                fmt_float(csc3_sum(n)),
                fmt_float(csc_sum_asymptotic(n, AsymptoticVariant::Corrected)),
                fmt_float(alpha(n)),
                fmt_opt(alpha_prime(n).ok()),
            ]
        })
        .collect();
    let output: Option<PathBuf> = args.output.clone().or(cfg.get("output")?);
    let mut w = CsvWriter::new(sink(output.as_deref(), stdout)?, &HEADER)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()?;
    Ok(())
}
