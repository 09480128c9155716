use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use ringcc_core::libration::{
    solve_full_with, three_body_collinear, LibrationBranch, LibrationResult, SolverConfig, TABLE_N,
    TABLE_RATIOS,
};
use ringcc_core::RingSystem;

use super::sink;
use crate::config::RunConfig;
use crate::format::{fmt_float, fmt_opt, CsvWriter};
use crate::{BranchArg, CliError, LibrationArgs};

pub const KEYS: &[&str] = &[
    "n", "ratio", "branch", "table2", "table3", "output", "grid_points", "min_offset", "rel_tol", "max_iter",
];

pub const HEADER: [&str; 8] = [
    "N", "mN_over_M", "x_inner", "x_outer", "x0_three_body", "method", "residual", "status",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub n: u64,
    pub ratio: f64,
    pub inner: Option<LibrationResult>,
    pub outer: Option<LibrationResult>,
    pub x0: Option<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A requested branch has no stationary point.
    Absent,
    Unconverged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Absent => "absent",
            Status::Unconverged => "unconverged",
        }
    }
}

fn solve_row(n: u64, ratio: f64, branch: BranchArg, solver: &SolverConfig) -> Result<Row, CliError> {
    let sys = RingSystem::normalized(n, ratio)?;
    let want_inner = branch != BranchArg::Outer;
    let want_outer = branch != BranchArg::Inner;
    let inner = if want_inner { solve_full_with(&sys, LibrationBranch::Inner, solver)? } else { None };
    let outer = if want_outer { solve_full_with(&sys, LibrationBranch::Outer, solver)? } else { None };
    let requested = [(want_inner, inner), (want_outer, outer)];
    let status = if requested.iter().any(|(w, r)| *w && r.is_none()) {
        Status::Absent
    } else if requested.iter().any(|(_, r)| r.is_some_and(|r| !r.converged)) {
        Status::Unconverged
    } else {
        Status::Ok
    };
    Ok(Row {
        n,
        ratio,
        inner,
        outer,
        x0: three_body_collinear(ratio / n as f64).ok(),
        status,
    })
}

/// Rows in input order (N outer, ratio inner), solved in parallel.
pub fn compute(ns: &[u64], ratios: &[f64], branch: BranchArg, solver: &SolverConfig) -> Result<Vec<Row>, CliError> {
    let jobs: Vec<(u64, f64)> = ns
        .iter()
        .flat_map(|&n| ratios.iter().map(move |&r| (n, r)))
        .collect();
    jobs.par_iter().map(|&(n, r)| solve_row(n, r, branch, solver)).collect()
}

fn fields(row: &Row) -> Vec<String> {
    let residual = [row.inner, row.outer]
        .iter()
        .flatten()
        .map(|r| r.residual.abs())
        .reduce(f64::max);
    vec![
        row.n.to_string(),
        fmt_float(row.ratio),
        fmt_opt(row.inner.map(|r| r.x_over_r)),
        fmt_opt(row.outer.map(|r| r.x_over_r)),
        fmt_opt(row.x0),
        "full".into(),
        fmt_opt(residual),
        row.status.as_str().into(),
    ]
}

pub fn run(args: &LibrationArgs, config: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let cfg = RunConfig::load(config, KEYS)?;
    let table2 = cfg.pick_bool(args.table2, "table2")?;
    let table3 = cfg.pick_bool(args.table3, "table3")?;
    if table2 && table3 {
        return Err(CliError::Usage("--table2 and --table3 are exclusive".into()));
    }
    let defaults = SolverConfig::default();
    let solver = SolverConfig {
        grid_points: cfg.pick(None, "grid_points", defaults.grid_points)?,
        min_offset: cfg.pick(None, "min_offset", defaults.min_offset)?,
        rel_tol: cfg.pick(None, "rel_tol", defaults.rel_tol)?,
        max_iter: cfg.pick(None, "max_iter", defaults.max_iter)?,
        ..defaults
    };
    if solver.grid_points < 2 || !(solver.min_offset > 0.0 && solver.min_offset < solver.inner_max) || !(solver.rel_tol > 0.0) {
        return Err(CliError::Usage("solver settings out of range".into()));
    }
    let (ns, ratios, branch) = if table2 || table3 {
        let b = if table2 { BranchArg::Inner } else { BranchArg::Outer };
        (TABLE_N.to_vec(), TABLE_RATIOS.to_vec(), b)
    } else {
        (
            cfg.pick_counts(&args.n, "n", &TABLE_N)?,
            cfg.pick_floats(&args.ratio, "ratio", &TABLE_RATIOS)?,
            cfg.pick(args.branch, "branch", BranchArg::Both)?,
        )
    };
    if ns.iter().any(|&n| n < 2) {
        return Err(CliError::Usage("N must be at least 2".into()));
    }
    let rows = compute(&ns, &ratios, branch, &solver)?;

    let output: Option<PathBuf> = args.output.clone().or(cfg.get("output")?);
    let mut w = CsvWriter::new(sink(output.as_deref(), stdout)?, &HEADER)?;
    for r in &rows {
        w.row(&fields(r))?;
    }
    w.finish()?;

    let single = rows.len() == 1 && branch != BranchArg::Both && !(table2 || table3);
    if single && rows[0].status != Status::Ok {
        return Err(CliError::Numerical(format!(
            "no converged {branch:?} libration point for N = {}, mN/M = {}",
            rows[0].n, rows[0].ratio
        )));
    }
    Ok(())
}
