//! Mass-grid sweep with warm-start continuation.
//!
//! A sequential pre-pass walks the grid outward from `m1 = 0.5`, solving
//! each orbit from its neighbour's `ζ4`. The per-mass work (polish, frame
//! integration, classification) then runs independently for every grid
//! point, on the rayon pool when the `parallel` feature is enabled.

pub mod output;
pub mod svg;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use crate::dynamics::MassParams;
use crate::error::{Error, Result};
use crate::integrate::DEFAULT_TOL;
use crate::orbit::{self, SolveOptions, DEFAULT_M1_LIMIT, MAX_ITERATIONS};
use crate::stability::{self, DEFAULT_DELTA};

pub use output::{Status, SweepRow};

/// Continuation starts from the grid point closest to this mass.
pub const CONTINUATION_SEED: f64 = 0.5;

/// How per-mass work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon pool with the given number of threads (`None` for rayon's default).
    #[cfg(feature = "parallel")]
    Parallel(Option<usize>),
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel(None)
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub m1_min: f64,
    pub m1_max: f64,
    pub step: f64,
    pub energy: f64,
    pub tol: f64,
    pub delta: f64,
    pub out_dir: Option<PathBuf>,
    pub execution: Execution,
    pub resume: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            m1_min: 0.005,
            m1_max: 1.465,
            step: 0.005,
            energy: MassParams::DEFAULT_ENERGY,
            tol: DEFAULT_TOL,
            delta: DEFAULT_DELTA,
            out_dir: None,
            execution: Execution::default(),
            resume: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.m1_min > 0.0
            && self.m1_min <= self.m1_max
            && self.m1_max < 1.5
            && self.step > 0.0
            && self.tol > 0.0
            && self.delta > 0.0
            && self.energy.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "sweep needs 0 < min <= max < 1.5 and positive step, tol and delta (got min {}, max {}, step {}, tol {}, delta {})",
                self.m1_min, self.m1_max, self.step, self.tol, self.delta
            )))
        }
    }

    /// Grid masses `m1_min + k·step` up to `m1_max`, rounded to 12 decimals
    /// so that accumulated binary error never shows in the output.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.m1_max - self.m1_min) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| round12(self.m1_min + k as f64 * self.step))
            .collect()
    }

    fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.tol,
            max_iterations: MAX_ITERATIONS,
            m1_limit: DEFAULT_M1_LIMIT.max(self.m1_max),
        }
    }
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Warm-start guesses along the grid: outward from the seed mass in both
/// directions, each solve started from the previous converged `ζ4` (linearly
/// extrapolated once two are known). `known` supplies already-converged
/// values that are reused without solving.
pub fn continuation_guesses(grid: &[f64], cfg: &SweepConfig, known: &[Option<f64>]) -> Vec<Option<f64>> {
    let mut out = vec![None; grid.len()];
    if grid.is_empty() {
        return out;
    }
    let seed = grid
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - CONTINUATION_SEED).abs().total_cmp(&(b.1 - CONTINUATION_SEED).abs()))
        .map(|(i, _)| i)
        .unwrap();
    let opts = cfg.solve_options();
    let up: Vec<usize> = (seed..grid.len()).collect();
    let down: Vec<usize> = (0..=seed).rev().collect();
    for order in [up, down] {
        let mut history: Vec<(f64, f64)> = Vec::new();
        for i in order {
            let m1 = grid[i];
            let guess = match history.as_slice() {
                [.., (ma, za), (mb, zb)] => Some(zb + (zb - za) * (m1 - mb) / (mb - ma)),
                [.., (_, z)] => Some(*z),
                [] => None,
            };
            let solved = match known.get(i).copied().flatten().or(out[i]) {
                Some(z) => Some(z),
                None => MassParams::with_energy(m1, cfg.energy)
                    .and_then(|p| orbit::find_orbit_with(&p, guess.filter(|g| *g > 0.0), &opts))
                    .map(|o| o.zeta4)
                    .map_err(|e| log::debug!("continuation at m1 = {m1} failed: {e}"))
                    .ok(),
            };
            match solved {
                Some(z) => {
                    out[i] = Some(z);
                    history.push((m1, z));
                }
                // Keep the last good guess and move on.
                None => out[i] = guess,
            }
        }
    }
    out
}

/// Solve, integrate and classify one grid point. Never panics outward.
pub fn analyze_point(m1: f64, guess: Option<f64>, cfg: &SweepConfig) -> SweepRow {
    let opts = cfg.solve_options();
    let work = || -> Result<stability::StabilityRecord> {
        let params = MassParams::with_energy(m1, cfg.energy)?;
        let orb = orbit::find_orbit_with(&params, guess, &opts)?;
        let (_, record) = stability::analyze(&orb, cfg.delta)?;
        Ok(record)
    };
    match panic::catch_unwind(AssertUnwindSafe(work)) {
        Ok(Ok(record)) => SweepRow::from_record(&record),
        Ok(Err(e)) => SweepRow::failed(m1, e.to_string()),
        Err(_) => SweepRow::failed(m1, "panic during analysis".into()),
    }
}

/// One row per grid mass, ordered by `m1`. With `resume`, rows already
/// present with status `ok` in `existing` are kept verbatim.
pub fn run_sweep_with(cfg: &SweepConfig, existing: &[SweepRow]) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let kept: Vec<Option<&SweepRow>> = grid
        .iter()
        .map(|&m| {
            if !cfg.resume {
                return None;
            }
            existing
                .iter()
                .find(|r| (r.m1 - m).abs() < 1e-9 && r.status == Status::Ok)
        })
        .collect();
    let known: Vec<Option<f64>> = kept.iter().map(|r| r.map(|r| r.zeta4)).collect();
    let guesses = continuation_guesses(&grid, cfg, &known);

    let todo: Vec<(usize, f64, Option<f64>)> = grid
        .iter()
        .enumerate()
        .filter(|(i, _)| kept[*i].is_none())
        .map(|(i, &m)| (i, m, guesses[i]))
        .collect();
    log::info!("sweep: {} grid points, {} to compute", grid.len(), todo.len());

    let computed = execute(&todo, cfg)?;
    let mut rows: Vec<Option<SweepRow>> = kept.into_iter().map(|r| r.cloned()).collect();
    for (i, row) in computed {
        rows[i] = Some(row);
    }
    Ok(rows.into_iter().map(|r| r.expect("every grid point produces a row")).collect())
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    run_sweep_with(cfg, &[])
}

fn execute(todo: &[(usize, f64, Option<f64>)], cfg: &SweepConfig) -> Result<Vec<(usize, SweepRow)>> {
    let one = |&(i, m, g): &(usize, f64, Option<f64>)| (i, analyze_point(m, g, cfg));
    match cfg.execution {
        Execution::Sequential => Ok(todo.iter().map(one).collect()),
        #[cfg(feature = "parallel")]
        Execution::Parallel(threads) => {
            use rayon::prelude::*;
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(n) = threads {
                builder = builder.num_threads(n);
            }
            let pool = builder
                .build()
                .map_err(|e| Error::InvalidParameter(format!("cannot build worker pool: {e}")))?;
            // `collect` on an indexed parallel iterator keeps input order.
            Ok(pool.install(|| todo.par_iter().map(one).collect()))
        }
    }
}
