//! `broucke`: orbit solver, stability classifier and mass-grid sweep driver.
//!
//! Exit status: 0 on success, 1 when a computation fails or a check is
//! breached, 2 on malformed arguments.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use broucke::orbit::{self, SolveOptions};
use broucke::stability::{self, DEFAULT_DELTA};
use broucke::sweep::{output, Execution, SweepConfig};
use broucke::{verify, Error, MassParams};
use clap::{Args, Parser, Subcommand};

/// Environment variable that replaces the default output directory.
const OUT_ENV: &str = "BROUCKE_OUT_DIR";
const DEFAULT_OUT: &str = "broucke-out";

#[derive(Parser)]
#[command(name = "broucke", version, about = "Periodic isosceles three-body orbit and its linear stability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Solver {
    /// Mass of each equal body, in (0, 1.5).
    #[arg(long, value_parser = parse_m1)]
    m1: f64,
    /// Energy level.
    #[arg(long = "e", default_value_t = MassParams::DEFAULT_ENERGY, allow_negative_numbers = true)]
    energy: f64,
    /// Integrator tolerance.
    #[arg(long, default_value_t = broucke::integrate::DEFAULT_TOL, value_parser = parse_positive)]
    tol: f64,
    /// Largest m1 the solver accepts.
    #[arg(long, default_value_t = orbit::DEFAULT_M1_LIMIT, value_parser = parse_positive)]
    m1_limit: f64,
}

impl Solver {
    fn params(&self) -> Result<MassParams, Error> {
        MassParams::with_energy(self.m1, self.energy)
    }

    fn options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.tol,
            m1_limit: self.m1_limit,
            ..SolveOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the periodic orbit and print its summary as JSON.
    FindOrbit(Solver),
    /// Solve, build the reduced monodromy and print the stability record as JSON.
    Stability {
        #[command(flatten)]
        solver: Solver,
        /// Degeneracy window.
        #[arg(long, default_value_t = DEFAULT_DELTA, value_parser = parse_positive)]
        delta: f64,
    },
    /// Sweep a mass grid and write CSV, plot data and SVG plots.
    Sweep(SweepArgs),
    /// Run every invariant check at one mass; exits 1 on any breach.
    Verify {
        #[command(flatten)]
        solver: Solver,
        #[arg(long, default_value_t = DEFAULT_DELTA, value_parser = parse_positive)]
        delta: f64,
    },
    /// Re-render plot data and SVGs from an existing sweep CSV.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        /// Output directory [env: BROUCKE_OUT_DIR, default: broucke-out/plots].
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.005, value_parser = parse_m1)]
    min: f64,
    #[arg(long, default_value_t = 1.465, value_parser = parse_m1)]
    max: f64,
    #[arg(long, default_value_t = 0.005, value_parser = parse_positive)]
    step: f64,
    /// Output directory [env: BROUCKE_OUT_DIR, default: broucke-out].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    /// Keep rows with status ok from an existing CSV in the output directory.
    #[arg(long)]
    resume: bool,
    #[arg(long = "e", default_value_t = MassParams::DEFAULT_ENERGY, allow_negative_numbers = true)]
    energy: f64,
    #[arg(long, default_value_t = broucke::integrate::DEFAULT_TOL, value_parser = parse_positive)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA, value_parser = parse_positive)]
    delta: f64,
}

fn parse_m1(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v > 0.0 && v < 1.5 {
        Ok(v)
    } else {
        Err(format!("m1 must lie in (0, 1.5), got {v}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {v}"))
    }
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<bool, Error> {
    let dir = out_dir(args.out);
    let execution = match args.workers {
        Some(1) => Execution::Sequential,
        #[cfg(feature = "parallel")]
        n => Execution::Parallel(n.map(usize::from)),
        #[cfg(not(feature = "parallel"))]
        Some(n) => {
            log::warn!("built without the parallel feature; ignoring --workers {n}");
            Execution::Sequential
        }
        #[cfg(not(feature = "parallel"))]
        None => Execution::Sequential,
    };
    let cfg = SweepConfig {
        m1_min: args.min,
        m1_max: args.max,
        step: args.step,
        energy: args.energy,
        tol: args.tol,
        delta: args.delta,
        out_dir: Some(dir.clone()),
        execution,
        resume: args.resume,
    };
    let csv_path = dir.join(output::CSV_NAME);
    let existing = if args.resume && csv_path.exists() {
        output::read_csv(&csv_path)?
    } else {
        Vec::new()
    };
    let rows = broucke::sweep::run_sweep_with(&cfg, &existing)?;
    let written = output::emit_outputs(&rows, &dir)?;
    let failed = rows.iter().filter(|r| !r.is_converged()).count();
    eprintln!(
        "{} grid points, {} failed; wrote {} files under {}",
        rows.len(),
        failed,
        written.len(),
        dir.display()
    );
    Ok(true)
}

fn run_verify(solver: &Solver, delta: f64) -> Result<bool, Error> {
    let v = verify::verify(&solver.params()?, &solver.options(), delta)?;
    println!("m1 = {}  zeta4 = {:.15}  s0 = {:.15}", solver.m1, v.orbit.zeta4, v.orbit.s0);
    for c in &v.checks {
        let tag = if c.ok() { "ok" } else { "BREACH" };
        println!("{:<34} {:>11.3e}  < {:>8.1e}  {tag}", c.name, c.value, c.limit);
    }
    let cl = &v.record.classification;
    println!(
        "e = {:.12}  eig2 = {:.12}  stable_2df = {}  spectral_4df = {}  linear_4df = {}  degenerate = {}",
        cl.e, cl.eig2, cl.stable_2df, cl.spectral_4df, cl.linear_4df, cl.degenerate
    );
    Ok(v.passed())
}

fn run_plot(input: &Path, out: Option<PathBuf>) -> Result<bool, Error> {
    let dir = out.unwrap_or_else(|| out_dir(None).join("plots"));
    let rows = output::read_csv(input)?;
    if rows.is_empty() {
        return Err(Error::InvalidParameter(format!("{} has no rows", input.display())));
    }
    let written = output::write_plots(&rows, &dir)?;
    eprintln!("wrote {} files under {}", written.len(), dir.display());
    Ok(true)
}

fn dispatch(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::FindOrbit(s) => {
            let orb = orbit::find_orbit_with(&s.params()?, None, &s.options())?;
            print_json(&orb.dump())?;
            Ok(true)
        }
        Command::Stability { solver, delta } => {
            let orb = orbit::find_orbit_with(&solver.params()?, None, &solver.options())?;
            let (_, record) = stability::analyze(&orb, delta)?;
            print_json(&record)?;
            Ok(true)
        }
        Command::Sweep(args) => run_sweep(args),
        Command::Verify { solver, delta } => run_verify(&solver, delta),
        Command::Plot { input, out } => run_plot(&input, out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors exit with 2, help and version with 0.
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: at least one check exceeded its limit");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
