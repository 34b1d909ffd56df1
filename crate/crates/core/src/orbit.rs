//! One-parameter shooting for the periodic orbit inside the isosceles set.

use serde::{Deserialize, Serialize};

use crate::dynamics::{MassParams, Phase, RegState};
use crate::error::{Error, Result};
use crate::integrate::{self, Direction, Trajectory, DEFAULT_TOL};
use crate::roots::brent;

/// Upper bound on the fictitious time searched for the first section.
pub const S_MAX: f64 = 50.0;
/// Convergence threshold on `|P1|` at the section.
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100;
/// Largest mass the solver accepts by default.
pub const DEFAULT_M1_LIMIT: f64 = 1.465;

const SCAN_START: f64 = 0.05;
const SCAN_RATIO: f64 = 1.25;
const SCAN_MAX: f64 = 20.0;
const SCAN_MIN: f64 = 1e-4;
const SECTION_JUMP: f64 = 2.0;

/// Collision state `(0, 0, 0, ζ4, 2 m1^{3/2}, 0, 0, 0)` at `s = t = 0`.
pub fn initial_state(params: &MassParams, zeta4: f64) -> RegState {
    RegState::new([0.0, 0.0, 0.0, zeta4], [2.0 * params.m1_three_halves(), 0.0, 0.0, 0.0])
}

/// Outcome of a single shot.
#[derive(Debug, Clone)]
pub struct Shot {
    pub residual: f64,
    pub s0: f64,
    pub crossing: RegState,
    pub quarter: Trajectory,
}

/// Integrate from the collision state to the first decreasing `Q4 = 0`
/// crossing. The residual is `P1` there.
pub fn shoot(params: &MassParams, zeta4: f64, tol: f64) -> Result<Shot> {
    if !(zeta4 > 0.0) || !zeta4.is_finite() {
        return Err(Error::InvalidParameter(format!("zeta4 must be positive, got {zeta4}")));
    }
    let start = initial_state(params, zeta4);
    let (traj, s0, crossing) =
        integrate::flow_to_section(&start, params, S_MAX, tol, |z: &Phase| z[3], Direction::Decreasing)?;
    // Re-integrate exactly to the crossing so the stored quarter ends at s0.
    let quarter = integrate::flow(&start, params, s0, tol)?;
    debug_assert!(traj.len() >= 2);
    Ok(Shot {
        residual: crossing.p[0],
        s0,
        crossing,
        quarter,
    })
}

/// `(P1 at the section, s0)`.
pub fn shoot_residual(params: &MassParams, zeta4: f64) -> Result<(f64, f64)> {
    let shot = shoot_section_only(params, zeta4, DEFAULT_TOL)?;
    Ok(shot)
}

fn shoot_section_only(params: &MassParams, zeta4: f64, tol: f64) -> Result<(f64, f64)> {
    if !(zeta4 > 0.0) || !zeta4.is_finite() {
        return Err(Error::InvalidParameter(format!("zeta4 must be positive, got {zeta4}")));
    }
    let start = initial_state(params, zeta4);
    let (_, s0, crossing) =
        integrate::flow_to_section(&start, params, S_MAX, tol, |z: &Phase| z[3], Direction::Decreasing)?;
    Ok((crossing.p[0], s0))
}

/// A converged periodic orbit described by its first quarter.
#[derive(Debug, Clone)]
pub struct OrbitSolution {
    pub params: MassParams,
    pub zeta4: f64,
    pub s0: f64,
    pub period_s: f64,
    pub quarter: Trajectory,
    pub zeta1: f64,
    pub zeta8: f64,
    pub t_period: f64,
    pub residual: f64,
    pub iterations: usize,
    pub tol: f64,
}

impl OrbitSolution {
    pub fn initial_state(&self) -> RegState {
        initial_state(&self.params, self.zeta4)
    }

    /// State at `s0` on the stored quarter.
    pub fn collinear_state(&self) -> RegState {
        self.quarter.last()
    }

    pub fn dump(&self) -> OrbitDump {
        let d = self.quarter.diagnostics();
        OrbitDump {
            m1: self.params.m1(),
            energy: self.params.energy(),
            zeta4: self.zeta4,
            s0: self.s0,
            period_s: self.period_s,
            t_period: self.t_period,
            zeta1: self.zeta1,
            zeta8: self.zeta8,
            residual: self.residual,
            gamma_drift: d.gamma_drift,
            a_drift: d.a2_drift,
        }
    }
}

/// Serialized orbit summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDump {
    pub m1: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub zeta4: f64,
    pub s0: f64,
    #[serde(rename = "T")]
    pub period_s: f64,
    pub t_period: f64,
    pub zeta1: f64,
    pub zeta8: f64,
    pub residual: f64,
    pub gamma_drift: f64,
    pub a_drift: f64,
}

/// Search settings for [`find_orbit_with`].
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iterations: usize,
    /// Requests with `m1` above this are refused before any integration.
    pub m1_limit: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iterations: MAX_ITERATIONS,
            m1_limit: DEFAULT_M1_LIMIT,
        }
    }
}

/// Find the orbit with default settings. Without a guess, `ζ4` is
/// bracketed by a geometric scan; with one, a safeguarded secant polishes it.
pub fn find_orbit(params: &MassParams, guess: Option<f64>) -> Result<OrbitSolution> {
    find_orbit_with(params, guess, &SolveOptions::default())
}

pub fn find_orbit_with(params: &MassParams, guess: Option<f64>, opts: &SolveOptions) -> Result<OrbitSolution> {
    if params.m1() > opts.m1_limit + 1e-12 {
        return Err(Error::OutOfDomain {
            m1: params.m1(),
            limit: opts.m1_limit,
        });
    }
    let mut evals = 0usize;
    let mut shot = |z: f64| -> Result<(f64, f64)> {
        evals += 1;
        shoot_section_only(params, z, opts.tol)
    };

    let root = match guess {
        Some(g) => match secant(&mut |z| shot(z).map(|r| r.0), g, opts.max_iterations) {
            Ok(z) => Some(z),
            Err(e) => {
                log::debug!("secant from {g} failed at m1 = {}: {e}", params.m1());
                None
            }
        },
        None => None,
    };
    let zeta4 = match root {
        Some(z) => z,
        None => {
            let (a, b, fa, fb) = scan_bracket(&mut shot, params.m1(), guess)?;
            let xtol = 1e-15 * a.abs().max(b.abs());
            let mut inner = 0usize;
            let (z, fz) = brent(
                |x| {
                    inner += 1;
                    shot(x).map(|r| r.0)
                },
                a,
                b,
                fa,
                fb,
                xtol,
                opts.max_iterations,
            )?;
            if fz.abs() > RESIDUAL_TOL {
                return Err(Error::NoConvergence {
                    m1: params.m1(),
                    iterations: inner,
                    residual: fz,
                });
            }
            z
        }
    };
    finish(params, zeta4, evals, opts.tol)
}

fn finish(params: &MassParams, zeta4: f64, iterations: usize, tol: f64) -> Result<OrbitSolution> {
    let shot = shoot(params, zeta4, tol)?;
    if shot.residual.abs() > RESIDUAL_TOL {
        return Err(Error::NoConvergence {
            m1: params.m1(),
            iterations,
            residual: shot.residual,
        });
    }
    let end = shot.quarter.last();
    Ok(OrbitSolution {
        params: *params,
        zeta4,
        s0: shot.s0,
        period_s: 4.0 * shot.s0,
        zeta1: end.q[0],
        zeta8: end.p[3],
        t_period: 4.0 * end.t,
        residual: shot.residual,
        iterations,
        tol,
        quarter: shot.quarter,
    })
}

/// Secant iteration with step halving whenever the residual does not shrink
/// or a shot fails.
fn secant<F>(f: &mut F, x0: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x = x0;
    let mut fx = f(x)?;
    if fx.abs() <= RESIDUAL_TOL {
        return Ok(x);
    }
    let mut xp = x * (1.0 + 1e-6);
    let mut fp = f(xp)?;
    for _ in 0..max_iter {
        if fx.abs() <= RESIDUAL_TOL {
            return Ok(x);
        }
        let slope = (fx - fp) / (x - xp);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let mut step = -fx / slope;
        let cap = 0.2 * x.abs();
        if step.abs() > cap {
            step = cap.copysign(step);
        }
        let mut accepted = None;
        for _ in 0..20 {
            let xn = x + step;
            if xn > 0.0 {
                if let Ok(fnew) = f(xn) {
                    if fnew.abs() < fx.abs() {
                        accepted = Some((xn, fnew));
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        let Some((xn, fnew)) = accepted else { break };
        xp = x;
        fp = fx;
        x = xn;
        fx = fnew;
    }
    if fx.abs() <= RESIDUAL_TOL {
        Ok(x)
    } else {
        Err(Error::NoConvergence {
            m1: f64::NAN,
            iterations: max_iter,
            residual: fx,
        })
    }
}

/// Geometric scan `ζ4 = 0.05·1.25^k` upward, then downward, for a sign
/// change of the residual. Starts near `hint` when one is given. A sign
/// change only counts when the section time varies continuously across it;
/// otherwise the two shots met different crossings.
fn scan_bracket<F>(f: &mut F, m1: f64, hint: Option<f64>) -> Result<(f64, f64, f64, f64)>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let start = hint.unwrap_or(SCAN_START);
    let bracketed = |(fa, sa): (f64, f64), (fb, sb): (f64, f64)| {
        fa.signum() != fb.signum() && sa.max(sb) < SECTION_JUMP * sa.min(sb)
    };
    for ratio in [SCAN_RATIO, 1.0 / SCAN_RATIO] {
        let mut last: Option<(f64, (f64, f64))> = None;
        let mut z = start;
        while (SCAN_MIN..=SCAN_MAX).contains(&z) {
            match f(z) {
                Ok(shot) => {
                    if let Some((zp, prev)) = last {
                        if bracketed(prev, shot) {
                            let (lo, hi, flo, fhi) =
                                if zp < z { (zp, z, prev.0, shot.0) } else { (z, zp, shot.0, prev.0) };
                            return Ok((lo, hi, flo, fhi));
                        }
                    }
                    last = Some((z, shot));
                }
                Err(_) => last = None,
            }
            z *= ratio;
        }
    }
    Err(Error::NoBracket {
        m1,
        detail: format!("no sign change of P1 for zeta4 in [{SCAN_MIN}, {SCAN_MAX}]"),
    })
}

/// Full period `[0, 4 s0]` by the two reflections of the quarter.
pub fn extend_full_period(orb: &OrbitSolution) -> Trajectory {
    orb.quarter.reflect_quarter()
}
