//! Propagation of the regularized flow and of its variational frame.
//!
//! The base flow is integrated as a 9-dimensional system: the phase point
//! plus physical time `t`, with `dt/ds = Q1² + Q2²`. The frame `Y(s)` is
//! co-integrated with the state as a 73-dimensional system so that `D²Γ` is
//! always evaluated on the concurrent orbit point.

pub mod dop853;

use serde::{Deserialize, Serialize};

use crate::dynamics::{self, field_and_jacobian, MassParams, Mat8, Phase, RegState};
use crate::error::{Error, Result};
use crate::roots::brent;
use dop853::{DenseStep, OdeSystem, Options};

/// Default relative and absolute tolerance of the integrator.
pub const DEFAULT_TOL: f64 = 1e-12;

pub(crate) const BASE_DIM: usize = 9;
pub(crate) const FRAME_DIM: usize = 9 + 64;

struct RegularizedFlow<'a> {
    params: &'a MassParams,
}

impl OdeSystem<BASE_DIM> for RegularizedFlow<'_> {
    fn rhs(&self, _s: f64, y: &[f64; BASE_DIM], dy: &mut [f64; BASE_DIM]) -> Result<()> {
        let z = Phase::from_column_slice(&y[..8]);
        let f = dynamics::vector_field(&z, self.params)?;
        dy[..8].copy_from_slice(f.as_slice());
        dy[8] = y[0] * y[0] + y[1] * y[1];
        Ok(())
    }
}

struct FrameFlow<'a> {
    params: &'a MassParams,
}

impl OdeSystem<FRAME_DIM> for FrameFlow<'_> {
    fn rhs(&self, _s: f64, y: &[f64; FRAME_DIM], dy: &mut [f64; FRAME_DIM]) -> Result<()> {
        let z = Phase::from_column_slice(&y[..8]);
        let (f, jh) = field_and_jacobian(&z, self.params)?;
        dy[..8].copy_from_slice(f.as_slice());
        dy[8] = y[0] * y[0] + y[1] * y[1];
        let frame = Mat8::from_column_slice(&y[9..]);
        let d = jh * frame;
        dy[9..].copy_from_slice(d.as_slice());
        Ok(())
    }
}

fn pack(state: &RegState) -> [f64; BASE_DIM] {
    let mut y = [0.0; BASE_DIM];
    y[..4].copy_from_slice(&state.q);
    y[4..8].copy_from_slice(&state.p);
    y[8] = state.t;
    y
}

fn unpack(y: &[f64], s: f64) -> RegState {
    RegState {
        q: [y[0], y[1], y[2], y[3]],
        p: [y[4], y[5], y[6], y[7]],
        s,
        t: y[8],
    }
}

/// Crossing direction of a section functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `g` goes from positive to non-positive.
    Decreasing,
    /// `g` goes from negative to non-negative.
    Increasing,
}

impl Direction {
    fn crossed(self, before: f64, after: f64) -> bool {
        match self {
            Direction::Decreasing => before > 0.0 && after <= 0.0,
            Direction::Increasing => before < 0.0 && after >= 0.0,
        }
    }
}

/// Conservation diagnostics collected over the stored samples.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `max |Γ(z_k) - Γ(z_0)|`.
    pub gamma_drift: f64,
    /// `max |A(z_k) - A(z_0)|`.
    pub a2_drift: f64,
    /// `max` over samples of `max(|Q2|, |Q3|, |P2|, |P3|)`.
    pub invariant_leakage: f64,
    pub accepted: usize,
    pub rejected: usize,
}

/// How a stored dense step maps onto the trajectory's own parametrization:
/// the step is evaluated at `offset - s` (reflected) or `s - offset`, the
/// phase is multiplied componentwise by `signs` and time becomes
/// `t_offset + t_sign * t`.
#[derive(Debug, Clone, PartialEq)]
struct SegmentMap {
    reflect: bool,
    offset: f64,
    signs: [f64; 8],
    t_sign: f64,
    t_offset: f64,
}

impl SegmentMap {
    const IDENTITY: SegmentMap = SegmentMap {
        reflect: false,
        offset: 0.0,
        signs: [1.0; 8],
        t_sign: 1.0,
        t_offset: 0.0,
    };

    fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `s ↦ R(self(pivot - s))` where `R` multiplies the phase by `signs`
    /// and maps `t ↦ t_pivot - t`.
    fn reflect_about(&self, pivot: f64, signs: &[f64; 8], t_pivot: f64) -> SegmentMap {
        SegmentMap {
            reflect: !self.reflect,
            offset: pivot - self.offset,
            signs: std::array::from_fn(|i| signs[i] * self.signs[i]),
            t_sign: -self.t_sign,
            t_offset: t_pivot - self.t_offset,
        }
    }
}

#[derive(Debug, Clone)]
struct Segment {
    lo: f64,
    hi: f64,
    step: DenseStep<BASE_DIM>,
    map: SegmentMap,
}

impl Segment {
    fn new(step: DenseStep<BASE_DIM>) -> Self {
        let (a, b) = (step.s_start, step.s_end());
        Self {
            lo: a.min(b),
            hi: a.max(b),
            step,
            map: SegmentMap::IDENTITY,
        }
    }

    fn reflected(&self, pivot: f64, signs: &[f64; 8], t_pivot: f64) -> Self {
        Self {
            lo: pivot - self.hi,
            hi: pivot - self.lo,
            step: self.step.clone(),
            map: self.map.reflect_about(pivot, signs, t_pivot),
        }
    }

    fn eval(&self, s: f64) -> [f64; BASE_DIM] {
        let m = &self.map;
        let u = if m.reflect { m.offset - s } else { s - m.offset };
        let y = self.step.eval(u);
        let mut out = [0.0; BASE_DIM];
        for i in 0..8 {
            out[i] = m.signs[i] * y[i];
        }
        out[8] = m.t_offset + m.t_sign * y[8];
        out
    }
}

/// Samples of the regularized flow with a continuous extension.
#[derive(Debug, Clone)]
pub struct Trajectory {
    params: MassParams,
    tol: f64,
    s: Vec<f64>,
    y: Vec<[f64; BASE_DIM]>,
    segments: Vec<Segment>,
    diagnostics: Diagnostics,
}

impl Trajectory {
    fn from_solution(params: MassParams, tol: f64, sol: dop853::Solution<BASE_DIM>) -> Self {
        let segments = sol.dense.into_iter().map(Segment::new).collect();
        let mut traj = Self {
            params,
            tol,
            s: sol.s,
            y: sol.y,
            segments,
            diagnostics: Diagnostics {
                accepted: sol.accepted,
                rejected: sol.rejected,
                ..Default::default()
            },
        };
        traj.refresh_diagnostics();
        traj
    }

    fn refresh_diagnostics(&mut self) {
        let z0 = Phase::from_column_slice(&self.y[0][..8]);
        let g0 = dynamics::gamma(&z0, &self.params).unwrap_or(f64::NAN);
        let a0 = dynamics::angular_momentum(&z0, &self.params);
        let (mut dg, mut da, mut leak) = (0.0f64, 0.0f64, 0.0f64);
        for y in &self.y {
            let z = Phase::from_column_slice(&y[..8]);
            let g = dynamics::gamma(&z, &self.params).unwrap_or(f64::NAN);
            dg = dg.max((g - g0).abs());
            da = da.max((dynamics::angular_momentum(&z, &self.params) - a0).abs());
            leak = leak.max(dynamics::invariant_set_leakage(&z));
        }
        self.diagnostics.gamma_drift = dg;
        self.diagnostics.a2_drift = da;
        self.diagnostics.invariant_leakage = leak;
    }

    pub fn params(&self) -> &MassParams {
        &self.params
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn sample(&self, k: usize) -> RegState {
        unpack(&self.y[k], self.s[k])
    }

    pub fn samples(&self) -> impl Iterator<Item = RegState> + '_ {
        (0..self.len()).map(|k| self.sample(k))
    }

    pub fn first(&self) -> RegState {
        self.sample(0)
    }

    pub fn last(&self) -> RegState {
        self.sample(self.len() - 1)
    }

    pub fn s_range(&self) -> (f64, f64) {
        let (a, b) = (self.s[0], *self.s.last().unwrap());
        (a.min(b), a.max(b))
    }

    /// State on the continuous extension at fictitious time `s`.
    pub fn interpolate(&self, s: f64) -> Result<RegState> {
        let (lo, hi) = self.s_range();
        let slack = 1e-12 * (1.0 + hi.abs());
        if s < lo - slack || s > hi + slack || self.segments.is_empty() {
            if self.segments.is_empty() && self.len() == 1 && (s - self.s[0]).abs() <= slack {
                return Ok(self.sample(0));
            }
            return Err(Error::InvalidParameter(format!(
                "s = {s} outside trajectory range [{lo}, {hi}]"
            )));
        }
        let ascending = self.s[0] <= *self.s.last().unwrap();
        let idx = if ascending {
            self.segments.partition_point(|seg| seg.hi < s)
        } else {
            self.segments.partition_point(|seg| seg.lo > s)
        };
        let seg = &self.segments[idx.min(self.segments.len() - 1)];
        Ok(unpack(&seg.eval(s), s))
    }

    /// Extend a trajectory over `[0, s0]` to `[0, 4 s0]` using
    /// `γ(s) = -S γ(2 s0 - s)` on `[s0, 2 s0]` and `γ(s) = S γ(4 s0 - s)` on
    /// `[2 s0, 4 s0]`. Requires increasing `s` starting at 0.
    pub fn reflect_quarter(&self) -> Trajectory {
        let s0 = *self.s.last().unwrap();
        let t0 = self.y.last().unwrap()[8];
        let sd = dynamics::symmetry_diagonal();
        let minus_s: [f64; 8] = std::array::from_fn(|i| -sd[i]);

        let mut s = self.s.clone();
        let mut y = self.y.clone();
        let mut segments = self.segments.clone();

        let reflect = |yy: &[f64; BASE_DIM], signs: &[f64; 8], t_pivot: f64| {
            let mut out = [0.0; BASE_DIM];
            for i in 0..8 {
                out[i] = signs[i] * yy[i];
            }
            out[8] = t_pivot - yy[8];
            out
        };

        for (pivot, signs, t_pivot) in [(2.0 * s0, minus_s, 2.0 * t0), (4.0 * s0, sd, 4.0 * t0)] {
            let n = s.len();
            for k in (0..n - 1).rev() {
                s.push(pivot - s[k]);
                let yk = y[k];
                y.push(reflect(&yk, &signs, t_pivot));
            }
            let m = segments.len();
            for k in (0..m).rev() {
                let seg = segments[k].reflected(pivot, &signs, t_pivot);
                segments.push(seg);
            }
        }
        let mut traj = Trajectory {
            params: self.params,
            tol: self.tol,
            s,
            y,
            segments,
            diagnostics: Diagnostics {
                accepted: self.diagnostics.accepted,
                rejected: self.diagnostics.rejected,
                ..Default::default()
            },
        };
        traj.refresh_diagnostics();
        traj
    }
}

/// Frame `Y(s)` transported alongside the base trajectory.
#[derive(Debug, Clone)]
pub struct FrameTrajectory {
    pub base: Trajectory,
    pub frames: Vec<(f64, Mat8)>,
}

impl FrameTrajectory {
    pub fn final_frame(&self) -> &Mat8 {
        &self.frames.last().unwrap().1
    }

    /// `max_s ‖(Y Y0⁻¹)ᵀ J (Y Y0⁻¹) - J‖∞`.
    pub fn symplectic_defect(&self, y0: &Mat8) -> f64 {
        let j = dynamics::symplectic_form();
        let y0_inv = y0.try_inverse().expect("initial frame must be invertible");
        self.frames
            .iter()
            .map(|(_, y)| {
                let x = y * y0_inv;
                (x.transpose() * j * x - j).amax()
            })
            .fold(0.0, f64::max)
    }
}

fn options(tol: f64, dense: bool) -> Result<Options> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    Ok(Options {
        dense,
        ..Options::with_tol(tol)
    })
}

/// Integrate the regularized flow from `start` (at `start.s`) to `s_end`.
pub fn flow(start: &RegState, params: &MassParams, s_end: f64, tol: f64) -> Result<Trajectory> {
    let sys = RegularizedFlow { params };
    let sol = dop853::integrate(&sys, start.s, pack(start), s_end, &options(tol, true)?, |_, _| false)?;
    Ok(Trajectory::from_solution(*params, tol, sol))
}

/// Integrate until the first crossing of `g = 0` in `direction` (at most up
/// to `s_max`) and refine the crossing.
pub fn flow_to_section<G>(
    start: &RegState,
    params: &MassParams,
    s_max: f64,
    tol: f64,
    g: G,
    direction: Direction,
) -> Result<(Trajectory, f64, RegState)>
where
    G: Fn(&Phase) -> f64,
{
    let sys = RegularizedFlow { params };
    let eval = |y: &[f64; BASE_DIM]| g(&Phase::from_column_slice(&y[..8]));
    let sol = dop853::integrate(&sys, start.s, pack(start), s_max, &options(tol, true)?, |a, b| {
        direction.crossed(eval(a), eval(b))
    })?;
    if !sol.stopped {
        return Err(Error::NoCrossing);
    }
    let traj = Trajectory::from_solution(*params, tol, sol);
    let (s_star, state) = find_section(&traj, g, direction)?;
    Ok((traj, s_star, state))
}

/// First crossing of `g = 0` in `direction` along `traj`, refined by
/// Brent iteration on fresh single steps from the preceding mesh point (or
/// on the continuous extension for reflected pieces).
pub fn find_section<G>(traj: &Trajectory, g: G, direction: Direction) -> Result<(f64, RegState)>
where
    G: Fn(&Phase) -> f64,
{
    let eval = |y: &[f64]| g(&Phase::from_column_slice(&y[..8]));
    let k = (0..traj.len().saturating_sub(1))
        .find(|&k| direction.crossed(eval(&traj.y[k]), eval(&traj.y[k + 1])))
        .ok_or(Error::NoCrossing)?;
    let (sa, sb) = (traj.s[k], traj.s[k + 1]);
    let (ga, gb) = (eval(&traj.y[k]), eval(&traj.y[k + 1]));
    let xtol = 4.0 * f64::EPSILON * (sa.abs().max(sb.abs()) + 1.0);

    let seg = traj
        .segments
        .iter()
        .find(|seg| seg.lo <= sa.min(sb) + xtol && seg.hi >= sa.max(sb) - xtol);
    let direct = seg.map_or(true, |s| s.map.is_identity());
    let params = traj.params;
    let sys = RegularizedFlow { params: &params };
    let ya = traj.y[k];
    let state_at = |s: f64| -> Result<[f64; BASE_DIM]> {
        if direct {
            if s == sa {
                return Ok(ya);
            }
            dop853::single_step(&sys, sa, &ya, s - sa)
        } else {
            Ok(seg.unwrap().eval(s))
        }
    };
    let (s_star, _) = brent(|s| state_at(s).map(|y| eval(&y)), sa, sb, ga, gb, xtol, 200)?;
    let y = state_at(s_star)?;
    Ok((s_star, unpack(&y, s_star)))
}

/// Co-integrate the base flow and the frame with `Y(start.s) = y0`.
pub fn flow_with_frame(
    start: &RegState,
    y0: &Mat8,
    params: &MassParams,
    s_end: f64,
    tol: f64,
) -> Result<FrameTrajectory> {
    if y0.determinant().abs() < 1e-300 {
        return Err(Error::InvalidParameter("initial frame is singular".into()));
    }
    let sys = FrameFlow { params };
    let mut init = [0.0; FRAME_DIM];
    init[..BASE_DIM].copy_from_slice(&pack(start));
    init[BASE_DIM..].copy_from_slice(y0.as_slice());
    let sol = dop853::integrate(&sys, start.s, init, s_end, &options(tol, true)?, |_, _| false)?;
    let frames = sol
        .s
        .iter()
        .zip(&sol.y)
        .map(|(&s, y)| (s, Mat8::from_column_slice(&y[BASE_DIM..])))
        .collect();
    let base = dop853::Solution {
        s: sol.s.clone(),
        y: sol.y.iter().map(|y| std::array::from_fn(|i| y[i])).collect(),
        dense: sol.dense.iter().map(|d| d.truncate::<BASE_DIM>()).collect(),
        accepted: sol.accepted,
        rejected: sol.rejected,
        stopped: sol.stopped,
    };
    Ok(FrameTrajectory {
        base: Trajectory::from_solution(*params, tol, base),
        frames,
    })
}
