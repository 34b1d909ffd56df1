//! Invariant suite for a single mass: every structural, conservation and
//! oracle check with its limit.

use nalgebra::Complex;

use crate::dynamics::{self, MassParams};
use crate::error::Result;
use crate::integrate;
use crate::orbit::{self, OrbitSolution, SolveOptions};
use crate::stability::{self, MonodromyData, StabilityRecord};

/// One residual against its limit.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    fn new(name: &'static str, value: f64, limit: f64) -> Self {
        Self { name, value, limit }
    }

    pub fn ok(&self) -> bool {
        self.value < self.limit
    }
}

pub struct Verification {
    pub orbit: OrbitSolution,
    pub record: StabilityRecord,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

/// Solve the orbit at `params` and run every check on it.
pub fn verify(params: &MassParams, opts: &SolveOptions, delta: f64) -> Result<Verification> {
    let orb = orbit::find_orbit_with(params, None, opts)?;
    let frame = stability::quarter_frame_trajectory(&orb)?;
    let md = MonodromyData::from_quarter_frame(*frame.final_frame());
    let (_, record) = stability::analyze(&orb, delta)?;
    let r = &record.report;
    let y0 = dynamics::initial_frame();

    let collinear = orb.collinear_state().phase();
    let pattern = [1, 2, 3, 4, 5, 6].iter().map(|&i| collinear[i].abs()).fold(0.0, f64::max);

    let direct_full = integrate::flow(&orb.initial_state(), &orb.params, orb.period_s, orb.tol)?;
    let closure = (direct_full.last().phase() - orb.initial_state().phase()).amax();

    let half = integrate::flow_with_frame(&orb.initial_state(), &y0, &orb.params, 2.0 * orb.s0, orb.tol)?;
    let half_err = (half.final_frame() - md.half_period_frame()).amax() / half.final_frame().amax().max(1.0);

    let direct = stability::monodromy_oracle(&orb)?;
    let w2 = stability::spectrum(&md.w_squared());
    let product = w2.iter().fold(Complex::new(1.0, 0.0), |a, z| a * z);
    let on_circle = direct.iter().all(|z| (z.norm() - 1.0).abs() < 1e-5);

    let qd = orb.quarter.diagnostics();
    let fd = frame.base.diagnostics();
    let checks = vec![
        Check::new("shooting residual |P1(s0)|", orb.residual.abs(), 1e-9),
        Check::new("collinear pattern", pattern, 1e-10),
        Check::new("|k11 + 1|", r.k11.abs(), 1e-6),
        Check::new("first column of K", r.first_column, 1e-6),
        Check::new("K sparsity", r.sparsity, 1e-8),
        Check::new("left eigenvector (i)", r.left_eig_i.abs(), 1e-6),
        Check::new("left eigenvector (ii)", r.left_eig_ii.abs(), 1e-6),
        Check::new("left eigenvector (vector form)", r.left_eig_vector, 1e-6),
        Check::new(
            "eig2 by trace vs determinant (rel)",
            r.eig2_routes / record.classification.eig2.abs().max(1.0),
            1e-6,
        ),
        Check::new("central block imaginary part", r.central_imag, 1e-8),
        Check::new("quarter frame pattern", r.frame_pattern, 1e-10),
        Check::new("W symplecticity", r.symplectic, 1e-8),
        Check::new("frame symplecticity", frame.symplectic_defect(&y0), 1e-8),
        Check::new("Gamma drift", qd.gamma_drift.max(fd.gamma_drift), 1e-10),
        Check::new("A2 drift", qd.a2_drift.max(fd.a2_drift), 1e-10),
        Check::new("invariant-set leakage", qd.invariant_leakage.max(fd.invariant_leakage), 1e-9),
        Check::new("full-period closure (direct)", closure, 1e-9),
        Check::new("half-period factorization (rel)", half_err, 1e-7),
        Check::new("oracle vs W^2 spectrum", stability::cluster_distance(&direct, &w2, 1e-3), 1e-5),
        Check::new("|det W^2 - 1|", (product - 1.0).norm(), 1e-6),
        Check::new(
            "unit-circle flag disagreement",
            if on_circle == record.classification.spectral_4df { 0.0 } else { 1.0 },
            0.5,
        ),
    ];
    Ok(Verification {
        orbit: orb,
        record,
        checks,
    })
}
