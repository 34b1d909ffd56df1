//! Coordinate chain Cartesian `(q, p)` ↔ relative `(u, v)` ↔ regularized `(Q, P)`.
//!
//! The production flow never leaves `(Q, P)`; the other charts exist so the
//! reduced Hamiltonians and angular momenta can be cross-checked level by
//! level.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, MassParams, Phase, RegState};
use crate::error::{Error, Result};

type Complex64 = Complex<f64>;

/// Planar positions and momenta of the three bodies; bodies 1 and 2 carry
/// `m1`, body 3 (`q5, q6`) carries `m2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianState {
    pub q: [f64; 6],
    pub p: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeState {
    pub u: [f64; 4],
    pub v: [f64; 4],
}

/// Square-root branch of the Levi-Civita map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// `Q1 > 0`, or `Q1 = 0` and `Q2 ≥ 0`.
    #[default]
    Principal,
    /// The negated principal root.
    Negated,
}

impl CartesianState {
    /// Center-of-mass position and total momentum, both zero for valid states.
    pub fn com_residual(&self, params: &MassParams) -> f64 {
        let (m1, m2) = (params.m1(), params.m2());
        let q = &self.q;
        let p = &self.p;
        [
            m1 * (q[0] + q[2]) + m2 * q[4],
            m1 * (q[1] + q[3]) + m2 * q[5],
            p[0] + p[2] + p[4],
            p[1] + p[3] + p[5],
        ]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

pub fn cart_to_rel(c: &CartesianState) -> RelativeState {
    let (q, p) = (&c.q, &c.p);
    RelativeState {
        u: [q[0] - q[2], q[1] - q[3], q[0] + q[2], q[1] + q[3]],
        v: [
            0.5 * (p[0] - p[2]),
            0.5 * (p[1] - p[3]),
            0.5 * (p[0] + p[2]),
            0.5 * (p[1] + p[3]),
        ],
    }
}

pub fn rel_to_cart(r: &RelativeState, params: &MassParams) -> CartesianState {
    let (u, v) = (&r.u, &r.v);
    let ratio = params.m1() / params.m2();
    let q1 = 0.5 * (u[0] + u[2]);
    let q2 = 0.5 * (u[1] + u[3]);
    let q3 = 0.5 * (u[2] - u[0]);
    let q4 = 0.5 * (u[3] - u[1]);
    let p1 = v[0] + v[2];
    let p2 = v[1] + v[3];
    let p3 = v[2] - v[0];
    let p4 = v[3] - v[1];
    CartesianState {
        q: [q1, q2, q3, q4, -ratio * (q1 + q3), -ratio * (q2 + q4)],
        p: [p1, p2, p3, p4, -(p1 + p3), -(p2 + p4)],
    }
}

/// Fails at `Q1 = Q2 = 0`, where the relative momenta are undefined.
pub fn reg_to_rel(state: &RegState) -> Result<RelativeState> {
    let [q1, q2, q3, q4] = state.q;
    let [p1, p2, p3, p4] = state.p;
    let rho = q1 * q1 + q2 * q2;
    if rho == 0.0 {
        return Err(Error::CollisionChart);
    }
    Ok(RelativeState {
        u: [q1 * q1 - q2 * q2, 2.0 * q1 * q2, q3, q4],
        v: [
            (q1 * p1 - q2 * p2) / (2.0 * rho),
            (q2 * p1 + q1 * p2) / (2.0 * rho),
            p3,
            p4,
        ],
    })
}

pub fn rel_to_reg(r: &RelativeState, branch: Branch) -> RegState {
    let root = Complex64::new(r.u[0], r.u[1]).sqrt();
    let (mut q1, mut q2) = (root.re, root.im);
    // `sqrt` already returns Re ≥ 0; fix the Re = 0 edge (u on the negative
    // real axis with a signed zero) so that Q2 ≥ 0.
    if q1 == 0.0 {
        q2 = q2.abs();
    }
    if branch == Branch::Negated {
        q1 = -q1;
        q2 = -q2;
    }
    let [v1, v2, v3, v4] = r.v;
    RegState::new(
        [q1, q2, r.u[2], r.u[3]],
        [2.0 * (v1 * q1 + v2 * q2), 2.0 * (v2 * q1 - v1 * q2), v3, v4],
    )
}

fn singular(which: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Singular { which, radicand: value })
    }
}

/// Hamiltonian in Cartesian coordinates with the center of mass removed.
pub fn h0(c: &CartesianState, params: &MassParams) -> Result<f64> {
    let (m1, m2) = (params.m1(), params.m2());
    let (q, p) = (&c.q, &c.p);
    let kinetic = 0.5
        * ((p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]) / m1
            + ((p[0] + p[2]).powi(2) + (p[1] + p[3]).powi(2)) / m2);
    let r = m1 / m2;
    let d12 = (q[0] - q[2]).powi(2) + (q[1] - q[3]).powi(2);
    let d13 = (q[0] + r * (q[0] + q[2])).powi(2) + (q[1] + r * (q[1] + q[3])).powi(2);
    let d23 = (q[2] + r * (q[0] + q[2])).powi(2) + (q[3] + r * (q[1] + q[3])).powi(2);
    singular("m1-m1", d12)?;
    singular("plus", d13)?;
    singular("minus", d23)?;
    let potential = m1 * m1 / d12.sqrt() + m1 * m2 / d13.sqrt() + m1 * m2 / d23.sqrt();
    Ok(kinetic - potential)
}

pub fn h1(r: &RelativeState, params: &MassParams) -> Result<f64> {
    let (m1, m2, mu) = (params.m1(), params.m2(), params.mu());
    let (u, v) = (&r.u, &r.v);
    let kinetic = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]) / m1
        + 2.0 / m2 * (v[2] * v[2] + v[3] * v[3]);
    let d12 = u[0] * u[0] + u[1] * u[1];
    let dp = (0.5 * u[0] + mu * u[2]).powi(2) + (0.5 * u[1] + mu * u[3]).powi(2);
    let dm = (mu * u[2] - 0.5 * u[0]).powi(2) + (mu * u[3] - 0.5 * u[1]).powi(2);
    singular("m1-m1", d12)?;
    singular("plus", dp)?;
    singular("minus", dm)?;
    Ok(kinetic - m1 * m1 / d12.sqrt() - m1 * m2 / dp.sqrt() - m1 * m2 / dm.sqrt())
}

/// Unregularized Hamiltonian in `(Q, P)`. Relates to Γ by `Γ = ρ (H2 - E)`.
pub fn h2(z: &Phase, params: &MassParams) -> Result<f64> {
    let (m1, m2, mu) = (params.m1(), params.m2(), params.mu());
    let (q1, q2, q3, q4) = (z[0], z[1], z[2], z[3]);
    let rho = q1 * q1 + q2 * q2;
    singular("m1-m1", rho)?;
    let bq = (q1 * q1 - q2 * q2) * q3 + 2.0 * q1 * q2 * q4;
    let base = 0.25 * rho * rho + mu * mu * (q3 * q3 + q4 * q4);
    singular("plus", base + mu * bq)?;
    singular("minus", base - mu * bq)?;
    let kinetic = (z[4] * z[4] + z[5] * z[5]) / (4.0 * m1 * rho)
        + (z[6] * z[6] + z[7] * z[7]) * params.kappa();
    let potential = m1 * m1 / rho
        + m1 * m2 / (base + mu * bq).sqrt()
        + m1 * m2 / (base - mu * bq).sqrt();
    Ok(kinetic - potential)
}

pub fn a0(c: &CartesianState) -> f64 {
    let (q, p) = (&c.q, &c.p);
    q[0] * p[1] - q[1] * p[0] + q[2] * p[3] - q[3] * p[2] + q[4] * p[5] - q[5] * p[4]
}

pub fn a1(r: &RelativeState, params: &MassParams) -> f64 {
    let (u, v) = (&r.u, &r.v);
    u[0] * v[1] - u[1] * v[0] + 2.0 * params.mu() * (u[2] * v[3] - u[3] * v[2])
}

pub fn a2(z: &Phase, params: &MassParams) -> f64 {
    dynamics::angular_momentum(z, params)
}
