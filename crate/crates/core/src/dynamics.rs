//! Regularized phase space of the isosceles three-body problem.
//!
//! Phase points are ordered `z = (Q1, Q2, Q3, Q4, P1, P2, P3, P4)`. The two
//! equal masses `m1` sit at the Levi-Civita coordinates `(Q1, Q2)`, the
//! third mass `m2 = 3 - 2 m1` is eliminated through the center of mass.
//! The regularized Hamiltonian
//!
//! ```text
//! Γ = (P1² + P2²)/(4 m1) + κ (P3² + P4²) ρ
//!     - m1 m2 ρ (A₊^{-1/2} + A₋^{-1/2}) - m1² - E ρ
//! ```
//!
//! with `ρ = Q1² + Q2²`, `κ = 1/m1 + 2/m2` and
//! `A± = ρ²/4 ± μ𝐐 + μ²(Q3² + Q4²)`, `𝐐 = (Q1² - Q2²) Q3 + 2 Q1 Q2 Q4`,
//! generates the flow `z' = J ∇Γ(z)` in fictitious time `s`, `dt/ds = ρ`.

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Phase = SVector<f64, 8>;
pub type Mat8 = SMatrix<f64, 8, 8>;
pub type Mat4 = SMatrix<f64, 4, 4>;

/// Radicands below this value are reported as a singular configuration.
pub const SINGULAR_RADICAND: f64 = 1e-30;

/// Mass parameter of the family. Only `m1` is stored; `m2` and `μ` follow
/// from the normalization `2 m1 + m2 = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassParams {
    m1: f64,
    energy: f64,
}

impl MassParams {
    pub const DEFAULT_ENERGY: f64 = -1.0;

    pub fn new(m1: f64) -> Result<Self> {
        Self::with_energy(m1, Self::DEFAULT_ENERGY)
    }

    pub fn with_energy(m1: f64, energy: f64) -> Result<Self> {
        if !(m1 > 0.0 && m1 < 1.5) {
            return Err(Error::InvalidParameter(format!(
                "m1 must lie in (0, 1.5), got {m1}"
            )));
        }
        if !energy.is_finite() {
            return Err(Error::InvalidParameter(format!("energy must be finite, got {energy}")));
        }
        Ok(Self { m1, energy })
    }

    #[inline]
    pub fn m1(&self) -> f64 {
        self.m1
    }

    #[inline]
    pub fn m2(&self) -> f64 {
        3.0 - 2.0 * self.m1
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        0.5 + self.m1 / self.m2()
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Coefficient `1/m1 + 2/m2` of the center-of-mass kinetic term.
    #[inline]
    pub fn kappa(&self) -> f64 {
        1.0 / self.m1 + 2.0 / self.m2()
    }

    /// `m1^{3/2}`, the scale of the collision momentum.
    #[inline]
    pub fn m1_three_halves(&self) -> f64 {
        self.m1 * self.m1.sqrt()
    }
}

/// Regularized phase point together with fictitious and physical time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegState {
    pub q: [f64; 4],
    pub p: [f64; 4],
    pub s: f64,
    pub t: f64,
}

impl RegState {
    pub fn new(q: [f64; 4], p: [f64; 4]) -> Self {
        Self { q, p, s: 0.0, t: 0.0 }
    }

    pub fn from_phase(z: &Phase, s: f64, t: f64) -> Self {
        Self {
            q: [z[0], z[1], z[2], z[3]],
            p: [z[4], z[5], z[6], z[7]],
            s,
            t,
        }
    }

    pub fn phase(&self) -> Phase {
        Phase::from_column_slice(&[
            self.q[0], self.q[1], self.q[2], self.q[3], self.p[0], self.p[1], self.p[2], self.p[3],
        ])
    }

    /// `dt/ds = Q1² + Q2²`.
    pub fn time_rate(&self) -> f64 {
        self.q[0] * self.q[0] + self.q[1] * self.q[1]
    }
}

/// Constant matrices used by the symmetry reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureMatrices {
    /// Time-reversing symmetry `diag(-1, 1, -1, 1, 1, -1, 1, -1)`.
    pub s: Mat8,
    /// `blockdiag(-I, I)`.
    pub lambda: Mat8,
    /// Standard symplectic form `[[0, I], [-I, 0]]`.
    pub j: Mat8,
    /// Initial frame, orthogonal and symplectic, with `-Y0ᵀ S Y0 = Λ`.
    pub y0: Mat8,
}

impl StructureMatrices {
    pub fn new() -> Self {
        Self {
            s: symmetry_matrix(),
            lambda: lambda_matrix(),
            j: symplectic_form(),
            y0: initial_frame(),
        }
    }
}

impl Default for StructureMatrices {
    fn default() -> Self {
        Self::new()
    }
}

const S_DIAG: [f64; 8] = [-1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0];

pub fn symmetry_matrix() -> Mat8 {
    Mat8::from_diagonal(&Phase::from_column_slice(&S_DIAG))
}

/// Apply `S` without forming the matrix.
pub fn apply_symmetry(z: &Phase) -> Phase {
    Phase::from_fn(|i, _| S_DIAG[i] * z[i])
}

/// Diagonal of `S` as an array, handy for componentwise reflections.
pub fn symmetry_diagonal() -> [f64; 8] {
    S_DIAG
}

pub fn lambda_matrix() -> Mat8 {
    Mat8::from_fn(|i, j| match (i == j, i < 4) {
        (true, true) => -1.0,
        (true, false) => 1.0,
        _ => 0.0,
    })
}

pub fn symplectic_form() -> Mat8 {
    Mat8::from_fn(|i, j| {
        if j == i + 4 {
            1.0
        } else if i == j + 4 {
            -1.0
        } else {
            0.0
        }
    })
}

pub fn initial_frame() -> Mat8 {
    #[rustfmt::skip]
    let rows = [
         0.0,  0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
         0.0,  0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
         0.0,  0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
         0.0,  0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        -1.0,  0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
         0.0,  0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
         0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
         0.0,  0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
    ];
    Mat8::from_row_slice(&rows)
}

/// True when `(i, j)` may be nonzero in the block pattern 𝓜: indices
/// `{0, 3}` couple only with `{0, 3}`, and `{1, 2}` only with `{1, 2}`.
#[inline]
pub fn in_block_pattern(i: usize, j: usize) -> bool {
    let outer = |k: usize| matches!(k % 4, 0 | 3);
    outer(i) == outer(j)
}

/// Largest magnitude among entries of an 8×8 matrix that must vanish in 𝓜₂.
pub fn pattern_violation8(m: &Mat8) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            if !in_block_pattern(i, j) {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

/// Largest magnitude among entries of a 4×4 matrix that must vanish in 𝓜.
pub fn pattern_violation4(m: &Mat4) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if !in_block_pattern(i, j) {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

/// Shared subexpressions of Γ and its derivatives.
struct Terms {
    rho: f64,
    /// `A₊`, `A₋`.
    a: [f64; 2],
    /// `∂A±/∂Q_i`.
    da: [[f64; 4]; 2],
    drho: [f64; 4],
}

impl Terms {
    fn new(z: &Phase, params: &MassParams) -> Result<Self> {
        let (q1, q2, q3, q4) = (z[0], z[1], z[2], z[3]);
        let mu = params.mu();
        let rho = q1 * q1 + q2 * q2;
        let bq = (q1 * q1 - q2 * q2) * q3 + 2.0 * q1 * q2 * q4;
        let base = 0.25 * rho * rho + mu * mu * (q3 * q3 + q4 * q4);
        let a = [base + mu * bq, base - mu * bq];
        for (k, which) in ["plus", "minus"].into_iter().enumerate() {
            // Also rejects NaN.
            if !(a[k] >= SINGULAR_RADICAND) {
                return Err(Error::Singular { which, radicand: a[k] });
            }
        }
        let dbase = [rho * q1, rho * q2, 2.0 * mu * mu * q3, 2.0 * mu * mu * q4];
        let dbq = [
            2.0 * q1 * q3 + 2.0 * q2 * q4,
            -2.0 * q2 * q3 + 2.0 * q1 * q4,
            q1 * q1 - q2 * q2,
            2.0 * q1 * q2,
        ];
        let mut da = [[0.0; 4]; 2];
        for i in 0..4 {
            da[0][i] = dbase[i] + mu * dbq[i];
            da[1][i] = dbase[i] - mu * dbq[i];
        }
        Ok(Self {
            rho,
            a,
            da,
            drho: [2.0 * q1, 2.0 * q2, 0.0, 0.0],
        })
    }
}

/// Regularized Hamiltonian Γ.
pub fn gamma(z: &Phase, params: &MassParams) -> Result<f64> {
    let t = Terms::new(z, params)?;
    let (m1, m2) = (params.m1(), params.m2());
    let p = [z[4], z[5], z[6], z[7]];
    let g = 1.0 / t.a[0].sqrt() + 1.0 / t.a[1].sqrt();
    Ok((p[0] * p[0] + p[1] * p[1]) / (4.0 * m1)
        + params.kappa() * (p[2] * p[2] + p[3] * p[3]) * t.rho
        - m1 * m2 * t.rho * g
        - m1 * m1
        - params.energy() * t.rho)
}

/// Gradient `(∂Γ/∂Q, ∂Γ/∂P)`.
pub fn gamma_grad(z: &Phase, params: &MassParams) -> Result<Phase> {
    let t = Terms::new(z, params)?;
    Ok(grad_from_terms(z, params, &t))
}

fn grad_from_terms(z: &Phase, params: &MassParams, t: &Terms) -> Phase {
    let (m1, m2) = (params.m1(), params.m2());
    let kappa = params.kappa();
    let p = [z[4], z[5], z[6], z[7]];
    let g = [t.a[0].powf(-0.5), t.a[1].powf(-0.5)];
    let g1 = [-0.5 * g[0] / t.a[0], -0.5 * g[1] / t.a[1]];
    let kin = kappa * (p[2] * p[2] + p[3] * p[3]) - params.energy();
    let mut out = Phase::zeros();
    for i in 0..4 {
        let pot = t.drho[i] * (g[0] + g[1]) + t.rho * (g1[0] * t.da[0][i] + g1[1] * t.da[1][i]);
        out[i] = kin * t.drho[i] - m1 * m2 * pot;
    }
    out[4] = p[0] / (2.0 * m1);
    out[5] = p[1] / (2.0 * m1);
    out[6] = 2.0 * kappa * p[2] * t.rho;
    out[7] = 2.0 * kappa * p[3] * t.rho;
    out
}

/// Regularized vector field `J ∇Γ`.
pub fn vector_field(z: &Phase, params: &MassParams) -> Result<Phase> {
    let g = gamma_grad(z, params)?;
    Ok(Phase::from_fn(|i, _| if i < 4 { g[i + 4] } else { -g[i - 4] }))
}

/// Exact Hessian `D²Γ`, symmetric by construction.
pub fn gamma_hess(z: &Phase, params: &MassParams) -> Result<Mat8> {
    let t = Terms::new(z, params)?;
    Ok(hess_from_terms(z, params, &t))
}

fn hess_from_terms(z: &Phase, params: &MassParams, t: &Terms) -> Mat8 {
    let (m1, m2) = (params.m1(), params.m2());
    let mu = params.mu();
    let kappa = params.kappa();
    let (q1, q2, q3, q4) = (z[0], z[1], z[2], z[3]);
    let p = [z[4], z[5], z[6], z[7]];

    let g = [t.a[0].powf(-0.5), t.a[1].powf(-0.5)];
    let g1 = [-0.5 * g[0] / t.a[0], -0.5 * g[1] / t.a[1]];
    let g2 = [-1.5 * g1[0] / t.a[0], -1.5 * g1[1] / t.a[1]];

    #[rustfmt::skip]
    let d2bq = [
        [2.0 * q3,  2.0 * q4,  2.0 * q1, 2.0 * q2],
        [2.0 * q4, -2.0 * q3, -2.0 * q2, 2.0 * q1],
        [2.0 * q1, -2.0 * q2,  0.0,      0.0],
        [2.0 * q2,  2.0 * q1,  0.0,      0.0],
    ];
    let qv = [q1, q2];
    let d2base = |i: usize, j: usize| -> f64 {
        match (i, j) {
            (0..=1, 0..=1) => 2.0 * qv[i] * qv[j] + if i == j { t.rho } else { 0.0 },
            (2, 2) | (3, 3) => 2.0 * mu * mu,
            _ => 0.0,
        }
    };
    let d2rho = |i: usize, j: usize| if i == j && i < 2 { 2.0 } else { 0.0 };

    let kin = kappa * (p[2] * p[2] + p[3] * p[3]) - params.energy();
    let mut h = Mat8::zeros();
    for i in 0..4 {
        for j in i..4 {
            let da_i = [t.da[0][i], t.da[1][i]];
            let da_j = [t.da[0][j], t.da[1][j]];
            let d2a = [d2base(i, j) + mu * d2bq[i][j], d2base(i, j) - mu * d2bq[i][j]];
            let pot = d2rho(i, j) * (g[0] + g[1])
                + t.drho[i] * (g1[0] * da_j[0] + g1[1] * da_j[1])
                + t.drho[j] * (g1[0] * da_i[0] + g1[1] * da_i[1])
                + t.rho
                    * (g2[0] * da_i[0] * da_j[0]
                        + g2[1] * da_i[1] * da_j[1]
                        + g1[0] * d2a[0]
                        + g1[1] * d2a[1]);
            let v = kin * d2rho(i, j) - m1 * m2 * pot;
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    // Mixed Q-P block: only P3, P4 couple to ρ.
    for i in 0..2 {
        for (k, pk) in [(6usize, p[2]), (7usize, p[3])] {
            let v = 2.0 * kappa * pk * t.drho[i];
            h[(i, k)] = v;
            h[(k, i)] = v;
        }
    }
    h[(4, 4)] = 1.0 / (2.0 * m1);
    h[(5, 5)] = 1.0 / (2.0 * m1);
    h[(6, 6)] = 2.0 * kappa * t.rho;
    h[(7, 7)] = 2.0 * kappa * t.rho;
    h
}

/// Vector field and `J D²Γ` evaluated together, sharing the radicands.
pub fn field_and_jacobian(z: &Phase, params: &MassParams) -> Result<(Phase, Mat8)> {
    let t = Terms::new(z, params)?;
    let g = grad_from_terms(z, params, &t);
    let h = hess_from_terms(z, params, &t);
    let f = Phase::from_fn(|i, _| if i < 4 { g[i + 4] } else { -g[i - 4] });
    let jh = Mat8::from_fn(|i, j| if i < 4 { h[(i + 4, j)] } else { -h[(i - 4, j)] });
    Ok((f, jh))
}

/// Regularized angular momentum `½(Q1 P2 - Q2 P1) + 2μ(Q3 P4 - Q4 P3)`.
pub fn angular_momentum(z: &Phase, params: &MassParams) -> f64 {
    0.5 * (z[0] * z[5] - z[1] * z[4]) + 2.0 * params.mu() * (z[2] * z[7] - z[3] * z[6])
}

/// Gradient of the angular momentum.
pub fn angular_momentum_grad(z: &Phase, params: &MassParams) -> Phase {
    let mu2 = 2.0 * params.mu();
    Phase::from_column_slice(&[
        0.5 * z[5],
        -0.5 * z[4],
        mu2 * z[7],
        -mu2 * z[6],
        -0.5 * z[1],
        0.5 * z[0],
        -mu2 * z[3],
        mu2 * z[2],
    ])
}

/// Generator of the rotations that leave Γ invariant,
/// `½(Q1 P2 - Q2 P1) + (Q3 P4 - Q4 P3)`. It rotates `(u1, u2)` and `(u3, u4)`
/// at the same rate, so it Poisson-commutes with Γ and is conserved by the
/// flow. It differs from [`angular_momentum`] only in the weight of the
/// `(Q3, Q4)` term; both vanish identically on the isosceles set.
pub fn rotation_generator(z: &Phase) -> f64 {
    0.5 * (z[0] * z[5] - z[1] * z[4]) + (z[2] * z[7] - z[3] * z[6])
}

pub fn rotation_generator_grad(z: &Phase) -> Phase {
    Phase::from_column_slice(&[
        0.5 * z[5],
        -0.5 * z[4],
        z[7],
        -z[6],
        -0.5 * z[1],
        0.5 * z[0],
        -z[3],
        z[2],
    ])
}

/// Membership in the isosceles invariant set `Q2 = Q3 = P2 = P3 = 0`.
pub fn in_invariant_set(z: &Phase, tol: f64) -> bool {
    invariant_set_leakage(z) <= tol
}

/// `max(|Q2|, |Q3|, |P2|, |P3|)`.
pub fn invariant_set_leakage(z: &Phase) -> f64 {
    [z[1], z[2], z[5], z[6]].iter().fold(0.0f64, |m, v| m.max(v.abs()))
}
