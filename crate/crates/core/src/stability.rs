//! Linear stability from the quarter-period frame.
//!
//! With `B = Y(s0)` and `Y(0) = Y0`, the reduced monodromy is
//! `W = Y0⁻¹ S Y0 · B⁻¹ S B` and `Y0⁻¹ Y(T) = W²`. The lower-right block `K`
//! of `½(W + W⁻¹)` carries the nontrivial spectrum and is read directly off
//! the columns of `B`.

use std::fmt;

use nalgebra::{Complex, Matrix2};
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, pattern_violation4, pattern_violation8, Mat4, Mat8, StructureMatrices};
use crate::error::{Error, Result};
use crate::integrate::{self, FrameTrajectory};
use crate::orbit::OrbitSolution;

/// Default width of the degeneracy windows.
pub const DEFAULT_DELTA: f64 = 1e-3;
/// `|e|` this close to 1 counts as a boundary case.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Records whose structural residuals exceed this are marked unreliable.
pub const RESIDUAL_GATE: f64 = 1e-4;

/// Frame over the first quarter, `Y(0) = Y0`.
pub fn quarter_frame_trajectory(orb: &OrbitSolution) -> Result<FrameTrajectory> {
    integrate::flow_with_frame(
        &orb.initial_state(),
        &dynamics::initial_frame(),
        &orb.params,
        orb.s0,
        orb.tol,
    )
}

/// `B = Y(s0)`.
pub fn quarter_frame(orb: &OrbitSolution) -> Result<Mat8> {
    Ok(*quarter_frame_trajectory(orb)?.final_frame())
}

/// `K_ij = c_iᵀ S J c_{j+4}` over the columns `c` of `B`, with no inversion.
pub fn k_matrix(b: &Mat8, s: &Mat8, j: &Mat8) -> Mat4 {
    let sj = s * j;
    Mat4::from_fn(|r, c| (b.column(r).transpose() * sj * b.column(c + 4))[(0, 0)])
}

/// `B⁻¹ = -J Bᵀ J` for symplectic `B`.
pub fn symplectic_inverse(b: &Mat8, j: &Mat8) -> Mat8 {
    -(j * b.transpose() * j)
}

/// Named entries of `K = [[k11, ·, ·, ·], [·, a, b, ·], [·, c, d, ·], [·, ·, ·, e]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KEntries {
    pub k11: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl KEntries {
    pub fn from_k(k: &Mat4) -> Self {
        Self {
            k11: k[(0, 0)],
            a: k[(1, 1)],
            b: k[(1, 2)],
            c: k[(2, 1)],
            d: k[(2, 2)],
            e: k[(3, 3)],
        }
    }

    /// Nontrivial eigenvalue of the central block by its trace.
    pub fn eig2(&self) -> f64 {
        self.a + self.d + 1.0
    }

    /// The same eigenvalue as minus the central determinant.
    pub fn eig2_from_det(&self) -> f64 {
        -(self.a * self.d - self.b * self.c)
    }
}

#[derive(Debug, Clone)]
pub struct MonodromyData {
    pub b: Mat8,
    pub w: Mat8,
    pub k: Mat4,
    /// Upper-right block of `W`.
    pub l1: Mat4,
    /// Lower-left block of `W`.
    pub l2: Mat4,
    pub entries: KEntries,
}

impl MonodromyData {
    pub fn from_quarter_frame(b: Mat8) -> Self {
        let m = StructureMatrices::new();
        let k = k_matrix(&b, &m.s, &m.j);
        let w = m.y0.transpose() * m.s * m.y0 * symplectic_inverse(&b, &m.j) * m.s * b;
        Self {
            b,
            l1: w.fixed_view::<4, 4>(0, 4).into_owned(),
            l2: w.fixed_view::<4, 4>(4, 0).into_owned(),
            k,
            w,
            entries: KEntries::from_k(&k),
        }
    }

    pub fn compute(orb: &OrbitSolution) -> Result<Self> {
        Ok(Self::from_quarter_frame(quarter_frame(orb)?))
    }

    /// `W⁻¹ = -J Wᵀ J`.
    pub fn w_inverse(&self) -> Mat8 {
        symplectic_inverse(&self.w, &dynamics::symplectic_form())
    }

    /// `‖WᵀJW - J‖∞`.
    pub fn symplectic_residual(&self) -> f64 {
        let j = dynamics::symplectic_form();
        (self.w.transpose() * j * self.w - j).amax()
    }

    /// `W²`, similar to the full-period monodromy `Y0⁻¹ Y(T)`.
    pub fn w_squared(&self) -> Mat8 {
        self.w * self.w
    }

    /// `Y(T/2) = S Y0 B⁻¹ S B`.
    pub fn half_period_frame(&self) -> Mat8 {
        let m = StructureMatrices::new();
        m.s * m.y0 * symplectic_inverse(&self.b, &m.j) * m.s * self.b
    }
}

/// Residuals of the structural identities for one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    /// `-ζ4 a + m1^{3/2} b - ζ4`.
    pub left_eig_i: f64,
    /// `-ζ4 c + m1^{3/2} d + m1^{3/2}`.
    pub left_eig_ii: f64,
    /// Relation (i) with the weight `2μ` of the mass-weighted angular
    /// momentum in place of 1. Informational only; that momentum is not
    /// conserved by the flow off the isosceles set.
    pub weighted_left_eig_i: f64,
    /// Relation (ii) with the weight `2μ`.
    pub weighted_left_eig_ii: f64,
    /// Largest structurally zero entry of `K`.
    pub sparsity: f64,
    /// `k11 + 1`.
    pub k11: f64,
    /// Largest component of `v Kᵀ + v`, `v` the first four components of
    /// `∇G(γ(0)) Y0` for the conserved rotation generator `G`.
    pub left_eig_vector: f64,
    /// Largest deviation of the first column of `K` from `(-1, 0, 0, 0)`.
    pub first_column: f64,
    /// Largest pattern-zero entry of `B`.
    pub frame_pattern: f64,
    /// `‖WᵀJW - J‖∞`.
    pub symplectic: f64,
    /// `|(a + d + 1) + (ad - bc)|`.
    pub eig2_routes: f64,
    /// Imaginary part of the central block's eigenvalues.
    pub central_imag: f64,
}

impl StructureReport {
    /// Largest of the two left-eigenvector relations and the vector form.
    pub fn left_eig(&self) -> f64 {
        self.left_eig_i.abs().max(self.left_eig_ii.abs()).max(self.left_eig_vector)
    }

    /// The residual used to gate classification.
    pub fn worst(&self) -> f64 {
        [
            self.left_eig(),
            self.sparsity,
            self.k11.abs(),
            self.first_column,
            self.frame_pattern,
            self.symplectic,
            self.eig2_routes,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a real 2×2 matrix from its characteristic quadratic.
pub fn eig2x2(m: &Matrix2<f64>) -> [Complex<f64>; 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let half = 0.5 * tr;
    let disc = half * half - det;
    if disc >= 0.0 {
        let r = disc.sqrt();
        // Avoid cancellation in the smaller root.
        let big = half + r.copysign(half);
        let small = if big != 0.0 { det / big } else { 0.0 };
        [Complex::new(big, 0.0), Complex::new(small, 0.0)]
    } else {
        let i = (-disc).sqrt();
        [Complex::new(half, i), Complex::new(half, -i)]
    }
}

pub fn verify_structure(md: &MonodromyData, orb: &OrbitSolution) -> StructureReport {
    let p = &orb.params;
    let z4 = orb.zeta4;
    let two_mu_z = 2.0 * p.mu() * z4;
    let m32 = p.m1_three_halves();
    let k = &md.k;
    let en = &md.entries;
    let grad = dynamics::rotation_generator_grad(&orb.initial_state().phase());
    let v8 = grad.transpose() * dynamics::initial_frame();
    let v = nalgebra::RowVector4::new(v8[0], v8[1], v8[2], v8[3]);
    let lv = v * k.transpose() + v;
    let central = Matrix2::new(en.a, en.b, en.c, en.d);
    let eigs = eig2x2(&central);
    StructureReport {
        left_eig_i: -z4 * en.a + m32 * en.b - z4,
        left_eig_ii: -z4 * en.c + m32 * en.d + m32,
        weighted_left_eig_i: -two_mu_z * en.a + m32 * en.b - two_mu_z,
        weighted_left_eig_ii: -two_mu_z * en.c + m32 * en.d + m32,
        sparsity: pattern_violation4(k),
        k11: en.k11 + 1.0,
        left_eig_vector: lv.amax(),
        first_column: (k[(0, 0)] + 1.0).abs().max(k[(1, 0)].abs()).max(k[(2, 0)].abs()).max(k[(3, 0)].abs()),
        frame_pattern: pattern_violation8(&md.b),
        symplectic: md.symplectic_residual(),
        eig2_routes: (en.eig2() - en.eig2_from_det()).abs(),
        central_imag: eigs[0].im.abs(),
    }
}

/// Reason a record's multipliers are (nearly) repeated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegenerateCause {
    /// `|e - eig2| < δ`.
    Coincident,
    /// `|eig2 ∓ 1| < δ`.
    UnitEig2,
    /// `|eig2| < δ`.
    ZeroEig2,
    /// `|cos(2 arccos e) - cos(2 arccos eig2)| < δ`.
    DoubledAngle,
    /// `|e|` within `BOUNDARY_TOL` of 1.
    Boundary,
}

impl DegenerateCause {
    pub const ALL: [DegenerateCause; 5] = [
        Self::Coincident,
        Self::UnitEig2,
        Self::ZeroEig2,
        Self::DoubledAngle,
        Self::Boundary,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Self::Coincident => "a",
            Self::UnitEig2 => "b",
            Self::ZeroEig2 => "c",
            Self::DoubledAngle => "d",
            Self::Boundary => "boundary",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.code() == s)
    }
}

/// Set of degeneracy causes, rendered as codes joined by `+` or `none`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degeneracy(pub Vec<DegenerateCause>);

impl Degeneracy {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: DegenerateCause) -> bool {
        self.0.contains(&c)
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "none" || s.is_empty() {
            return Ok(Self::default());
        }
        s.split('+')
            .map(|c| DegenerateCause::from_code(c).ok_or_else(|| Error::Parse(format!("unknown degeneracy code {c:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        let codes: Vec<_> = self.0.iter().map(|c| c.code()).collect();
        f.write_str(&codes.join("+"))
    }
}

/// `2|e² - λ²|`, equal to `|cos(2 arccos e) - cos(2 arccos λ)|` on `[-1, 1]`.
pub fn doubled_angle_gap(e: f64, eig2: f64) -> f64 {
    2.0 * (e * e - eig2 * eig2).abs()
}

pub fn degeneracy(e: f64, eig2: f64, delta: f64) -> Degeneracy {
    let mut causes = Vec::new();
    if (e - eig2).abs() < delta {
        causes.push(DegenerateCause::Coincident);
    }
    if (eig2 - 1.0).abs() < delta || (eig2 + 1.0).abs() < delta {
        causes.push(DegenerateCause::UnitEig2);
    }
    if eig2.abs() < delta {
        causes.push(DegenerateCause::ZeroEig2);
    }
    if doubled_angle_gap(e, eig2) < delta {
        causes.push(DegenerateCause::DoubledAngle);
    }
    if (e.abs() - 1.0).abs() <= BOUNDARY_TOL {
        causes.push(DegenerateCause::Boundary);
    }
    Degeneracy(causes)
}

/// Stability verdicts for one orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub e: f64,
    pub eig2: f64,
    pub stable_2df: bool,
    pub spectral_4df: bool,
    pub linear_4df: bool,
    pub degenerate: Degeneracy,
    pub reliable: bool,
}

pub fn classify_entries(entries: &KEntries, report: &StructureReport, delta: f64) -> Classification {
    let e = entries.e;
    let eig2 = entries.eig2();
    let degenerate = degeneracy(e, eig2, delta);
    let boundary = degenerate.contains(DegenerateCause::Boundary);
    let stable_2df = e.abs() <= 1.0 && !boundary;
    let spectral_4df = e.abs() <= 1.0 && eig2.abs() <= 1.0;
    Classification {
        e,
        eig2,
        stable_2df,
        spectral_4df,
        linear_4df: spectral_4df && degenerate.is_empty(),
        degenerate,
        reliable: report.worst() < RESIDUAL_GATE,
    }
}

/// Full stability record for one mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRecord {
    pub m1: f64,
    pub m2: f64,
    pub zeta4: f64,
    pub s0: f64,
    pub t_period: f64,
    pub entries: KEntries,
    pub report: StructureReport,
    pub gamma_drift: f64,
    pub a2_drift: f64,
    pub classification: Classification,
}

impl StabilityRecord {
    pub fn eig2(&self) -> f64 {
        self.classification.eig2
    }

    pub fn e(&self) -> f64 {
        self.classification.e
    }
}

/// Quarter frame, `K`, structural check and classification in one pass.
pub fn analyze(orb: &OrbitSolution, delta: f64) -> Result<(MonodromyData, StabilityRecord)> {
    let frame = quarter_frame_trajectory(orb)?;
    let md = MonodromyData::from_quarter_frame(*frame.final_frame());
    let report = verify_structure(&md, orb);
    let d = frame.base.diagnostics();
    let record = StabilityRecord {
        m1: orb.params.m1(),
        m2: orb.params.m2(),
        zeta4: orb.zeta4,
        s0: orb.s0,
        t_period: orb.t_period,
        entries: md.entries,
        gamma_drift: d.gamma_drift.max(orb.quarter.diagnostics().gamma_drift),
        a2_drift: d.a2_drift.max(orb.quarter.diagnostics().a2_drift),
        classification: classify_entries(&md.entries, &report, delta),
        report,
    };
    Ok((md, record))
}

pub fn classify(md: &MonodromyData, orb: &OrbitSolution, delta: f64) -> Classification {
    classify_entries(&md.entries, &verify_structure(md, orb), delta)
}

/// Spectrum of `Y0⁻¹ Y(T)` from a direct frame integration over the full
/// period.
pub fn monodromy_oracle(orb: &OrbitSolution) -> Result<Vec<Complex<f64>>> {
    let y0 = dynamics::initial_frame();
    let full = integrate::flow_with_frame(&orb.initial_state(), &y0, &orb.params, orb.period_s, orb.tol)?;
    let m = y0.transpose() * full.final_frame();
    Ok(m.complex_eigenvalues().iter().copied().collect())
}

pub fn spectrum(m: &Mat8) -> Vec<Complex<f64>> {
    m.complex_eigenvalues().iter().copied().collect()
}

/// Symmetric Hausdorff distance between two finite point sets in ℂ.
pub fn hausdorff(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    let directed = |x: &[Complex<f64>], y: &[Complex<f64>]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Eigenvalues of `W²` predicted by one eigenvalue `λ` of `K`:
/// `(λ ± √(λ² - 1))²`.
pub fn w2_pair(lambda: f64) -> [Complex<f64>; 2] {
    let root = Complex::new(lambda * lambda - 1.0, 0.0).sqrt();
    let l = Complex::new(lambda, 0.0);
    [(l + root).powi(2), (l - root).powi(2)]
}

/// Eigenvalues of `W²` assembled from the spectrum of `K`.
pub fn predicted_w2_spectrum(entries: &KEntries) -> Vec<Complex<f64>> {
    [entries.k11, -1.0, entries.eig2(), entries.e]
        .into_iter()
        .flat_map(w2_pair)
        .collect()
}

/// Distance between two spectra that stays meaningful for defective
/// eigenvalues. The union of both sets is split into clusters of points
/// closer than `radius` (single linkage); within each cluster the two sets
/// must contribute the same number of points, and the result is the
/// largest distance between their centroids (infinity on a count
/// mismatch). A cluster's centroid is the normalized trace of its
/// invariant subspace, which is well conditioned even where the individual
/// eigenvalues of a Jordan block scatter like `√ε`.
pub fn cluster_distance(a: &[Complex<f64>], b: &[Complex<f64>], radius: f64) -> f64 {
    let points: Vec<Complex<f64>> = a.iter().chain(b).copied().collect();
    let labels = cluster_labels(&points, radius);
    let mut worst: f64 = 0.0;
    let mut seen = Vec::new();
    for &l in &labels {
        if seen.contains(&l) {
            continue;
        }
        seen.push(l);
        let (mut sa, mut na, mut sb, mut nb) = (Complex::new(0.0, 0.0), 0usize, Complex::new(0.0, 0.0), 0usize);
        for (k, &lk) in labels.iter().enumerate() {
            if lk != l {
                continue;
            }
            if k < a.len() {
                sa += points[k];
                na += 1;
            } else {
                sb += points[k];
                nb += 1;
            }
        }
        if na != nb {
            return f64::INFINITY;
        }
        worst = worst.max((sa / na as f64 - sb / nb as f64).norm());
    }
    worst
}

/// Single-linkage cluster label of every point.
fn cluster_labels(points: &[Complex<f64>], radius: f64) -> Vec<usize> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() < radius {
                let (ri, rj) = (root(&mut label, i), root(&mut label, j));
                label[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    (0..n).map(|i| root(&mut label, i)).collect()
}

/// A run of adjacent grid masses around one or more degeneracies.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    pub lo: f64,
    pub hi: f64,
    pub causes: Degeneracy,
}

/// Degeneracies along a mass grid, sorted by `m1`. A grid point counts when
/// it is flagged with window `delta`; a pair of adjacent points counts when
/// one of `e - λ`, `λ ∓ 1`, `λ` or `e² - λ²` changes sign between them
/// (the last two only where both points are spectrally stable). Touching
/// or overlapping spans are merged.
pub fn degeneracy_census(samples: &[(f64, f64, f64)], delta: f64) -> Vec<Neighborhood> {
    let mut spans: Vec<Neighborhood> = Vec::new();
    for &(m, e, l) in samples {
        let d = degeneracy(e, l, delta);
        if !d.is_empty() {
            spans.push(Neighborhood { lo: m, hi: m, causes: d });
        }
    }
    let crosses = |x: f64, y: f64| x.signum() != y.signum() && x != 0.0 && y != 0.0;
    for w in samples.windows(2) {
        let ((m0, e0, l0), (m1, e1, l1)) = (w[0], w[1]);
        let inside = e0.abs() <= 1.0 && l0.abs() <= 1.0 && e1.abs() <= 1.0 && l1.abs() <= 1.0;
        let mut causes = Vec::new();
        if crosses(e0 - l0, e1 - l1) {
            causes.push(DegenerateCause::Coincident);
        }
        if crosses(l0 - 1.0, l1 - 1.0) || crosses(l0 + 1.0, l1 + 1.0) {
            causes.push(DegenerateCause::UnitEig2);
        }
        if inside && crosses(l0, l1) {
            causes.push(DegenerateCause::ZeroEig2);
        }
        if inside && crosses(e0 * e0 - l0 * l0, e1 * e1 - l1 * l1) {
            causes.push(DegenerateCause::DoubledAngle);
        }
        if !causes.is_empty() {
            spans.push(Neighborhood {
                lo: m0,
                hi: m1,
                causes: Degeneracy(causes),
            });
        }
    }
    spans.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut merged: Vec<Neighborhood> = Vec::new();
    for s in spans {
        match merged.last_mut() {
            Some(last) if s.lo <= last.hi => {
                last.hi = last.hi.max(s.hi);
                for c in s.causes.0 {
                    if !last.causes.contains(c) {
                        last.causes.0.push(c);
                    }
                }
            }
            _ => merged.push(s),
        }
    }
    for n in &mut merged {
        n.causes.0.sort_by_key(|c| DegenerateCause::ALL.iter().position(|x| x == c));
    }
    merged
}
