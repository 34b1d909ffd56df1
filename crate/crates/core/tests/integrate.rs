use broucke::dynamics::{self, gamma, initial_frame, pattern_violation8, rotation_generator, symplectic_form};
use broucke::integrate::{self, Direction, DEFAULT_TOL};
use broucke::orbit::{self, find_orbit};
use broucke::{Error, MassParams, Phase, RegState};

fn generic_state() -> RegState {
    RegState::new([0.8, 0.3, 0.2, 1.1], [0.5, -0.2, 0.1, 0.3])
}

fn isosceles_start(m1: f64, zeta4: f64) -> (MassParams, RegState) {
    let p = MassParams::new(m1).unwrap();
    (p, orbit::initial_state(&p, zeta4))
}

fn max_diff(a: &RegState, b: &RegState) -> f64 {
    (a.phase() - b.phase()).amax()
}

#[test]
fn isosceles_set_is_invariant() {
    let (p, start) = isosceles_start(0.8, 1.7);
    let traj = integrate::flow(&start, &p, 3.0, DEFAULT_TOL).unwrap();
    assert!(traj.diagnostics().invariant_leakage == 0.0);
    for z in traj.samples() {
        assert!(dynamics::in_invariant_set(&z.phase(), 0.0));
    }
}

#[test]
fn energy_is_conserved_from_collision() {
    for &(m1, z4) in &[(0.2, 0.5), (1.0, 2.4), (1.4, 1.0)] {
        let (p, start) = isosceles_start(m1, z4);
        let traj = integrate::flow(&start, &p, 2.5, DEFAULT_TOL).unwrap();
        let d = traj.diagnostics();
        assert!(d.gamma_drift < 1e-10, "m1 = {m1}: drift {:e}", d.gamma_drift);
        assert!(d.a2_drift < 1e-10, "m1 = {m1}: drift {:e}", d.a2_drift);
    }
}

#[test]
fn rotation_generator_is_conserved_off_the_invariant_set() {
    let p = MassParams::new(0.7).unwrap();
    let start = generic_state();
    let traj = integrate::flow(&start, &p, 2.0, DEFAULT_TOL).unwrap();
    let g0 = rotation_generator(&start.phase());
    let gamma0 = gamma(&start.phase(), &p).unwrap();
    assert!(traj.diagnostics().invariant_leakage > 0.1);
    for z in traj.samples() {
        assert!((rotation_generator(&z.phase()) - g0).abs() < 1e-10);
        // Off the energy surface and with fast near-collision passes, so a
        // looser bound than on the orbit.
        let drift = (gamma(&z.phase(), &p).unwrap() - gamma0).abs();
        assert!(drift < 1e-9, "Γ0 = {gamma0}, drift {drift:e}");
    }
}

#[test]
fn halving_the_tolerance_changes_little() {
    let (p, start) = isosceles_start(1.0, 2.4481765041);
    let a = integrate::flow(&start, &p, 3.0, 1e-10).unwrap().last();
    let b = integrate::flow(&start, &p, 3.0, 1e-12).unwrap().last();
    let c = integrate::flow(&start, &p, 3.0, 1e-13).unwrap().last();
    assert!(max_diff(&b, &c) < 1e-10, "{:e}", max_diff(&b, &c));
    assert!(max_diff(&b, &c) <= max_diff(&a, &c));
    assert!((b.t - c.t).abs() < 1e-10);
}

#[test]
fn forward_then_backward_returns() {
    let p = MassParams::new(0.6).unwrap();
    let start = generic_state();
    let fwd = integrate::flow(&start, &p, 1.5, DEFAULT_TOL).unwrap().last();
    let back = integrate::flow(&fwd, &p, 0.0, DEFAULT_TOL).unwrap().last();
    assert!(max_diff(&start, &back) < 1e-9, "{:e}", max_diff(&start, &back));
    assert!(back.t.abs() < 1e-9);
    assert_eq!(back.s, 0.0);
}

#[test]
fn frame_stays_symplectic_and_block_patterned() {
    let (p, start) = isosceles_start(0.65, 2.0);
    let y0 = initial_frame();
    let ft = integrate::flow_with_frame(&start, &y0, &p, 2.0, DEFAULT_TOL).unwrap();
    assert!(ft.symplectic_defect(&y0) < 1e-8, "{:e}", ft.symplectic_defect(&y0));
    let j = symplectic_form();
    let y = ft.final_frame();
    let x = y * y0.try_inverse().unwrap();
    assert!((x.determinant() - 1.0).abs() < 1e-8);
    assert!((x.transpose() * j * x - j).amax() < 1e-8);
    for (_, f) in &ft.frames {
        assert!(pattern_violation8(f) < 1e-12, "{:e}", pattern_violation8(f));
    }
}

#[test]
fn zero_span_frame_is_the_initial_frame() {
    let (p, start) = isosceles_start(0.65, 2.0);
    let y0 = initial_frame();
    let ft = integrate::flow_with_frame(&start, &y0, &p, 0.0, DEFAULT_TOL).unwrap();
    assert_eq!(*ft.final_frame(), y0);
}

#[test]
fn singular_initial_frame_is_rejected() {
    let (p, start) = isosceles_start(0.65, 2.0);
    let zero = broucke::Mat8::zeros();
    assert!(matches!(
        integrate::flow_with_frame(&start, &zero, &p, 1.0, DEFAULT_TOL),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let (p, start) = isosceles_start(0.65, 2.0);
    assert!(integrate::flow(&start, &p, 1.0, 0.0).is_err());
}

#[test]
fn section_detection_requires_a_crossing() {
    let (p, start) = isosceles_start(1.0, 2.4481765041);
    let r = integrate::flow_to_section(&start, &p, 0.05, DEFAULT_TOL, |z: &Phase| z[3], Direction::Decreasing);
    assert!(matches!(r, Err(Error::NoCrossing)));
}

#[test]
fn section_time_does_not_depend_on_tolerance() {
    let (p, start) = isosceles_start(1.0, 2.4481765041);
    let g = |z: &Phase| z[3];
    let (_, s_a, x_a) = integrate::flow_to_section(&start, &p, 50.0, 1e-11, g, Direction::Decreasing).unwrap();
    let (_, s_b, x_b) = integrate::flow_to_section(&start, &p, 50.0, 1e-13, g, Direction::Decreasing).unwrap();
    assert!((s_a - s_b).abs() < 1e-9, "{s_a} vs {s_b}");
    assert!(x_a.q[3].abs() < 1e-12 && x_b.q[3].abs() < 1e-12);
    assert!((x_a.p[0] - x_b.p[0]).abs() < 1e-8);
}

#[test]
fn interpolation_hits_the_mesh_and_rejects_outside() {
    let (p, start) = isosceles_start(0.9, 2.0);
    let traj = integrate::flow(&start, &p, 2.0, DEFAULT_TOL).unwrap();
    for k in 0..traj.len() {
        let z = traj.sample(k);
        let w = traj.interpolate(z.s).unwrap();
        assert!(max_diff(&z, &w) < 1e-12);
        assert!((z.t - w.t).abs() < 1e-12);
    }
    assert!(traj.interpolate(2.5).is_err());
    assert!(traj.interpolate(-0.1).is_err());
}

#[test]
fn reflected_quarter_matches_direct_integration() {
    let orb = find_orbit(&MassParams::new(1.0).unwrap(), Some(2.45)).unwrap();
    let full = orbit::extend_full_period(&orb);
    let direct = integrate::flow(&orb.initial_state(), &orb.params, orb.period_s, orb.tol).unwrap();
    let (lo, hi) = full.s_range();
    assert_eq!(lo, 0.0);
    assert!((hi - orb.period_s).abs() < 1e-12);
    for k in 0..=40 {
        let s = orb.period_s * k as f64 / 40.0;
        let a = full.interpolate(s).unwrap();
        let b = direct.interpolate(s).unwrap();
        assert!(max_diff(&a, &b) < 1e-8, "s = {s}: {:e}", max_diff(&a, &b));
        assert!((a.t - b.t).abs() < 1e-8);
    }
    let end = full.last();
    assert!(max_diff(&end, &orb.initial_state()) < 1e-9);
    assert!((end.t - orb.t_period).abs() < 1e-12);
}
