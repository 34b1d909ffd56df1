use broucke::dynamics::{gamma, invariant_set_leakage};
use broucke::orbit::{self, find_orbit, find_orbit_with, SolveOptions};
use broucke::{Error, MassParams};

/// `(m1, ζ4, s0, t_period, ζ1, ζ8)` from a separate implementation: the
/// isosceles-restricted Γ differentiated symbolically, scipy's DOP853 at
/// 1e-13 and Brent's method on `P1` at the section.
const REFERENCE: [(f64, f64, f64, f64, f64, f64); 4] = [
    (0.2, 1.0655290519056, 1.281611373485, 1.424562864738, 0.997856972685, -0.442395064271),
    (0.65, 2.3895873317121, 1.814353761604, 5.181517926241, 1.382136822968, -0.751910424615),
    (1.0, 2.4481765040554, 1.899757362578, 6.503065029465, 1.386125717182, -0.730831568087),
    (1.4, 1.6738546316996, 1.891254005029, 7.717311959640, 1.431888010189, -0.216503041453),
];

fn solve(m1: f64) -> orbit::OrbitSolution {
    find_orbit(&MassParams::new(m1).unwrap(), None).unwrap_or_else(|e| panic!("m1 = {m1}: {e}"))
}

#[test]
fn matches_reference_orbits_from_a_fresh_scan() {
    for &(m1, z4, s0, tp, z1, z8) in &REFERENCE {
        let orb = solve(m1);
        assert!((orb.zeta4 - z4).abs() < 1e-9, "m1 = {m1}: zeta4 {} vs {z4}", orb.zeta4);
        assert!((orb.s0 - s0).abs() < 1e-9, "m1 = {m1}: s0 {} vs {s0}", orb.s0);
        assert!((orb.t_period - tp).abs() < 1e-8, "m1 = {m1}: T {} vs {tp}", orb.t_period);
        assert!((orb.zeta1 - z1).abs() < 1e-9);
        assert!((orb.zeta8 - z8).abs() < 1e-9);
        assert!(orb.residual.abs() < orbit::RESIDUAL_TOL);
        assert_eq!(orb.period_s, 4.0 * orb.s0);
    }
}

#[test]
fn collinear_point_has_the_expected_pattern() {
    let orb = solve(1.0);
    let z = orb.collinear_state().phase();
    for i in [1, 2, 3, 4, 5, 6] {
        assert!(z[i].abs() < 1e-10, "component {i} = {:e}", z[i]);
    }
    assert!(orb.zeta1.abs() > 0.1 && orb.zeta8.abs() > 0.1);
    assert!(gamma(&z, &orb.params).unwrap().abs() < 1e-10);
}

#[test]
fn quarter_stays_on_the_energy_surface_and_invariant_set() {
    for &m1 in &[0.05, 0.65, 1.3] {
        let orb = solve(m1);
        let d = orb.quarter.diagnostics();
        assert!(d.gamma_drift < 1e-10, "m1 = {m1}: {:e}", d.gamma_drift);
        assert!(d.a2_drift < 1e-10);
        for z in orb.quarter.samples() {
            assert!(gamma(&z.phase(), &orb.params).unwrap().abs() < 1e-10);
            assert_eq!(invariant_set_leakage(&z.phase()), 0.0);
        }
    }
}

#[test]
fn converged_guess_is_accepted_almost_immediately() {
    let p = MassParams::new(0.65).unwrap();
    let first = find_orbit(&p, None).unwrap();
    let again = find_orbit(&p, Some(first.zeta4)).unwrap();
    assert!(again.iterations <= 3, "{} iterations", again.iterations);
    assert!((again.zeta4 - first.zeta4).abs() < 1e-12);
}

#[test]
fn nearby_guess_converges_to_the_same_orbit() {
    let p = MassParams::new(1.0).unwrap();
    let orb = find_orbit(&p, Some(2.3)).unwrap();
    assert!((orb.zeta4 - REFERENCE[2].1).abs() < 1e-9);
}

#[test]
fn zeta4_falls_toward_the_left_edge() {
    let z: Vec<f64> = [0.01, 0.05, 0.2].iter().map(|&m| solve(m).zeta4).collect();
    assert!(z[0] < z[1] && z[1] < z[2], "{z:?}");
    assert!(z[0] < 0.1);
}

#[test]
fn refuses_masses_past_the_supported_range() {
    let p = MassParams::new(1.49).unwrap();
    match find_orbit(&p, None) {
        Err(Error::OutOfDomain { m1, limit }) => {
            assert_eq!(m1, 1.49);
            assert_eq!(limit, orbit::DEFAULT_M1_LIMIT);
        }
        other => panic!("expected a domain error, got {other:?}"),
    }
}

#[test]
fn raised_limit_reaches_past_the_default_range() {
    let p = MassParams::new(1.49).unwrap();
    let opts = SolveOptions {
        m1_limit: 1.495,
        ..SolveOptions::default()
    };
    let orb = find_orbit_with(&p, None, &opts).unwrap();
    assert!(orb.zeta4 > 0.5 && orb.zeta4 < 1.0);
}

#[test]
fn invalid_shots_are_rejected() {
    let p = MassParams::new(1.0).unwrap();
    assert!(matches!(orbit::shoot(&p, -1.0, 1e-12), Err(Error::InvalidParameter(_))));
    assert!(matches!(orbit::shoot(&p, f64::NAN, 1e-12), Err(Error::InvalidParameter(_))));
}

#[test]
fn dump_serializes_expected_fields() {
    let orb = solve(1.0);
    let v = serde_json::to_value(orb.dump()).unwrap();
    for key in ["m1", "E", "zeta4", "s0", "T", "t_period", "zeta1", "zeta8", "residual", "gamma_drift", "a_drift"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["E"], -1.0);
    assert_eq!(v["T"].as_f64().unwrap(), orb.period_s);
}
