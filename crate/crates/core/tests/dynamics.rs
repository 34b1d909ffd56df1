use broucke::dynamics::*;
use broucke::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng) -> Phase {
    Phase::from_fn(|_, _| rng.gen_range(-1.5..1.5))
}

#[test]
fn mass_relations() {
    let p = MassParams::new(0.7).unwrap();
    assert_eq!(2.0 * p.m1() + p.m2(), 3.0);
    assert!((p.mu() - (0.5 + 0.7 / 1.6)).abs() < 1e-15);
    assert!(MassParams::new(1.5).is_err());
    assert!(MassParams::new(0.0).is_err());
}

#[test]
fn gamma_vanishes_at_collision_start() {
    for &m1 in &[0.1, 0.5, 1.0, 1.4] {
        let p = MassParams::new(m1).unwrap();
        let z = Phase::from_column_slice(&[0.0, 0.0, 0.0, 0.83, 2.0 * p.m1_three_halves(), 0.0, 0.0, 0.0]);
        assert!(gamma(&z, &p).unwrap().abs() < 1e-14);
    }
}

#[test]
fn gamma_reference_value() {
    // m1 = 1, E = -1, Q = (1,0,0,0), P = 0: ρ = 1, 𝐐 = 0, A± = 1/4,
    // Γ = -1·1·1·(2 + 2) - 1 + 1 = -4.
    let p = MassParams::new(1.0).unwrap();
    let z = Phase::from_column_slice(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    assert!((gamma(&z, &p).unwrap() + 4.0).abs() < 1e-14);
}

#[test]
fn singular_configuration_is_an_error() {
    let p = MassParams::new(1.0).unwrap();
    // Total collapse: every Q vanishes.
    let z = Phase::from_column_slice(&[0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0]);
    assert!(matches!(gamma(&z, &p), Err(Error::Singular { .. })));
    assert!(gamma_grad(&z, &p).is_err());
    assert!(gamma_hess(&z, &p).is_err());
}

#[test]
fn momentum_derivative_at_collision() {
    let p = MassParams::new(0.64).unwrap();
    let z = Phase::from_column_slice(&[0.0, 0.0, 0.0, 1.1, 2.0 * p.m1_three_halves(), 0.0, 0.0, 0.0]);
    let g = gamma_grad(&z, &p).unwrap();
    assert!((g[4] - 0.64f64.sqrt()).abs() < 1e-15);
    // γ'(0) points along Q1 only.
    let f = vector_field(&z, &p).unwrap();
    for i in 1..8 {
        assert_eq!(f[i], 0.0, "component {i}");
    }
}

#[test]
fn gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let z = random_state(&mut rng);
        let Ok(g) = gamma_grad(&z, &p) else { continue };
        let h = 1e-6;
        for i in 0..8 {
            let mut zp = z;
            let mut zm = z;
            zp[i] += h;
            zm[i] -= h;
            let fd = (gamma(&zp, &p).unwrap() - gamma(&zm, &p).unwrap()) / (2.0 * h);
            let scale = g[i].abs().max(1.0);
            assert!((fd - g[i]).abs() / scale < 1e-6, "i={i} fd={fd} g={}", g[i]);
        }
        checked += 1;
    }
}

#[test]
fn hessian_matches_gradient_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let z = random_state(&mut rng);
        let Ok(hess) = gamma_hess(&z, &p) else { continue };
        assert_eq!(hess, hess.transpose());
        let h = 1e-6;
        for j in 0..8 {
            let mut zp = z;
            let mut zm = z;
            zp[j] += h;
            zm[j] -= h;
            let col = (gamma_grad(&zp, &p).unwrap() - gamma_grad(&zm, &p).unwrap()) / (2.0 * h);
            for i in 0..8 {
                let scale = hess[(i, j)].abs().max(1.0);
                assert!((col[i] - hess[(i, j)]).abs() / scale < 1e-5);
            }
        }
        checked += 1;
    }
}

#[test]
fn field_is_tangent_to_invariant_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let mut z = random_state(&mut rng);
        for k in [1, 2, 5, 6] {
            z[k] = 0.0;
        }
        let g = gamma_grad(&z, &p).unwrap();
        for k in [1, 2, 5, 6] {
            assert_eq!(g[k], 0.0);
        }
        let (_, jh) = field_and_jacobian(&z, &p).unwrap();
        assert!(pattern_violation8(&jh) < 1e-12);
    }
}

#[test]
fn structure_identities() {
    let m = StructureMatrices::new();
    let id = Mat8::identity();
    assert_eq!(m.s * m.s, id);
    assert_eq!(m.s, m.s.transpose());
    assert_eq!(m.s * m.j, -(m.j * m.s));
    assert_eq!(m.y0.transpose() * m.y0, id);
    assert_eq!(m.y0.transpose() * m.j * m.y0, m.j);
    assert_eq!(-(m.y0.transpose() * m.s * m.y0), m.lambda);
    assert_eq!(pattern_violation8(&m.y0), 0.0);
}

#[test]
fn gamma_has_klein_four_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut n = 0;
    while n < 100 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let z = random_state(&mut rng);
        let Ok(g0) = gamma(&z, &p) else { continue };
        let sz = apply_symmetry(&z);
        assert!((gamma(&sz, &p).unwrap() - g0).abs() < 1e-12);
        assert!((gamma(&-sz, &p).unwrap() - g0).abs() < 1e-12);
        n += 1;
    }
}

#[test]
fn angular_momentum_examples() {
    let p = MassParams::new(1.0).unwrap();
    let z0 = Phase::from_column_slice(&[0.0, 0.0, 0.0, 0.9, 2.0, 0.0, 0.0, 0.0]);
    assert_eq!(angular_momentum(&z0, &p), 0.0);
    let z1 = Phase::from_column_slice(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert_eq!(angular_momentum(&z1, &p), 0.5);
}

#[test]
fn rotation_generator_commutes_with_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let j = symplectic_form();
    let mut worst_a = 0.0f64;
    for _ in 0..100 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let z = Phase::from_fn(|_, _| rng.gen_range(-1.5..1.5));
        let Ok(g) = gamma_grad(&z, &p) else { continue };
        let bracket = rotation_generator_grad(&z).dot(&(j * g));
        assert!(bracket.abs() < 1e-10 * (1.0 + g.amax()), "{{G, Γ}} = {bracket}");
        worst_a = worst_a.max(angular_momentum_grad(&z, &p).dot(&(j * g)).abs());
    }
    // The 2μ-weighted momentum is not an invariant off the isosceles set.
    assert!(worst_a > 1e-3);
}

#[test]
fn invariant_set_membership() {
    let a = Phase::from_column_slice(&[0.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0]);
    assert!(in_invariant_set(&a, 0.0));
    let b = Phase::from_column_slice(&[0.0, 1e-3, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0]);
    assert!(!in_invariant_set(&b, 1e-6));
}

#[test]
fn collision_fixes_momentum_norm() {
    // Γ = 0 with ρ = 0 leaves (P1² + P2²)/(4 m1) = m1².
    let p = MassParams::new(0.8).unwrap();
    let r = 2.0 * p.m1_three_halves();
    let z = Phase::from_column_slice(&[0.0, 0.0, 0.1, 0.7, r * 0.6, r * 0.8, 0.3, -0.2]);
    assert!(gamma(&z, &p).unwrap().abs() < 1e-14);
}
