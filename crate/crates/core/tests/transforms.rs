use broucke::transforms::*;
use broucke::dynamics::{gamma, symplectic_form, Mat8};
use broucke::{Error, MassParams, Phase, RegState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cartesian(rng: &mut ChaCha8Rng, params: &MassParams) -> CartesianState {
    let mut q = [0.0; 6];
    let mut p = [0.0; 6];
    for k in 0..4 {
        q[k] = rng.gen_range(-2.0..2.0);
        p[k] = rng.gen_range(-2.0..2.0);
    }
    let r = params.m1() / params.m2();
    q[4] = -r * (q[0] + q[2]);
    q[5] = -r * (q[1] + q[3]);
    p[4] = -(p[0] + p[2]);
    p[5] = -(p[1] + p[3]);
    CartesianState { q, p }
}

#[test]
fn relative_examples() {
    let c = CartesianState {
        q: [1.0, 2.0, -1.0, 2.0, 0.0, 0.0],
        p: [1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
    };
    let r = cart_to_rel(&c);
    assert_eq!(r.u, [2.0, 0.0, 0.0, 4.0]);
    assert_eq!(r.v, [1.0, 0.0, 0.0, 0.0]);

    let collided = CartesianState { q: [0.3, 0.4, 0.3, 0.4, 0.0, 0.0], p: [0.0; 6] };
    let rc = cart_to_rel(&collided);
    assert_eq!((rc.u[0], rc.u[1]), (0.0, 0.0));

    let p = MassParams::new(0.9).unwrap();
    let zero = rel_to_cart(&RelativeState { u: [0.0; 4], v: [0.0; 4] }, &p);
    assert_eq!(zero.q, [0.0; 6]);
    assert_eq!(zero.p, [0.0; 6]);
}

#[test]
fn cartesian_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let c = random_cartesian(&mut rng, &p);
        let back = rel_to_cart(&cart_to_rel(&c), &p);
        for k in 0..6 {
            assert!((back.q[k] - c.q[k]).abs() < 1e-14);
            assert!((back.p[k] - c.p[k]).abs() < 1e-14);
        }
        assert!(back.com_residual(&p) < 1e-14);
    }
}

#[test]
fn levi_civita_examples() {
    let s = RegState::new([1.0, 0.0, 0.4, -0.2], [0.0; 4]);
    assert_eq!(reg_to_rel(&s).unwrap().u, [1.0, 0.0, 0.4, -0.2]);
    let s = RegState::new([1.0, 1.0, 0.0, 0.0], [0.0; 4]);
    let u = reg_to_rel(&s).unwrap().u;
    assert_eq!((u[0], u[1]), (0.0, 2.0));

    let r = |u1, u2| RelativeState { u: [u1, u2, 0.0, 0.0], v: [0.0; 4] };
    assert_eq!(rel_to_reg(&r(1.0, 0.0), Branch::Principal).q[..2], [1.0, 0.0]);
    assert_eq!(rel_to_reg(&r(1.0, 0.0), Branch::Negated).q[..2], [-1.0, -0.0]);
    let q = rel_to_reg(&r(0.0, 2.0), Branch::Principal).q;
    assert!((q[0] - 1.0).abs() < 1e-15 && (q[1] - 1.0).abs() < 1e-15);
    let q = rel_to_reg(&r(-4.0, -0.0), Branch::Principal).q;
    assert_eq!((q[0], q[1]), (0.0, 2.0));

    let collision = RegState::new([0.0, 0.0, 0.0, 1.0], [2.0, 0.0, 0.0, 0.0]);
    assert!(matches!(reg_to_rel(&collision), Err(Error::CollisionChart)));
}

#[test]
fn regularized_round_trip_and_momentum_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let r = RelativeState {
            u: std::array::from_fn(|_| rng.gen_range(-2.0..2.0)),
            v: std::array::from_fn(|_| rng.gen_range(-2.0..2.0)),
        };
        let branch = if rng.gen_bool(0.5) { Branch::Principal } else { Branch::Negated };
        let reg = rel_to_reg(&r, branch);
        let back = reg_to_rel(&reg).unwrap();
        for k in 0..4 {
            assert!((back.u[k] - r.u[k]).abs() < 1e-14 * (1.0 + r.u[k].abs()));
            assert!((back.v[k] - r.v[k]).abs() < 1e-13 * (1.0 + r.v[k].abs()));
        }
        let [q1, q2, _, _] = reg.q;
        let v = back.v;
        // P = ∂F2/∂Q with F2 = v1(Q1² - Q2²) + 2 v2 Q1 Q2 + v3 Q3 + v4 Q4.
        assert!((reg.p[0] - 2.0 * (v[0] * q1 + v[1] * q2)).abs() < 1e-12);
        assert!((reg.p[1] - 2.0 * (v[1] * q1 - v[0] * q2)).abs() < 1e-12);
    }
}

/// Jacobian of `(Q, P) ↦ (u, v)`; canonical iff `MᵀJM = J`.
fn reg_to_rel_jacobian(z: &Phase) -> Mat8 {
    let (q1, q2, p1, p2) = (z[0], z[1], z[4], z[5]);
    let rho = q1 * q1 + q2 * q2;
    let n1 = q1 * p1 - q2 * p2;
    let n2 = q2 * p1 + q1 * p2;
    let mut m = Mat8::zeros();
    m[(0, 0)] = 2.0 * q1;
    m[(0, 1)] = -2.0 * q2;
    m[(1, 0)] = 2.0 * q2;
    m[(1, 1)] = 2.0 * q1;
    m[(2, 2)] = 1.0;
    m[(3, 3)] = 1.0;
    m[(4, 0)] = p1 / (2.0 * rho) - n1 * q1 / (rho * rho);
    m[(4, 1)] = -p2 / (2.0 * rho) - n1 * q2 / (rho * rho);
    m[(4, 4)] = q1 / (2.0 * rho);
    m[(4, 5)] = -q2 / (2.0 * rho);
    m[(5, 0)] = p2 / (2.0 * rho) - n2 * q1 / (rho * rho);
    m[(5, 1)] = p1 / (2.0 * rho) - n2 * q2 / (rho * rho);
    m[(5, 4)] = q2 / (2.0 * rho);
    m[(5, 5)] = q1 / (2.0 * rho);
    m[(6, 6)] = 1.0;
    m[(7, 7)] = 1.0;
    m
}

#[test]
fn levi_civita_map_is_canonical() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let j = symplectic_form();
    for _ in 0..100 {
        let z = Phase::from_fn(|_, _| rng.gen_range(-1.5..1.5));
        if z[0] * z[0] + z[1] * z[1] < 1e-2 {
            continue;
        }
        let m = reg_to_rel_jacobian(&z);
        // Cross-check the analytic Jacobian against differences.
        let h = 1e-7;
        for c in 0..8 {
            let mut zp = z;
            let mut zm = z;
            zp[c] += h;
            zm[c] -= h;
            let fp = reg_to_rel(&RegState::from_phase(&zp, 0.0, 0.0)).unwrap();
            let fm = reg_to_rel(&RegState::from_phase(&zm, 0.0, 0.0)).unwrap();
            let col: Vec<f64> = (0..4)
                .map(|k| fp.u[k] - fm.u[k])
                .chain((0..4).map(|k| fp.v[k] - fm.v[k]))
                .map(|d| d / (2.0 * h))
                .collect();
            for r in 0..8 {
                assert!((col[r] - m[(r, c)]).abs() < 1e-5 * (1.0 + m[(r, c)].abs()));
            }
        }
        let defect = (m.transpose() * j * m - j).amax();
        assert!(defect < 1e-10, "defect {defect}");
    }
}

#[test]
fn hamiltonian_levels_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 200 {
        let p = MassParams::new(rng.gen_range(0.05..1.45)).unwrap();
        let c = random_cartesian(&mut rng, &p);
        let r = cart_to_rel(&c);
        if r.u[0].hypot(r.u[1]) < 1e-2 {
            continue;
        }
        let z = rel_to_reg(&r, Branch::Principal).phase();
        let (Ok(e0), Ok(e1), Ok(e2)) = (h0(&c, &p), h1(&r, &p), h2(&z, &p)) else {
            continue;
        };
        let scale = 1.0 + e0.abs();
        assert!((e0 - e1).abs() < 1e-10 * scale, "{e0} {e1}");
        assert!((e1 - e2).abs() < 1e-10 * scale, "{e1} {e2}");
        let rho = z[0] * z[0] + z[1] * z[1];
        let g = gamma(&z, &p).unwrap();
        assert!((g - rho * (e2 - p.energy())).abs() < 1e-10 * (1.0 + g.abs()));

        let (l0, l1, l2) = (a0(&c), a1(&r, &p), a2(&z, &p));
        assert!((l0 - l1).abs() < 1e-12 * (1.0 + l0.abs()));
        assert!((l1 - l2).abs() < 1e-12 * (1.0 + l0.abs()), "{l0} {l1} {l2} {z:?}");
        checked += 1;
    }
}
