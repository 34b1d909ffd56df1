use broucke::integrate::dop853::*;
use broucke::Result;

struct Oscillator;
impl OdeSystem<2> for Oscillator {
    fn rhs(&self, _s: f64, y: &[f64; 2], dy: &mut [f64; 2]) -> Result<()> {
        dy[0] = y[1];
        dy[1] = -y[0];
        Ok(())
    }
}

struct Exponential;
impl OdeSystem<1> for Exponential {
    fn rhs(&self, s: f64, y: &[f64; 1], dy: &mut [f64; 1]) -> Result<()> {
        dy[0] = y[0] * s.cos();
        Ok(())
    }
}

#[test]
fn harmonic_oscillator_over_many_periods() {
    let tf = 20.0 * std::f64::consts::PI;
    let sol = integrate(&Oscillator, 0.0, [1.0, 0.0], tf, &Options::default(), |_, _| false)
        .unwrap();
    let (s, y) = sol.last();
    assert_eq!(s, tf);
    assert!((y[0] - 1.0).abs() < 1e-10, "{}", y[0]);
    assert!(y[1].abs() < 1e-10);
}

#[test]
fn time_dependent_and_backward() {
    // y = exp(sin s)
    let sol = integrate(&Exponential, 0.0, [1.0], 3.0, &Options::default(), |_, _| false).unwrap();
    let y = sol.last().1[0];
    assert!((y - 3.0f64.sin().exp()).abs() < 1e-11);
    let back = integrate(&Exponential, 3.0, [y], 0.0, &Options::default(), |_, _| false).unwrap();
    assert!((back.last().1[0] - 1.0).abs() < 1e-11);
}

#[test]
fn dense_output_reproduces_step_endpoints_and_interior() {
    let opts = Options::with_tol(1e-10);
    let sol = integrate(&Oscillator, 0.0, [1.0, 0.0], 7.0, &opts, |_, _| false).unwrap();
    for (k, d) in sol.dense.iter().enumerate() {
        let a = d.eval(d.s_start);
        let b = d.eval(d.s_end());
        for i in 0..2 {
            assert!((a[i] - sol.y[k][i]).abs() < 1e-13);
            assert!((b[i] - sol.y[k + 1][i]).abs() < 1e-13);
        }
        let mid = d.s_start + 0.37 * d.h;
        let m = d.eval(mid);
        assert!((m[0] - mid.cos()).abs() < 1e-9);
    }
}

#[test]
fn stop_predicate_halts_integration() {
    let sol = integrate(&Oscillator, 0.0, [1.0, 0.0], 10.0, &Options::default(), |a, b| {
        a[0] > 0.0 && b[0] <= 0.0
    })
    .unwrap();
    assert!(sol.stopped);
    let (s, _) = sol.last();
    assert!(s > std::f64::consts::FRAC_PI_2 && s < 10.0);
}

#[test]
fn zero_span_is_identity() {
    let sol = integrate(&Oscillator, 1.0, [0.3, 0.4], 1.0, &Options::default(), |_, _| false).unwrap();
    assert_eq!(sol.y.len(), 1);
    assert_eq!(sol.y[0], [0.3, 0.4]);
}
