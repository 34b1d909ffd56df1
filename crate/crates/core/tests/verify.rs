use broucke::orbit::SolveOptions;
use broucke::stability::DEFAULT_DELTA;
use broucke::verify::verify;
use broucke::MassParams;

#[test]
fn every_check_passes_at_unit_mass() {
    let v = verify(&MassParams::new(1.0).unwrap(), &SolveOptions::default(), DEFAULT_DELTA).unwrap();
    for c in &v.checks {
        assert!(c.ok(), "{} = {:e} (limit {:e})", c.name, c.value, c.limit);
    }
    assert!(v.passed());
    assert!(v.checks.len() >= 20);
    assert!(v.record.classification.stable_2df);
}

#[test]
fn out_of_range_mass_is_an_error() {
    assert!(verify(&MassParams::new(1.49).unwrap(), &SolveOptions::default(), DEFAULT_DELTA).is_err());
}
