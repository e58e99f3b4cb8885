use std::path::PathBuf;

use redcx::format::{load_complex, load_construction, load_module};
use redcx::{detect_complex_periodicity, run_construction, CiVerdict, Complexity};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn every_module_fixture_parses() {
    for name in ["k_ci2.mod", "k_golod2.mod", "k_dual.mod", "node_mod_x.mod", "node_mod_x2.mod", "node_mod_x_plus_y.mod", "node_free.mod"] {
        let m = load_module(&fixture(name), None).unwrap();
        assert!(!m.is_zero(), "{name}");
    }
}

#[test]
fn period_four_fixture_is_certified() {
    let cf = load_complex(&fixture("gp_period4.cx"), None).unwrap();
    assert!(cf.complex.is_complex());
    assert!(cf.complex.is_minimal());
    let rep = detect_complex_periodicity(&cf.complex, 6, 0);
    let cert = rep.certificate.expect("period 4");
    assert_eq!(cert.period, 4);
    assert!(cert.minimal_certified, "{:?}", cert.below);
}

#[test]
fn period_four_construction_gives_witness() {
    let factors = load_construction(&fixture("witness_period4.construct"), None).unwrap();
    let res = run_construction(&factors, 0).unwrap();
    assert_eq!(res.periods(), vec![1, 4]);
    assert_eq!(res.penultimate_complexity.value, Complexity::Finite(1));
    assert_eq!(res.ci_verdict, CiVerdict::Witness { period: 4 });
    assert!(res.all_ses_exact());
}

#[test]
fn period_two_control_is_refused() {
    let factors = load_construction(&fixture("control_period2.construct"), None).unwrap();
    let res = run_construction(&factors, 0).unwrap();
    assert_eq!(res.periods(), vec![1, 2]);
    assert!(matches!(res.ci_verdict, CiVerdict::Refused(_)));
}
