use ponzeta::verify::{run, Suite, DEFAULT_SEED};

fn assert_suite(suite: Suite) {
    let results = run(suite, DEFAULT_SEED);
    assert!(!results.is_empty());
    for r in &results {
        println!("{} {:?} {}", r.name, r.elapsed, r.detail);
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn weyl_suite() {
    assert_suite(Suite::Weyl);
}

#[test]
fn pon_suite() {
    assert_suite(Suite::Pon);
}

#[test]
fn zeta_suite() {
    assert_suite(Suite::Zeta);
}

#[test]
fn appendix_suite() {
    assert_suite(Suite::Appendix);
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!("everything".parse::<Suite>().is_err());
}
