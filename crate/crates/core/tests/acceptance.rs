use bicomplex_fields::config::RunConfig;
use bicomplex_fields::verify::{self, CriterionReport};

fn check(report: CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_ring_suite() {
    check(verify::ring_suite(&RunConfig::default()));
}

#[test]
fn criterion_02_dispersion_and_equation_of_motion() {
    check(verify::dispersion_eom(&RunConfig::default()));
}

#[test]
fn criterion_03_commutator_independence() {
    check(verify::commutator_independence(&RunConfig::default()));
}

#[test]
fn criterion_04_bessel_oracle() {
    check(verify::bessel_oracle(&RunConfig::default()));
}

#[test]
fn criterion_05_limit_suite() {
    check(verify::limit_suite(&RunConfig::default()));
}

#[test]
fn criterion_06_factor_five() {
    check(verify::factor_five(&RunConfig::default()));
}

#[test]
fn criterion_07_vev_cancellation() {
    check(verify::vev_cancellation(&RunConfig::default()));
}

#[test]
fn criterion_08_unitarity_and_alignment() {
    check(verify::unitarity_alignment(&RunConfig::default()));
}

#[test]
fn criterion_09_entanglement_witness() {
    check(verify::entanglement_witness(&RunConfig::default()));
}

#[test]
fn criterion_10_cyclostationarity() {
    check(verify::cyclostationarity(&RunConfig::default()));
}

#[test]
fn criterion_11_projection_views() {
    check(verify::projection_views(&RunConfig::default()));
}

#[test]
fn criterion_12_figure_regression() {
    check(verify::figure_regression(&RunConfig::default()));
}

#[test]
fn broken_unit_table_fails_the_ring_suite() {
    let report = verify::ring_suite_with(&RunConfig::default(), &bicomplex_fields::ring::suite::UnitTable::with_bad_j_square());
    println!("{}", report.line());
    assert!(!report.passed);
}

#[test]
fn injected_sigma_fails_criterion_3() {
    let cfg = RunConfig::from_json(r#"{"sigma": [[0,0,0,0],[0.5,0,0,0],[0,0,0,0],[0,0,0,0]]}"#).unwrap();
    let report = verify::commutator_independence(&cfg);
    println!("{}", report.line());
    assert!(!report.passed);
}
