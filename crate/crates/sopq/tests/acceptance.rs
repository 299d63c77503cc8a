//! One test per acceptance criterion. Each prints its PASS/FAIL line, so
//! `cargo test --test acceptance -- --nocapture` shows the full summary.

use sopq::acceptance::run_criterion;

fn check(id: u8) {
    let report = run_criterion(id);
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_1_normalization() {
    check(1);
}

#[test]
fn criterion_2_zonal_series_vs_quadrature() {
    check(2);
}

#[test]
fn criterion_3_q1_closed_form() {
    check(3);
}

#[test]
fn criterion_4_exchange_symmetry() {
    check(4);
}

#[test]
fn criterion_5_associated_vs_quadrature() {
    check(5);
}

#[test]
fn criterion_6_expansion_completeness() {
    check(6);
}

#[test]
fn criterion_7_horn_engine() {
    check(7);
}

#[test]
fn criterion_8_delta_transform() {
    check(8);
}

#[test]
fn criterion_9_corrections_document() {
    check(9);
}
