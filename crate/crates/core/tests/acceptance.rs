//! The certification suite at the published parameters, one test per
//! criterion. Each prints its own pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use mockhecke::verify::{self, CriterionReport};

fn assert_criterion(report: CriterionReport) {
    println!(
        "criterion {:>2} {}  {} — {}",
        report.id,
        if report.pass { "PASS" } else { "FAIL" },
        report.name,
        report.detail
    );
    assert!(report.pass, "criterion {} failed: {}", report.id, report.detail);
}

#[test]
fn criterion_01_faber_polynomials_to_40() {
    assert_criterion(verify::criterion_faber(40));
}

#[test]
fn criterion_02_printed_hecke_polynomials() {
    assert_criterion(verify::criterion_printed_hecke_polys());
}

#[test]
fn criterion_03_route_agreement_to_64() {
    assert_criterion(verify::criterion_hecke_consistency(64));
}

#[test]
fn criterion_04_zero_certification_to_64() {
    assert_criterion(verify::criterion_zero_certification(64));
}

#[test]
fn criterion_05_mock_coefficients_printed_decimals() {
    assert_criterion(verify::criterion_mock_coefficients());
}

#[test]
fn criterion_06_beta_constant() {
    assert_criterion(verify::criterion_beta());
}

#[test]
fn criterion_07_epstein_lattice_constant() {
    assert_criterion(verify::criterion_epstein());
}

#[test]
fn criterion_08_arc_budget_bound() {
    assert_criterion(verify::criterion_arc_budget());
}

#[test]
fn criterion_09_whittaker_bound_log_grid() {
    assert_criterion(verify::criterion_whittaker_bound());
}

#[test]
fn criterion_10_deligne_bound_exact() {
    assert_criterion(verify::criterion_deligne());
}

#[test]
fn criterion_11_shadow_proportionality() {
    assert_criterion(verify::criterion_shadow_proportionality());
}

#[test]
fn criterion_12_equidistribution_discrepancy() {
    assert_criterion(verify::criterion_equidistribution());
}

#[test]
fn criterion_13_eisenstein_divisor_roots() {
    assert_criterion(verify::criterion_divisor_roots());
}
