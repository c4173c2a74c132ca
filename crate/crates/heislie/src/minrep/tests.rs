use super::*;
use crate::liecore::Family;
use crate::report::Report;

fn assert_report(rep: &Report) {
    for c in &rep.checks {
        assert!(
            c.passed,
            "[{} / {}] check '{}' failed{}",
            rep.suite,
            rep.algebra,
            c.name,
            c.witness
                .as_ref()
                .map(|w| format!(": {w}"))
                .unwrap_or_default()
        );
    }
    assert!(!rep.checks.is_empty());
}

#[test]
fn homomorphism_g2() {
    assert_report(&verify_minrep_homomorphism(&Family::G2, 61));
}

#[test]
fn homomorphism_sl3() {
    assert_report(&verify_minrep_homomorphism(&Family::Sl(3), 62));
}

#[test]
fn homomorphism_sl4() {
    assert_report(&verify_minrep_homomorphism(&Family::Sl(4), 63));
}

#[test]
fn homomorphism_so43() {
    assert_report(&verify_minrep_homomorphism(&Family::So(4, 3), 64));
}

#[test]
fn joseph_annihilation_g2() {
    assert_report(&verify_joseph_annihilation(&Family::G2, 71));
}

#[test]
fn joseph_annihilation_so43() {
    assert_report(&verify_joseph_annihilation(&Family::So(4, 3), 72));
}

#[test]
fn scaling_intertwiner_g2() {
    assert_report(&phi_delta(&Family::G2, 0, 81).1);
    assert_report(&phi_delta(&Family::G2, 1, 82).1);
}

#[test]
fn scaling_intertwiner_sl3() {
    assert_report(&phi_delta(&Family::Sl(3), 0, 83).1);
}

#[test]
fn scaling_intertwiner_so43() {
    assert_report(&phi_delta(&Family::So(4, 3), 1, 84).1);
}

#[test]
fn weyl_w1_g2() {
    assert_report(&weyl_w1_action(&Family::G2, 91));
}

#[test]
fn weyl_w1_sl3() {
    assert_report(&weyl_w1_action(&Family::Sl(3), 92));
}

#[test]
fn weyl_w1_so43() {
    assert_report(&weyl_w1_action(&Family::So(4, 3), 93));
}

#[test]
fn weyl_squares_g2() {
    assert_report(&weyl_squares_action(&Family::G2, MinVariant::Plain, 101).1);
}

#[test]
fn weyl_squares_sl4_both_parities() {
    assert_report(&weyl_squares_action(&Family::Sl(4), MinVariant::SlInteger { eps: 0 }, 102).1);
    assert_report(&weyl_squares_action(&Family::Sl(4), MinVariant::SlInteger { eps: 1 }, 103).1);
}

#[test]
fn weyl_squares_sl3_half_integer() {
    assert_report(&weyl_squares_action(&Family::Sl(3), MinVariant::SlHalf, 104).1);
}

#[test]
fn weyl_squares_so43() {
    assert_report(&weyl_squares_action(&Family::So(4, 3), MinVariant::Plain, 105).1);
}

#[test]
fn group_flows_g2() {
    assert_report(&verify_group_flows(&Family::G2, 111));
}

#[test]
fn group_flows_so43() {
    assert_report(&verify_group_flows(&Family::So(4, 3), 112));
}

#[test]
fn central_bbar_bridge_g2() {
    assert_report(&verify_central_bbar_bridge(&Family::G2, 0, 121));
    assert_report(&verify_central_bbar_bridge(&Family::G2, 1, 122));
}

#[test]
fn roundtrips_g2() {
    assert_report(&intertwiner_roundtrips(&Family::G2, 131));
}

#[test]
fn roundtrips_sl3() {
    assert_report(&intertwiner_roundtrips(&Family::Sl(3), 132));
}

#[test]
fn roundtrips_so43() {
    assert_report(&intertwiner_roundtrips(&Family::So(4, 3), 133));
}
