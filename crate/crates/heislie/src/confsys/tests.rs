use super::*;
use crate::diffop::{commutator_table, DiffOp};
use crate::exactmath::{LaurentPoly, Scalar};
use crate::liecore::{Bigrading, Family, GradedLieAlgebra};

fn assert_report(rep: &crate::report::Report) {
    for c in rep.checks.iter().filter(|c| !c.passed) {
        panic!(
            "{} [{}] failed {}{}",
            rep.suite,
            rep.algebra,
            c.name,
            c.witness
                .as_ref()
                .map(|w| format!(": {w}"))
                .unwrap_or_default()
        );
    }
}

#[test]
fn action_on_simple_functions() {
    let alg = GradedLieAlgebra::construct(&Family::G2);
    let ch = nc_chart(&alg, &[]);
    let vars = ch.vars.clone();
    let param = InductionParam::trivial(&ch);
    let t = LaurentPoly::var_named(&vars, "t");
    let nu = LaurentPoly::var_named(&vars, "nu");
    let one = LaurentPoly::one(&vars);
    let rho = LaurentPoly::constant(&vars, alg.rho());
    // The lowest root acts by -d/dt.
    let op_f = dpi_op(&alg, &ch, &param, &alg.elt_f(&vars));
    assert!(op_f.apply_poly(&t).add(&one).is_zero());
    // The grading element acts on x_0 t with weight 3 plus the character.
    let x0t = LaurentPoly::var(&vars, 0).mul(&t);
    let op_h = dpi_op(&alg, &ch, &param, &alg.elt_h(&vars));
    let expect = x0t.scale(&Scalar::from_int(3)).add(&x0t.mul(&nu.add(&rho)));
    assert!(op_h.apply_poly(&x0t).sub(&expect).is_zero());
    // The highest root acts on constants by multiplication by (nu + rho) t.
    let op_e = dpi_op(&alg, &ch, &param, &alg.elt_e(&vars));
    let expect = nu.add(&rho).mul(&t);
    assert!(op_e.apply_poly(&one).sub(&expect).is_zero());
}

#[test]
fn action_is_homomorphism() {
    for fam in [Family::G2, Family::Sl(3), Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let ch = nc_chart(&alg, &[]);
        let param = InductionParam::trivial(&ch);
        let rep = commutator_table(&alg, &dpi_table(&alg, &ch, &param));
        assert_report(&rep);
    }
}

#[test]
fn second_order_system_normal_form() {
    // Omega(T) = sum omega(T dual_a, dual_b) d_a d_b - dir(Tx) d_t
    //          + (1/4) omega(Tx, x) d_t^2.
    for fam in [Family::G2, Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let ch = nc_chart(&alg, &[]);
        let vars = ch.vars.clone();
        let xpt = coordinate_point(&alg, &ch);
        let duals = dual_basis_elts(&alg, &ch);
        let dt = DiffOp::derivative_named(&ch, "t");
        for &mi in &alg.m_idx {
            let t_elt = alg.basis_elt(mi, &vars);
            let tx = alg.bracket(&t_elt, &xpt);
            let mut expect = dir_derivative(&alg, &ch, &tx).compose(&dt).neg().add(
                &dt.compose(&dt)
                    .scale_poly(&alg.omega_form(&tx, &xpt).scale(&Scalar::rat(1, 4))),
            );
            for (a, da) in duals.iter().enumerate() {
                let ta = alg.bracket(&t_elt, da);
                for (b, db) in duals.iter().enumerate() {
                    let c = alg.omega_form(&ta, db);
                    if !c.is_zero() {
                        expect = expect.add(
                            &DiffOp::derivative(&ch, a)
                                .compose(&DiffOp::derivative(&ch, b))
                                .scale_poly(&c),
                        );
                    }
                }
            }
            let got = omega_mu(&alg, &ch, &t_elt);
            assert!(
                got.sub(&expect).is_zero(),
                "{} normal form mismatch at basis {}",
                fam.label(),
                alg.basis_name(mi)
            );
        }
    }
}

#[test]
fn higher_systems_have_expected_order() {
    let alg = GradedLieAlgebra::construct(&Family::G2);
    let ch = nc_chart(&alg, &[]);
    for a in 0..alg.dim_v() {
        let x = alg.basis_elt(alg.v_idx[a], &ch.vars);
        assert_eq!(omega_psi(&alg, &ch, &x).order(), 3);
    }
    let q = omega_q(&alg, &ch);
    assert_eq!(q.order(), 4);
    // The quartic system commutes with the nilradical action.
    let param = InductionParam::trivial(&ch);
    let op_f = dpi_op(&alg, &ch, &param, &alg.elt_f(&ch.vars));
    assert!(q.commutator(&op_f).is_zero());
    for b in 0..alg.dim_v() {
        let op_v = dpi_op(&alg, &ch, &param, &alg.basis_elt(alg.v_idx[b], &ch.vars));
        assert!(q.commutator(&op_v).is_zero());
    }
}

#[test]
fn special_nu_solver() {
    let alg = GradedLieAlgebra::construct(&Family::G2);
    let ch = nc_chart(&alg, &[]);
    let vars = ch.vars.clone();
    let nu = LaurentPoly::var_named(&vars, "nu");
    let x0 = LaurentPoly::var(&vars, 0);
    // (nu + 3) x0 d_0 vanishes exactly at nu = -3.
    let op = DiffOp::derivative(&ch, 0)
        .scale_poly(&nu.add(&LaurentPoly::constant(&vars, Scalar::from_int(3))).mul(&x0));
    assert_eq!(solve_special_nu(&ch, &[op]), Some(Scalar::from_int(-3)));
    // Inconsistent pair has no solution.
    let op1 = DiffOp::from_poly(&ch, &nu.add(&LaurentPoly::one(&vars)));
    let op2 = DiffOp::from_poly(&ch, &nu.sub(&LaurentPoly::one(&vars)));
    assert_eq!(solve_special_nu(&ch, &[op1, op2]), None);
    // Zero operators give no distinguished value.
    assert_eq!(solve_special_nu(&ch, &[DiffOp::zero(&ch)]), None);
}

fn check_invariance(fam: Family, expected: &[(&str, Scalar)]) {
    let alg = GradedLieAlgebra::construct(&fam);
    let ch = nc_chart(&alg, &[]);
    let param = InductionParam::trivial(&ch);
    let rep = verify_conformal_invariance(&alg, &ch, &param, &System::OmegaOmega);
    assert_report(&rep);
    assert!(rep
        .checks
        .iter()
        .any(|c| c.name == "special_nu_first_order"));
    for (factor, _) in expected {
        let rep =
            verify_conformal_invariance(&alg, &ch, &param, &System::OmegaMu(factor.to_string()));
        assert_report(&rep);
        assert!(rep.checks.iter().any(|c| c.name == format!("special_nu_{factor}")));
    }
    // The distinguished values themselves, recomputed from the constants.
    for (factor, value) in expected {
        let basis = crate::liecore::m_factors(&alg)
            .into_iter()
            .find(|(n, _)| n == factor)
            .unwrap()
            .1;
        let c = crate::liecore::bezoutian_constant(&alg, &basis).unwrap();
        let special = &(&c * &Scalar::from_int(2)) - &(alg.rho() + Scalar::from_int(2));
        assert_eq!(&special, value, "{} factor {factor}", fam.label());
    }
}

#[test]
fn conformal_invariance_g2() {
    check_invariance(Family::G2, &[("m", Scalar::rat(-5, 3))]);
}

#[test]
fn conformal_invariance_sl4() {
    check_invariance(
        Family::Sl(4),
        &[
            ("gl1", Scalar::from_int(-1)),
            ("sl_inner", Scalar::from_int(-3)),
        ],
    );
}

#[test]
fn conformal_invariance_so43() {
    check_invariance(
        Family::So(4, 3),
        &[
            ("sl2", Scalar::from_int(-3)),
            ("so_inner", Scalar::from_int(-2)),
        ],
    );
}

#[test]
fn lagrangian_subsystem_sl() {
    assert_report(&verify_sl_lambda(3));
    assert_report(&verify_sl_lambda(4));
}

#[test]
fn sl2_action_on_v_other_signatures() {
    for fam in [Family::So(4, 4), Family::So(5, 4)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let bg = Bigrading::new(&alg);
        assert_report(&verify_sopq_sl2_on_v(&alg, &bg));
    }
}

#[test]
fn twisted_systems_so43() {
    assert_report(&verify_sopq_twisted_systems(4, 3));
}
