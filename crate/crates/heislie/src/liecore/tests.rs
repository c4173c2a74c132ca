use super::*;
use crate::exactmath::{LaurentPoly, Scalar, VarSet};

fn scalar_of(p: &LaurentPoly) -> Scalar {
    p.as_scalar().unwrap()
}

#[test]
fn g2_construction() {
    let alg = GradedLieAlgebra::construct(&Family::G2);
    assert_eq!(alg.dim(), 14);
    assert_eq!(alg.dim_v(), 4);
    let sv = alg.scalar_vars().clone();
    let k = alg.killing_form(&alg.elt_e(&sv), &alg.elt_f(&sv));
    assert_eq!(scalar_of(&k), Scalar::from_int(8));
}

#[test]
fn g2_quartic_formula() {
    // Q(aX^3 + 3bX^2Y + 3cXY^2 + dY^3)
    //   = (a^2 d^2 - 3 b^2 c^2 - 6 abcd + 4 b^3 d + 4 a c^3) / 4.
    let alg = GradedLieAlgebra::construct(&Family::G2);
    let vars = VarSet::new(&[("a", false), ("b", false), ("c", false), ("d", false)]);
    let v = |i: usize| LaurentPoly::var(&vars, i);
    let x = alg.from_v_coords(&[v(0), v(1), v(2), v(3)]);
    let q = alg.quartic(&x);
    let (a, b, c, d) = (v(0), v(1), v(2), v(3));
    let expect = a
        .mul(&a)
        .mul(&d)
        .mul(&d)
        .sub(&b.mul(&b).mul(&c).mul(&c).scale(&Scalar::from_int(3)))
        .sub(&a.mul(&b).mul(&c).mul(&d).scale(&Scalar::from_int(6)))
        .add(&b.pow(3).mul(&d).scale(&Scalar::from_int(4)))
        .add(&a.mul(&c.pow(3)).scale(&Scalar::from_int(4)))
        .scale(&Scalar::rat(1, 4));
    assert!(q.sub(&expect).is_zero(), "g2 quartic mismatch: {q}");
}

#[test]
fn sl_construction() {
    let alg = GradedLieAlgebra::construct(&Family::Sl(3));
    assert_eq!(alg.dim(), 8);
    assert_eq!(alg.dim_v(), 2);
    let sv = alg.scalar_vars().clone();
    let k = alg.killing_form(&alg.elt_e(&sv), &alg.elt_f(&sv));
    assert_eq!(scalar_of(&k), Scalar::from_int(6));

    let alg = GradedLieAlgebra::construct(&Family::Sl(4));
    assert_eq!(alg.dim(), 15);
    assert_eq!(alg.dim_v(), 4);
}

#[test]
fn sl4_quartic_and_omega() {
    // V = pairs (x, y); omega((x,y),(x',y')) = x'^T y - x^T y' and
    // Q(x, y) = (x^T y)^2 / 4.
    let alg = GradedLieAlgebra::construct(&Family::Sl(4));
    let vars = VarSet::new(&[
        ("x1", false),
        ("x2", false),
        ("y1", false),
        ("y2", false),
        ("u1", false),
        ("u2", false),
        ("v1", false),
        ("v2", false),
    ]);
    let v = |i: usize| LaurentPoly::var(&vars, i);
    let first = alg.from_v_coords(&[v(0), v(1), v(2), v(3)]);
    let second = alg.from_v_coords(&[v(4), v(5), v(6), v(7)]);
    let xty = v(0).mul(&v(2)).add(&v(1).mul(&v(3)));
    let q = alg.quartic(&first);
    assert!(
        q.sub(&xty.mul(&xty).scale(&Scalar::rat(1, 4))).is_zero(),
        "sl(4) quartic mismatch: {q}"
    );
    let om = alg.omega_form(&first, &second);
    // x'^T y - x^T y' with (x,y) = first, (x',y') = second.
    let expect = v(4)
        .mul(&v(2))
        .add(&v(5).mul(&v(3)))
        .sub(&v(0).mul(&v(6)))
        .sub(&v(1).mul(&v(7)));
    assert!(om.sub(&expect).is_zero(), "sl(4) omega mismatch: {om}");
}

#[test]
fn so_construction() {
    let alg = GradedLieAlgebra::construct(&Family::So(4, 3));
    assert_eq!(alg.dim(), 21);
    assert_eq!(alg.dim_v(), 6);
    let sv = alg.scalar_vars().clone();
    let k = alg.killing_form(&alg.elt_e(&sv), &alg.elt_f(&sv));
    assert_eq!(scalar_of(&k), Scalar::from_int(10));
}

#[test]
fn structure_suites_pass() {
    for fam in [Family::G2, Family::Sl(3), Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let rep = verify_structure_suite(&alg, 7);
        for c in rep.checks.iter().filter(|c| !c.passed) {
            panic!("{} failed {}", fam.label(), c.name);
        }
    }
}

#[test]
fn bezoutian_constants() {
    // g2 -> 5/3; sl(n): gl(1) -> n/2, sl(n-2) -> 1; so(p,q): sl(2) ->
    // (p+q-4)/2, so(p-2,q-2) -> 2.
    let expect = |fam: &Family, name: &str| -> Scalar {
        match (fam, name) {
            (Family::G2, "m") => Scalar::rat(5, 3),
            (Family::Sl(n), "gl1") => Scalar::rat(*n as i64, 2),
            (Family::Sl(_), "sl_inner") => Scalar::one(),
            (Family::So(p, q), "sl2") => Scalar::rat((p + q) as i64 - 4, 2),
            (Family::So(_, _), "so_inner") => Scalar::from_int(2),
            _ => panic!("unexpected factor {name}"),
        }
    };
    for fam in [Family::G2, Family::Sl(3), Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        for (name, basis) in m_factors(&alg) {
            let c = bezoutian_constant(&alg, &basis)
                .unwrap_or_else(|| panic!("{}: factor {name} not scalar", fam.label()));
            assert_eq!(c, expect(&fam, &name), "{} factor {name}", fam.label());
        }
    }
}

#[test]
fn bigrading_verifies() {
    for fam in [Family::G2, Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let bg = Bigrading::new(&alg);
        let rep = bg.verify(&alg, 11);
        for c in rep.checks.iter().filter(|c| !c.passed) {
            panic!("{} failed {}", fam.label(), c.name);
        }
        match fam {
            Family::G2 | Family::So(_, _) => assert!(bg.jordan.is_some()),
            Family::Sl(_) => assert!(bg.jordan.is_none()),
        }
    }
}

#[test]
fn so44_cubic_norm() {
    // J parameterized by (lam, a, b) has n = 4 lam (|a|^2 - |b|^2).
    let alg = GradedLieAlgebra::construct(&Family::So(4, 4));
    let bg = Bigrading::new(&alg);
    let vars = VarSet::new(&[("l", false), ("a", false), ("b", false)]);
    let v = |i: usize| LaurentPoly::var(&vars, i);
    let mut z = alg.zero_elt(&vars);
    let put = |z: &mut Elt, name: &str, val: LaurentPoly| {
        z.coeffs[alg.basis_index(name).unwrap()] = val;
    };
    put(&mut z, "v1_1", v(0));
    put(&mut z, "v2_1", v(0));
    put(&mut z, "w1_1", v(0).neg());
    put(&mut z, "w2_1", v(0).neg());
    put(&mut z, "v1_2", v(1));
    put(&mut z, "v2_2", v(1).neg());
    put(&mut z, "w1_2", v(2).neg());
    put(&mut z, "w2_2", v(2));
    let n = bg.norm_j(&alg, &z);
    let expect = v(0)
        .mul(&v(1).mul(&v(1)).sub(&v(2).mul(&v(2))))
        .scale(&Scalar::from_int(4));
    assert!(n.sub(&expect).is_zero(), "so(4,4) norm mismatch: {n}");
}

#[test]
fn cartan_involutions_verify() {
    for fam in [Family::G2, Family::Sl(3), Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let bg = Bigrading::new(&alg);
        let th = CartanInvolution::new(&alg, &bg);
        let rep = th.verify(&alg);
        for c in rep.checks.iter().filter(|c| !c.passed) {
            panic!("{} failed {}", fam.label(), c.name);
        }
    }
}

#[test]
fn joseph_generators_structure() {
    for fam in [Family::G2, Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let gens = joseph_generators(&alg);
        assert_eq!(gens.len(), joseph_generator_count(&alg), "{}", fam.label());
        // Scalar generator contains 4(EF + FE) + 2 H^2.
        let scalar = gens.last().unwrap();
        assert_eq!(
            scalar.coeff(&[alg.idx_e, alg.idx_f]),
            Scalar::from_int(4),
            "{}",
            fam.label()
        );
        assert_eq!(scalar.coeff(&[alg.idx_f, alg.idx_e]), Scalar::from_int(4));
        assert_eq!(scalar.coeff(&[alg.idx_h, alg.idx_h]), Scalar::from_int(2));
        // m-family has one generator per basis element of m.
        assert_eq!(gens.len() - alg.dim_v() - 1, alg.m_idx.len());
    }
}

#[test]
fn joseph_symbols_vanish_on_minimal_orbit() {
    // The degree-2 symbols of all generators vanish on Ad(exp(x + sF))E,
    // symbolically in the coordinates of x and s.
    for fam in [Family::G2, Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let nv = alg.dim_v();
        let mut names: Vec<String> = (0..nv).map(|i| format!("c{i}")).collect();
        names.push("s".to_string());
        let named: Vec<(&str, bool)> = names.iter().map(|n| (n.as_str(), false)).collect();
        let vars = VarSet::new(&named);
        let x = alg.from_v_coords(
            &(0..nv)
                .map(|i| LaurentPoly::var(&vars, i))
                .collect::<Vec<_>>(),
        );
        let s = LaurentPoly::var(&vars, nv);
        let arg = x.add(&alg.elt_f(&vars).scale_poly(&s));
        let orbit_pt = ad_exp(&alg, &arg, &alg.elt_e(&vars));
        for (k, g) in joseph_generators(&alg).iter().enumerate() {
            let val = g.symbol_at(&alg, &orbit_pt);
            assert!(val.is_zero(), "{} generator {k} symbol: {val}", fam.label());
        }
    }
}

#[test]
fn su2_ideal_verifies() {
    for fam in [Family::G2] {
        let alg = GradedLieAlgebra::construct(&fam);
        let bg = Bigrading::new(&alg);
        let th = CartanInvolution::new(&alg, &bg);
        let rep = su2_ideal(&alg, &bg, &th);
        for c in rep.checks.iter().filter(|c| !c.passed) {
            panic!("{} failed {}", fam.label(), c.name);
        }
    }
}

#[test]
fn decomposition_suites_pass() {
    for fam in [Family::G2, Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let bg = Bigrading::new(&alg);
        let th = CartanInvolution::new(&alg, &bg);
        let rep = verify_decomposition_suite(&alg, &bg, &th, 13);
        for c in rep.checks.iter().filter(|c| !c.passed) {
            panic!("{} failed {}", fam.label(), c.name);
        }
    }
}

#[test]
fn weyl_tables_verify() {
    for fam in [Family::G2, Family::Sl(4), Family::So(4, 3)] {
        let alg = GradedLieAlgebra::construct(&fam);
        let bg = Bigrading::new(&alg);
        let w = WeylTables::new(&alg, &bg);
        let rep = w.verify(&alg, &bg);
        for c in rep.checks.iter().filter(|c| !c.passed) {
            panic!("{} failed {}", fam.label(), c.name);
        }
    }
}
