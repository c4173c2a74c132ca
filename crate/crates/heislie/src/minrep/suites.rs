//! Verification suites for the L2-model action: the homomorphism property
//! of both operator tables, annihilation of the quadratic ideal generators,
//! the scaling intertwiner between the two pictures, the non-trivial Weyl
//! element and the squares of the Weyl candidates, the group-flow
//! consistency of the y-picture, the central-element bridge between the
//! non-compact-picture action and the L2 model, and round trips of every
//! invertible substitution/multiplier operator.

use crate::diffop::{chart, Chart, DiffOp};
use crate::exactmath::{Expo, LaurentPoly, Sampler, Scalar, VarSet};
use crate::heisft::{quadrant_charts, TwistedSum, TwistedTerm};
use crate::liecore::{joseph_generator_count, joseph_generators, Family, WeylTables};
use crate::report::Report;

use super::{
    min_coords, phi_op, square_flips, square_ops, w1_op, IntertwinerOp, MinKind, MinRepFamily,
    MinVariant,
};

/// Quadrant-chart family over the model coordinates; optionally makes `a`
/// invertible (for substitutions dividing by it).
fn quadrant_family(family: &Family, signed: &[&str], a_invertible: bool) -> Vec<Chart> {
    let mut coords = min_coords(family);
    if a_invertible {
        for c in coords.iter_mut() {
            if c.0 == "a" {
                c.1 = true;
            }
        }
    }
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    quadrant_charts("l2q", &borrowed, signed)
}

/// A small random polynomial supported on the listed coordinates.
fn sample_model_poly(ch: &Chart, idxs: &[usize], smp: &mut Sampler) -> LaurentPoly {
    let vars = &ch.vars;
    let mut p = LaurentPoly::one(vars);
    for _ in 0..3 {
        let mut exps = vec![Expo::from(0); vars.len()];
        for &i in idxs {
            exps[i] = Expo::from(smp.below(3) as i64);
        }
        p = p.add(&LaurentPoly::monomial(vars, exps, smp.nonzero_rational()));
    }
    p
}

/// Model coordinate indices (lam, a, z*) on the family's chart.
fn model_idxs(fam: &MinRepFamily) -> Vec<usize> {
    let (a_idx, z_idx) = fam.lagrangian_coords();
    let lam_i = fam.chart.vars.index_of("lam").expect("missing lam");
    let mut idxs = vec![lam_i, a_idx];
    idxs.extend(z_idx);
    idxs
}

/// Both operator tables are Lie algebra homomorphisms, the operator orders
/// follow the cubic-norm pattern, and the dual-cubic display matches the
/// norm.
pub fn verify_minrep_homomorphism(family: &Family, seed: u64) -> Report {
    let fam = MinRepFamily::new(family);
    let alg = fam.alg.clone();
    let mut rep = Report::new("minrep_homomorphism", fam.label(), seed);
    let dim = alg.dim();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut expect_pi = DiffOp::zero(&fam.chart);
            let mut expect_rho = DiffOp::zero(&fam.chart);
            for (k, c) in alg.structure_pairs(i, j) {
                expect_pi = expect_pi.add(&fam.dpi_basis(*k).scale(c));
                expect_rho = expect_rho.add(&fam.drho_basis(*k).scale(c));
            }
            let got_pi = fam.dpi_basis(i).commutator(fam.dpi_basis(j));
            rep.push(
                format!("pi_bracket_{}_{}", alg.basis_name(i), alg.basis_name(j)),
                got_pi == expect_pi,
                None,
            );
            let got_rho = fam.drho_basis(i).commutator(fam.drho_basis(j));
            rep.push(
                format!("rho_bracket_{}_{}", alg.basis_name(i), alg.basis_name(j)),
                got_rho == expect_rho,
                None,
            );
        }
    }
    // order pattern: third order exactly on the raising element and on the
    // barred vectors with a component along the A-direction, and only when
    // the cubic norm is non-trivial; everywhere else at most second order.
    let vars = fam.chart.vars.clone();
    let n_zero = fam.n_poly.is_zero();
    let (_, b_elt) = fam.frame_ab();
    let b_elt = b_elt.clone();
    for i in 0..dim {
        let third = !n_zero
            && (i == alg.idx_e || {
                alg.vbar_idx.contains(&i) && {
                    let down = alg.bar_down(&alg.basis_elt(i, &vars));
                    !alg.omega_form(&down, &b_elt).is_zero()
                }
            });
        let ord = fam.dpi_basis(i).order();
        let ok = if third { ord == 3 } else { ord <= 2 };
        rep.push(
            format!("pi_order_{}", alg.basis_name(i)),
            ok,
            Some(format!("order {ord}, third expected: {third}")),
        );
    }
    rep.push(
        "cubic_norm_dual_display",
        fam.norm_dual_display_residual().is_zero(),
        None,
    );
    rep.finalize()
}

/// Every generator of the quadratic ideal acts by zero through the
/// lam-picture table (simple-Levi families).
pub fn verify_joseph_annihilation(family: &Family, seed: u64) -> Report {
    assert!(
        !matches!(family, Family::Sl(_)),
        "annihilation check applies to the simple-Levi families"
    );
    let fam = MinRepFamily::new(family);
    let gens = joseph_generators(&fam.alg);
    let mut rep = Report::new("joseph_annihilation", fam.label(), seed);
    rep.push(
        "generator_count",
        gens.len() == joseph_generator_count(&fam.alg),
        Some(format!("{} generators", gens.len())),
    );
    // The quadratic scalar generator acts by the constant -dimV (s+4)/3, so
    // the annihilator contains the shifted element "generator + dimV (s+4)/3".
    // The source text asserts the unshifted element is already mapped to
    // zero; the exact computation (cross-checked on five families) says
    // otherwise, and only the shifted element annihilates.
    let dim_v = Scalar::from_int(fam.alg.dim_v() as i64);
    let shift = &(&dim_v * &(&fam.s_scalar() + &Scalar::from_int(4))) * &Scalar::rat(1, 3);
    let last = gens.len() - 1;
    for (gi, g) in gens.iter().enumerate() {
        let mut op = DiffOp::zero(&fam.chart);
        for (word, c) in &g.terms {
            let mut w = DiffOp::one(&fam.chart).scale(c);
            for &bi in word {
                w = w.compose(fam.dpi_basis(bi));
            }
            op = op.add(&w);
        }
        if gi == last {
            rep.push(
                "scalar_generator_image_is_expected_constant",
                op == DiffOp::one(&fam.chart).scale(&-&shift),
                Some(format!("acts by {}", -&shift)),
            );
            op = op.add(&DiffOp::one(&fam.chart).scale(&shift));
            rep.push("scalar_generator_shifted_annihilates", op.is_zero(), None);
        } else {
            rep.push(format!("generator_{gi}_annihilates"), op.is_zero(), None);
        }
    }
    rep.finalize()
}

/// The scaling intertwiner between the y-picture and the lam-picture:
/// conjugation identity for every basis element at the operator level, and
/// the intertwining relation on sampled twisted sums over the quadrant
/// charts. Returns the invertible operator alongside the report.
pub fn phi_delta(family: &Family, delta: i64, seed: u64) -> (IntertwinerOp, Report) {
    let fam = MinRepFamily::new(family);
    let mut rep = Report::new("scaling_intertwiner", fam.label(), seed);
    for i in 0..fam.alg.dim() {
        let got = fam.phi_conjugate(fam.drho_basis(i));
        rep.push(
            format!("conjugates_{}", fam.alg.basis_name(i)),
            got == *fam.dpi_basis(i),
            None,
        );
    }
    let charts = quadrant_family(family, &["lam"], false);
    let mut smp = Sampler::new(seed);
    for ch in &charts {
        let famq = MinRepFamily::with_chart(family, ch);
        let op = phi_op(&famq, delta);
        let idxs = model_idxs(&famq);
        let picks = [
            famq.alg.idx_e,
            famq.alg.idx_h,
            famq.alg.idx_f,
            famq.alg.vbar_idx[0],
            famq.alg.v_idx[0],
        ];
        for &bi in &picks {
            let f = TwistedSum::term(TwistedTerm::new(ch, sample_model_poly(ch, &idxs, &mut smp)));
            let lhs = op.apply(&f.apply(famq.drho_basis(bi)), &charts);
            let rhs = op.apply(&f, &charts).apply(famq.dpi_basis(bi));
            rep.push(
                format!("intertwines_{}_{}", famq.alg.basis_name(bi), ch.name),
                lhs.sub(&rhs).is_zero(),
                None,
            );
        }
    }
    (phi_op(&fam, delta), rep.finalize())
}

/// The non-trivial Weyl element: conjugation by (swap then phase) realizes
/// the adjoint action on every basis element, and applying the operator
/// twice agrees with the stored square operator on twisted sums.
pub fn weyl_w1_action(family: &Family, seed: u64) -> Report {
    let half = match family {
        Family::G2 => false,
        Family::Sl(3) => true,
        Family::So(p, 3) => p % 2 == 0,
        _ => panic!("w1 action implemented for g2, sl(3) and so(p,3)"),
    };
    let variant = match family {
        Family::Sl(3) => MinVariant::SlHalf,
        _ => MinVariant::Plain,
    };
    // operator-level conjugation needs an invertible a-coordinate
    let mut coords = min_coords(family);
    for c in coords.iter_mut() {
        if c.0 == "a" {
            c.1 = true;
        }
    }
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    let ch = chart("l2w1", &borrowed);
    let fam = MinRepFamily::with_chart(family, &ch);
    let mut rep = Report::new("weyl_w1", fam.label(), seed);
    let wt = WeylTables::new(&fam.alg, &fam.bg);
    let vars = ch.vars.clone();
    let (a_idx, _) = fam.lagrangian_coords();
    let p = fam
        .n_poly
        .mul(&LaurentPoly::var_named(&vars, "lam").invert_monomial())
        .mul(&LaurentPoly::var(&vars, a_idx).invert_monomial())
        .scale(&-&Scalar::i());
    for i in 0..fam.alg.dim() {
        let lhs = fam.phase_conjugate(&fam.swap_conjugate(fam.dpi_basis(i)), &p);
        let target = wt.apply(&wt.w1, &fam.alg, &fam.alg.basis_elt(i, &vars));
        rep.push(
            format!("conjugates_{}", fam.alg.basis_name(i)),
            lhs == fam.dpi_min(&target),
            None,
        );
    }
    // twisted-sum consistency of the square
    let charts = quadrant_family(family, &["lam", "a"], true);
    let famq = MinRepFamily::with_chart(family, &charts[0]);
    let w1 = w1_op(&famq, half);
    let sq = &square_ops(&famq, variant)[1];
    let mut smp = Sampler::new(seed + 1);
    for ch in &charts {
        let idxs = model_idxs(&famq);
        for k in 0..2 {
            let f = TwistedSum::term(TwistedTerm::new(ch, sample_model_poly(ch, &idxs, &mut smp)));
            let twice = w1.apply(&w1.apply(&f, &charts), &charts);
            let once = sq.apply(&f, &charts);
            rep.push(
                format!("square_consistency_{}_{k}", ch.name),
                twice.sub(&once).is_zero(),
                None,
            );
        }
    }
    rep.finalize()
}

/// The squares of the Weyl candidates: flip-conjugation realizes the
/// squared adjoint action on every basis element, each square operator
/// squares to a quadrant-independent scalar, and the family-specific
/// lowest-K-type / central-character values hold.
pub fn weyl_squares_action(
    family: &Family,
    variant: MinVariant,
    seed: u64,
) -> (Vec<IntertwinerOp>, Report) {
    let fam = MinRepFamily::new(family);
    let mut rep = Report::new("weyl_squares", fam.label(), seed);
    let wt = WeylTables::new(&fam.alg, &fam.bg);
    let flips = square_flips(&fam);
    let mats = [&wt.w0, &wt.w1, &wt.w2];
    let vars = fam.chart.vars.clone();
    for (k, fl) in flips.iter().enumerate() {
        let sq_mat = mats[k].matmul(mats[k]);
        for i in 0..fam.alg.dim() {
            let lhs = fam.flip_conjugate(fam.dpi_basis(i), fl);
            let target = wt.apply(&sq_mat, &fam.alg, &fam.alg.basis_elt(i, &vars));
            rep.push(
                format!("w{k}sq_conjugates_{}", fam.alg.basis_name(i)),
                lhs == fam.dpi_min(&target),
                None,
            );
        }
    }
    let charts = quadrant_family(family, &["lam", "a"], false);
    let famq = MinRepFamily::with_chart(family, &charts[0]);
    let ops = square_ops(&famq, variant);
    let idxs = model_idxs(&famq);
    let mut smp = Sampler::new(seed + 1);
    // the fourth powers are central: the square of each square operator is
    // one scalar from {1, -1, i, -i}, the same on every quadrant
    for (k, op) in ops.iter().enumerate() {
        let cands = [
            Scalar::one(),
            -&Scalar::one(),
            Scalar::i(),
            -&Scalar::i(),
        ];
        let mut global: Option<Scalar> = None;
        let mut ok = true;
        for ch in &charts {
            let f = TwistedSum::term(TwistedTerm::new(ch, sample_model_poly(ch, &idxs, &mut smp)));
            let twice = op.apply(&op.apply(&f, &charts), &charts);
            let found = cands
                .iter()
                .find(|c| twice.sub(&f.scale(c)).is_zero())
                .cloned();
            match (&global, &found) {
                (_, None) => ok = false,
                (None, Some(c)) => global = Some(c.clone()),
                (Some(g), Some(c)) => {
                    if g != c {
                        ok = false;
                    }
                }
            }
        }
        rep.push(
            format!("w{k}sq_squared_is_scalar"),
            ok,
            global.map(|c| format!("scalar {c}")),
        );
    }
    match (&fam.kind, variant) {
        (MinKind::Generic, MinVariant::Plain) => {
            g2_lkt_checks(&mut rep);
        }
        (MinKind::Sl(_), MinVariant::SlInteger { eps }) => {
            // central character on the constant vector: (-1)^eps, 1, (-1)^eps
            let sgn = if eps % 2 == 1 {
                -&Scalar::one()
            } else {
                Scalar::one()
            };
            let expected = [sgn.clone(), Scalar::one(), sgn];
            for (k, op) in ops.iter().enumerate() {
                for ch in &charts {
                    let one = LaurentPoly::one(&ch.vars);
                    let f = TwistedSum::term(TwistedTerm::new(ch, one.clone()));
                    let res = op.apply(&f, &charts);
                    let tgt = TwistedSum::term(TwistedTerm::new(&res.chart, one.clone()))
                        .scale(&expected[k]);
                    rep.push(
                        format!("w{k}sq_constant_vector_{}", ch.name),
                        res.sub(&tgt).is_zero(),
                        None,
                    );
                }
            }
        }
        (MinKind::Sl(3), MinVariant::SlHalf) => {
            // genuinely half-integer case: each square operator squares to -1
            for (k, op) in ops.iter().enumerate() {
                for ch in &charts {
                    let f = TwistedSum::term(TwistedTerm::new(
                        ch,
                        sample_model_poly(ch, &idxs, &mut smp),
                    ));
                    let twice = op.apply(&op.apply(&f, &charts), &charts);
                    rep.push(
                        format!("w{k}sq_quaternionic_{}", ch.name),
                        twice.add(&f).is_zero(),
                        None,
                    );
                }
            }
        }
        _ => {}
    }
    (ops, rep.finalize())
}

fn flip_all(p: &LaurentPoly, flips: &[usize]) -> LaurentPoly {
    let vars = p.vars().clone();
    let mut out = LaurentPoly::zero(&vars);
    for (exps, c) in p.terms() {
        let mut total: i64 = 0;
        for &i in flips {
            assert!(exps[i].is_integer());
            total += exps[i].to_integer();
        }
        let s = if total.rem_euclid(2) == 1 { -c } else { c.clone() };
        out = out.add(&LaurentPoly::monomial(&vars, exps.clone(), s));
    }
    out
}

/// Exact polynomial checks of the square actions on the lowest-K-type frame
/// of the split g2 model. The frame vectors f_k (k = -1, 0, 1) are a common
/// invariant prefactor times radial profiles (P_k, Q_k) against the two
/// surviving Bessel-type generators; the prefactor pieces (squared radius,
/// phase and Bessel argument) are invariant under all three flips, so the
/// square actions reduce to polynomial identities on the profiles.
fn g2_lkt_checks(rep: &mut Report) {
    let vars = VarSet::new(&[("lam", false), ("a", false), ("c", false)]);
    let lam = LaurentPoly::var_named(&vars, "lam");
    let a = LaurentPoly::var_named(&vars, "a");
    let c = LaurentPoly::var_named(&vars, "c");
    let i = Scalar::i();
    let s2 = Scalar::sqrt2();
    let r = lam.mul(&lam).add(&a.mul(&a).scale(&Scalar::from_int(2)));
    let lm = lam.sub(&a.scale(&(&i * &s2)));
    let lp = lam.add(&a.scale(&(&i * &s2)));
    let arg = r.scale(&Scalar::from_int(2)).add(&c.mul(&c));
    // profiles for k = -1, 0, +1
    let profiles = [
        (
            lp.mul(&c).mul(&r),
            lp.mul(&arg).mul(&arg).scale(&(&s2 * &Scalar::rat(1, 4))),
        ),
        (r.mul(&r), LaurentPoly::zero(&vars)),
        (
            lm.mul(&c).mul(&r),
            lm.mul(&arg).mul(&arg).scale(&(&s2 * &Scalar::rat(-1, 4))),
        ),
    ];
    let li = vars.index_of("lam").unwrap();
    let ai = vars.index_of("a").unwrap();
    let ci = vars.index_of("c").unwrap();
    let flips = [vec![ai, ci], vec![li, ai], vec![li, ci]];
    let mults = [-1i64, 1, -1];
    // invariance of the prefactor pieces under the flips, checked by
    // cross-multiplying numerators and denominators
    let theta_n = a.mul(&c).mul(&c).mul(&c).neg();
    let theta_d = lam.mul(&r).scale(&Scalar::from_int(2));
    let s_n = arg.mul(&arg).mul(&arg);
    let s_d = r.mul(&r).scale(&Scalar::from_int(8));
    for (k, fl) in flips.iter().enumerate() {
        rep.push(
            format!("lkt_radius_invariant_w{k}sq"),
            flip_all(&r, fl).sub(&r).is_zero(),
            None,
        );
        let th = flip_all(&theta_n, fl)
            .mul(&theta_d)
            .sub(&theta_n.mul(&flip_all(&theta_d, fl)));
        rep.push(format!("lkt_phase_invariant_w{k}sq"), th.is_zero(), None);
        let sv = flip_all(&s_n, fl)
            .mul(&s_d)
            .sub(&s_n.mul(&flip_all(&s_d, fl)));
        rep.push(
            format!("lkt_bessel_argument_invariant_w{k}sq"),
            sv.is_zero(),
            None,
        );
    }
    // square actions on the frame: the flip with its constant multiplier
    // sends f_k to (-1)^(k-1) f_{-k}, (-1)^k f_k, -f_{-k} respectively
    let check_pair = |pk: &LaurentPoly,
                      qk: &LaurentPoly,
                      fl: &[usize],
                      m: i64,
                      pt: &LaurentPoly,
                      qt: &LaurentPoly,
                      s: i64| {
        flip_all(pk, fl)
            .scale(&Scalar::from_int(m))
            .sub(&pt.scale(&Scalar::from_int(s)))
            .is_zero()
            && flip_all(qk, fl)
                .scale(&Scalar::from_int(m))
                .sub(&qt.scale(&Scalar::from_int(s)))
                .is_zero()
    };
    for kk in 0..3usize {
        let k = kk as i64 - 1;
        let (pk, qk) = &profiles[kk];
        let (pm, qm) = &profiles[2 - kk];
        let s0 = if (k - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        rep.push(
            format!("lkt_w0sq_on_f{k}"),
            check_pair(pk, qk, &flips[0], mults[0], pm, qm, s0),
            None,
        );
        let s1 = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        rep.push(
            format!("lkt_w1sq_on_f{k}"),
            check_pair(pk, qk, &flips[1], mults[1], pk, qk, s1),
            None,
        );
        rep.push(
            format!("lkt_w2sq_on_f{k}"),
            check_pair(pk, qk, &flips[2], mults[2], pm, qm, -1),
            None,
        );
    }
    // central character extracted from the invariant line through f_1 + f_-1:
    // the values are 1, -1, -1
    let sp = profiles[0].0.add(&profiles[2].0);
    let sq = profiles[0].1.add(&profiles[2].1);
    let zetas = [1i64, -1, -1];
    for k in 0..3 {
        rep.push(
            format!("lkt_zeta_w{k}sq"),
            check_pair(&sp, &sq, &flips[k], mults[k], &sp, &sq, zetas[k]),
            None,
        );
    }
}

/// The y-picture action agrees with the parameter derivatives of the group
/// flow formulas: the torus flow (with the flow exponential as an invertible
/// chart variable) and the Heisenberg flow (with a polynomial flow
/// parameter), for the families with numeric weights.
pub fn verify_group_flows(family: &Family, seed: u64) -> Report {
    assert!(
        !matches!(family, Family::Sl(_)),
        "flow checks need numeric weights (the sl family has a formal parameter in the exponent)"
    );
    // torus flow: f goes to e^{ct} f(e^{-2t} lam, e^t y) with
    // c = 2s - dim/2 - 1; with u = e^t the derivative at any t is u d_u
    let mut coords = min_coords(family);
    coords.push(("u".to_string(), true));
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    let ch = chart("l2flow_h", &borrowed);
    let fam = MinRepFamily::with_chart(family, &ch);
    let mut rep = Report::new("group_flows", fam.label(), seed);
    let vars = ch.vars.clone();
    let u_i = vars.index_of("u").unwrap();
    let lam_i = vars.index_of("lam").unwrap();
    let (a_idx, z_idx) = fam.lagrangian_coords();
    let cexp = Expo::from(2) * fam.s_expo() - Expo::new(fam.dim_lambda(), 2) - Expo::from(1);
    let mut smp = Sampler::new(seed);
    let idxs = model_idxs(&fam);
    for t in 0..4 {
        let f = sample_model_poly(&ch, &idxs, &mut smp);
        let mut flowed = LaurentPoly::zero(&vars);
        for (exps, co) in f.terms() {
            let mut ne = exps.clone();
            let mut ue = cexp - exps[lam_i] * Expo::from(2) + exps[a_idx];
            for &zi in &z_idx {
                ue += exps[zi];
            }
            ne[u_i] = ue;
            flowed = flowed.add(&LaurentPoly::monomial(&vars, ne, co.clone()));
        }
        let lhs = flowed.partial(u_i).mul(&LaurentPoly::var(&vars, u_i));
        let rhs = fam.drho_basis(fam.alg.idx_h).apply_poly(&flowed);
        rep.push(
            format!("torus_flow_{t}"),
            lhs.sub(&rhs).is_zero(),
            None,
        );
    }
    // Heisenberg flow with a polynomial flow parameter
    let mut coords = min_coords(family);
    coords.push(("eps".to_string(), false));
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    let ch2 = chart("l2flow_n", &borrowed);
    let fam2 = MinRepFamily::with_chart(family, &ch2);
    let idxs2 = model_idxs(&fam2);
    for t in 0..4 {
        let mut zv = fam2.alg.zero_elt(&ch2.vars);
        for &vi in &fam2.alg.v_idx {
            zv = zv.add(&fam2.alg.basis_elt(vi, &ch2.vars).scale(&smp.rational()));
        }
        let tt = smp.rational();
        let f = sample_model_poly(&ch2, &idxs2, &mut smp);
        rep.push(
            format!("heisenberg_flow_{t}"),
            fam2.heis_flow_residual_is_zero(&zv, &tt, &f, "eps"),
            None,
        );
    }
    rep.finalize()
}

/// The central-element bridge between the Fourier-transformed non-compact
/// picture and the L2 model (g2): the explicit second-picture operator for
/// the barred central element, applied to the kernel function times a
/// y-only vector, equals the kernel times the y-picture action on the
/// vector.
pub fn verify_central_bbar_bridge(family: &Family, eps: i64, seed: u64) -> Report {
    assert!(
        matches!(family, Family::G2),
        "bridge check is set up for the g2 family"
    );
    let base = [
        ("lam", true),
        ("xa", true),
        ("xz0", false),
        ("ya", false),
        ("yz0", false),
    ];
    let charts = quadrant_charts("bbar", &base, &["xa"]);
    let mut rep = Report::new("central_bbar_bridge", family.label(), seed);
    let mut smp = Sampler::new(seed);
    for ch in &charts {
        let fam_x = MinRepFamily::with_frame(family, ch, "xa", "xz");
        let fam_y = MinRepFamily::with_frame(family, ch, "ya", "yz");
        let vars = ch.vars.clone();
        let lam = LaurentPoly::var_named(&vars, "lam");
        let xa = LaurentPoly::var_named(&vars, "xa");
        let ya = LaurentPoly::var_named(&vars, "ya");
        let lam_i = vars.index_of("lam").unwrap();
        let xa_i = vars.index_of("xa").unwrap();
        let ya_i = vars.index_of("ya").unwrap();
        let (_, xz_idx) = fam_x.lagrangian_coords();
        let (_, yz_idx) = fam_y.lagrangian_coords();
        let i = Scalar::i();
        let s = fam_x.s_scalar().clone();
        let d_lam = DiffOp::derivative_named(ch, "lam");
        let d_xa = DiffOp::derivative_named(ch, "xa");
        let d_ya = DiffOp::derivative_named(ch, "ya");
        let om_yb = ya.scale(&Scalar::from_int(2));
        let om_xb = xa.scale(&Scalar::from_int(2));
        let omd = om_yb.sub(&om_xb);
        let mut op = d_lam.scale_poly(&om_yb.mul(&lam)).neg();
        op = op.add(&d_xa.scale_poly(&om_yb.sub(&om_xb.scale(&Scalar::rat(1, 2))).mul(&om_xb)));
        let mut ex = DiffOp::zero(ch);
        for &xi in &xz_idx {
            ex = ex.add(&DiffOp::derivative(ch, xi).scale_poly(&LaurentPoly::var(&vars, xi)));
        }
        op = op.add(&ex.scale_poly(&omd));
        let mut yx = DiffOp::zero(ch);
        for (k, &xi) in xz_idx.iter().enumerate() {
            yx = yx.add(
                &DiffOp::derivative(ch, xi).scale_poly(&LaurentPoly::var(&vars, yz_idx[k])),
            );
        }
        op = op.add(&yx.scale_poly(&om_xb));
        op = op.add(&d_ya.scale_poly(&om_yb.mul(&om_yb).scale(&Scalar::rat(1, 2))));
        let mut ey = DiffOp::zero(ch);
        for &yi in &yz_idx {
            ey = ey.add(&DiffOp::derivative(ch, yi).scale_poly(&LaurentPoly::var(&vars, yi)));
        }
        op = op.add(&ey.scale_poly(&om_yb));
        let n_x = fam_x.n_poly.clone();
        let n_y = fam_y.n_poly.clone();
        let (_, b_elt) = fam_x.frame_ab();
        let om_mu = fam_x
            .alg
            .omega_form(&fam_x.alg.bracket(fam_x.mu_point(), &fam_y.z_point()), b_elt);
        let mut scal = n_x
            .scale(&Scalar::from_int(4))
            .add(&n_y.scale(&Scalar::from_int(2)))
            .add(&om_mu)
            .mul(&lam)
            .scale(&i);
        scal = scal.add(&omd.scale(&-&s));
        op = op.add(&DiffOp::from_poly(ch, &scal));
        // the kernel function in the x-coordinates
        let xi_phase = n_x
            .mul(&lam)
            .mul(&LaurentPoly::var(&vars, xa_i).invert_monomial())
            .scale(&i);
        let kernel = TwistedTerm::new(ch, LaurentPoly::one(&vars))
            .with_sgn(xa_i, eps)
            .with_abs(xa_i, fam_x.s_expo(), 0)
            .with_phase(&xi_phase);
        let bbar = fam_y.alg.bar_up(b_elt);
        let rho_b = fam_y.drho_min(&bbar);
        let mut idxs = vec![lam_i, ya_i];
        idxs.extend(yz_idx.iter().copied());
        for t in 0..3 {
            let u = sample_model_poly(ch, &idxs, &mut smp);
            let lhs = TwistedSum::term(kernel.mul_poly(&u)).apply(&op);
            let q = rho_b.apply_poly(&u);
            let rhs = TwistedSum::term(kernel.mul_poly(&q));
            rep.push(
                format!("bbar_bridge_{}_{t}", ch.name),
                lhs.sub(&rhs).is_zero(),
                None,
            );
        }
    }
    rep.finalize()
}

/// Every invertible substitution/multiplier operator composed with its
/// stored inverse is the identity on seeded twisted sums (with sign factors,
/// absolute-value powers and oscillatory phases) across all quadrants.
pub fn intertwiner_roundtrips(family: &Family, seed: u64) -> Report {
    let charts = quadrant_family(family, &["lam", "a"], true);
    let fam = MinRepFamily::with_chart(family, &charts[0]);
    let mut rep = Report::new("intertwiner_roundtrips", fam.label(), seed);
    let mut ops: Vec<IntertwinerOp> = vec![phi_op(&fam, 0), phi_op(&fam, 1)];
    match &fam.kind {
        MinKind::Generic => {
            ops.push(w1_op(&fam, false));
            ops.extend(square_ops(&fam, MinVariant::Plain));
        }
        MinKind::Sl(3) => {
            ops.push(w1_op(&fam, true));
            ops.extend(square_ops(&fam, MinVariant::SlInteger { eps: 0 }));
            ops.extend(square_ops(&fam, MinVariant::SlHalf));
        }
        MinKind::Sl(_) => {
            ops.extend(square_ops(&fam, MinVariant::SlInteger { eps: 1 }));
        }
        MinKind::So(p, q) => {
            if *q == 3 {
                ops.push(w1_op(&fam, p % 2 == 0));
            }
            ops.extend(square_ops(&fam, MinVariant::Plain));
        }
    }
    let mut smp = Sampler::new(seed);
    let (a_idx, _) = fam.lagrangian_coords();
    let lam_i = fam.chart.vars.index_of("lam").unwrap();
    let idxs = model_idxs(&fam);
    let mut count = 0usize;
    for op in &ops {
        let inv = op.inverse();
        for ch in &charts {
            for k in 0..3 {
                let vars = ch.vars.clone();
                let coeff = sample_model_poly(ch, &idxs, &mut smp);
                let f = TwistedSum::term(
                    TwistedTerm::new(ch, coeff)
                        .with_sgn(a_idx, (k % 2) as i64)
                        .with_abs(a_idx, Expo::from(1), 0)
                        .with_abs(lam_i, Expo::from(2), 0)
                        .with_phase(
                            &LaurentPoly::var(&vars, a_idx).mul(&LaurentPoly::var(&vars, lam_i)),
                        ),
                );
                let back = inv.apply(&op.apply(&f, &charts), &charts);
                count += 1;
                rep.push(
                    format!("roundtrip_{}_{}_{k}", op.name, ch.name),
                    back.sub(&f).is_zero(),
                    None,
                );
            }
        }
    }
    rep.push(
        "roundtrip_count_at_least_50",
        count >= 50,
        Some(format!("{count} round trips")),
    );
    rep.finalize()
}
