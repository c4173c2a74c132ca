//! Adjoint action of the three distinguished Weyl-group representatives:
//! w0 = exp((pi/2)(E - F)) and the pair w1, w2 adapted to the refined
//! grading. All three are stored as exact matrices on the chosen basis.

use super::{Algebra, Bigrading, Elt};
use crate::exactmath::{ExactMatrix, Scalar};
use crate::report::Report;

/// Values of the character chi of the compact-part component group on the
/// squares of the distinguished Weyl representatives.
pub const CHI_W0_SQUARED: i64 = 1;
pub const CHI_W1_SQUARED: i64 = -1;
pub const CHI_W2_SQUARED: i64 = -1;

pub struct WeylTables {
    pub w0: ExactMatrix,
    pub w1: ExactMatrix,
    pub w2: ExactMatrix,
}

fn coords(alg: &Algebra, e: &Elt) -> Vec<Scalar> {
    (0..alg.dim())
        .map(|i| e.coeffs[i].as_scalar().unwrap())
        .collect()
}

impl WeylTables {
    pub fn new(alg: &Algebra, bg: &Bigrading) -> WeylTables {
        let dim = alg.dim();
        let sv = alg.scalar_vars().clone();

        // Ad(w0): E -> -F, H -> -H, F -> -E, trivial on m,
        // Y -> -Ybar on g_{-1}, X -> Xbar on g_1.
        let mut w0 = ExactMatrix::zeros(dim, dim);
        let neg1 = Scalar::from_int(-1);
        w0.set(alg.idx_f, alg.idx_e, neg1.clone());
        w0.set(alg.idx_e, alg.idx_f, neg1.clone());
        w0.set(alg.idx_h, alg.idx_h, neg1.clone());
        for &mi in &alg.m_idx {
            w0.set(mi, mi, Scalar::one());
        }
        for a in 0..alg.dim_v() {
            w0.set(alg.vbar_idx[a], alg.v_idx[a], neg1.clone());
            w0.set(alg.v_idx[a], alg.vbar_idx[a], Scalar::one());
        }

        // Ad(w1) on the refined-grading basis of g.
        let sqrt2 = Scalar::sqrt2();
        let inv_sqrt2 = Scalar::one() / &sqrt2;
        let half = Scalar::rat(1, 2);
        let f = alg.elt_f(&sv);
        let e = alg.elt_e(&sv);
        let h = alg.elt_h(&sv);
        let mut src: Vec<Elt> = Vec::new();
        let mut img: Vec<Elt> = Vec::new();
        let mut push = |s: Elt, i: Elt| {
            src.push(s);
            img.push(i);
        };
        push(f.clone(), bg.b.scale(&-&inv_sqrt2));
        push(e.clone(), alg.bar_up(&bg.a).scale(&inv_sqrt2));
        push(bg.a.clone(), alg.bar_up(&bg.b).neg());
        push(alg.bar_up(&bg.a), e.scale(&-&sqrt2));
        push(bg.b.clone(), f.scale(&sqrt2));
        push(alg.bar_up(&bg.b), bg.a.neg());
        for v in &bg.j_basis {
            push(v.clone(), alg.b_mu(v, &bg.b).scale(&sqrt2));
            push(alg.bar_up(v), alg.bar_up(v));
            push(alg.b_mu(v, &bg.b), v.scale(&-&inv_sqrt2));
        }
        for w in &bg.jstar_basis {
            push(w.clone(), w.clone());
            push(alg.bar_up(w), alg.b_mu(&bg.a, w).scale(&sqrt2));
            push(alg.b_mu(&bg.a, w), alg.bar_up(w).scale(&-&inv_sqrt2));
        }
        push(h.clone(), bg.bmu_ab.add(&h.scale(&half)));
        push(
            bg.bmu_ab.clone(),
            bg.bmu_ab.scale(&Scalar::rat(-1, 2)).add(&h.scale(&Scalar::rat(3, 4))),
        );
        for t in &bg.m_o_basis {
            push(t.clone(), t.clone());
        }
        assert_eq!(src.len(), dim, "refined basis has wrong cardinality");
        let basis = ExactMatrix::from_fn(dim, dim, |r, c| coords(alg, &src[c])[r].clone());
        let images = ExactMatrix::from_fn(dim, dim, |r, c| coords(alg, &img[c])[r].clone());
        let w1 = images.matmul(&basis.inverse().expect("refined basis singular"));

        // Braid relation defines w2 = w1 w0 w1^{-1}.
        let w2 = w1
            .matmul(&w0)
            .matmul(&w1.inverse().expect("w1 not invertible"));

        WeylTables { w0, w1, w2 }
    }

    pub fn apply(&self, which: &ExactMatrix, alg: &Algebra, x: &Elt) -> Elt {
        let vars = x.vars().clone();
        let mut out = alg.zero_elt(&vars);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let c = which.get(i, j);
                if !c.is_zero() && !x.coeffs[j].is_zero() {
                    out.coeffs[i] = out.coeffs[i].add(&x.coeffs[j].scale(c));
                }
            }
        }
        out
    }

    /// Exact verification: automorphisms, squares, braid consequences, and
    /// the refined-grading shift of w1.
    pub fn verify(&self, alg: &Algebra, bg: &Bigrading) -> Report {
        let mut rep = Report::new("weyl", alg.name(), 0);
        let sv = alg.scalar_vars().clone();

        for (name, m) in [("w0", &self.w0), ("w1", &self.w1), ("w2", &self.w2)] {
            let mut auto = true;
            for i in 0..alg.dim() {
                for j in i + 1..alg.dim() {
                    let x = alg.basis_elt(i, &sv);
                    let y = alg.basis_elt(j, &sv);
                    let lhs = self.apply(m, alg, &alg.bracket(&x, &y));
                    let rhs = alg.bracket(&self.apply(m, alg, &x), &self.apply(m, alg, &y));
                    if !lhs.sub(&rhs).is_zero() {
                        auto = false;
                    }
                }
            }
            rep.push(format!("automorphism_{name}"), auto, None);
        }

        // Squares on V: w0^2 = -1 on odd grades; w1^2 = (a,v,w,b) ->
        // (a,-v,w,-b); w2^2 = (-a,v,-w,b) in refined coordinates.
        let sq = |m: &ExactMatrix| m.matmul(m);
        let w0sq = sq(&self.w0);
        let mut ok = true;
        for i in 0..alg.dim() {
            let x = alg.basis_elt(i, &sv);
            let expect = if alg.grade_of(i) % 2 == 0 {
                x.clone()
            } else {
                x.neg()
            };
            if !self.apply(&w0sq, alg, &x).sub(&expect).is_zero() {
                ok = false;
            }
        }
        rep.push("square_w0", ok, None);

        let w1sq = sq(&self.w1);
        let w2sq = sq(&self.w2);
        let layer_checks: Vec<(&Elt, i64, i64)> = {
            let mut v: Vec<(&Elt, i64, i64)> = vec![(&bg.a, 1, -1), (&bg.b, -1, 1)];
            for z in &bg.j_basis {
                v.push((z, -1, 1));
            }
            for w in &bg.jstar_basis {
                v.push((w, 1, -1));
            }
            v
        };
        let mut ok1 = true;
        let mut ok2 = true;
        for (x, s1, s2) in &layer_checks {
            let e1 = x.scale(&Scalar::from_int(*s1));
            let e2 = x.scale(&Scalar::from_int(*s2));
            if !self.apply(&w1sq, alg, x).sub(&e1).is_zero() {
                ok1 = false;
            }
            if !self.apply(&w2sq, alg, x).sub(&e2).is_zero() {
                ok2 = false;
            }
        }
        // chi on g_2: Ad(w1^2) E = -E = Ad(w2^2) E.
        let e = alg.elt_e(&sv);
        ok1 &= self.apply(&w1sq, alg, &e).add(&e).is_zero();
        ok2 &= self.apply(&w2sq, alg, &e).add(&e).is_zero();
        rep.push("square_w1", ok1, None);
        rep.push("square_w2", ok2, None);

        // Refined-grading shift: Ad(w1) g_{(i,j)} = g_{(i+j,-j)}, read off
        // through the eigenvalues of ad H_alpha and ad H_beta.
        let eig = |x: &Elt, h: &Elt| -> Option<Scalar> {
            let img = alg.bracket(h, x);
            let pivot = (0..alg.dim()).find(|&i| !x.coeffs[i].is_zero())?;
            let lam = &img.coeffs[pivot].as_scalar().unwrap()
                / &x.coeffs[pivot].as_scalar().unwrap();
            if img.sub(&x.scale(&lam)).is_zero() {
                Some(lam)
            } else {
                None
            }
        };
        let mut shift_ok = true;
        let mut sources: Vec<Elt> = vec![
            alg.elt_f(&sv),
            alg.elt_e(&sv),
            bg.a.clone(),
            bg.b.clone(),
            alg.bar_up(&bg.a),
            alg.bar_up(&bg.b),
        ];
        for z in bg.j_basis.iter().chain(&bg.jstar_basis) {
            sources.push(z.clone());
            sources.push(alg.bar_up(z));
            sources.push(alg.b_mu(z, &bg.b));
            sources.push(alg.b_mu(&bg.a, z));
        }
        for x in &sources {
            if x.is_zero() {
                continue;
            }
            let (i, j) = match (eig(x, &bg.h_alpha), eig(x, &bg.h_beta)) {
                (Some(i), Some(j)) => (i, j),
                _ => {
                    shift_ok = false;
                    continue;
                }
            };
            let y = self.apply(&self.w1, alg, x);
            match (eig(&y, &bg.h_alpha), eig(&y, &bg.h_beta)) {
                (Some(i2), Some(j2)) => {
                    if !(&i + &j - &i2).is_zero() || !(&j + &j2).is_zero() {
                        shift_ok = false;
                    }
                }
                _ => shift_ok = false,
            }
        }
        rep.push("w1_bigrade_shift", shift_ok, None);

        // Spot-check the w2 table obtained from the (A, B) -> (B, -A)
        // substitution in the w1 table.
        let sqrt2 = Scalar::sqrt2();
        let f = alg.elt_f(&sv);
        let c1 = self
            .apply(&self.w2, alg, &f)
            .sub(&bg.a.scale(&(Scalar::one() / &sqrt2)));
        let c2 = self.apply(&self.w2, alg, &bg.b).sub(&alg.bar_up(&bg.a));
        let c3 = self.apply(&self.w2, alg, &bg.a).add(&f.scale(&sqrt2));
        rep.push("w2_table_entries", c1.is_zero() && c2.is_zero() && c3.is_zero(), None);

        rep.finalize()
    }
}
