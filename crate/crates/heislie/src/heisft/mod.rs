//! Fourier calculus on the Heisenberg group of the symplectic space V.
//!
//! This module realizes the oscillator (Schrodinger) model of the Heisenberg
//! Lie algebra V + RF on functions of a Lagrangian subspace, the quadratic
//! action of the symplectic Levi factor m on the same space, exact symbol
//! rules for the partial Fourier transform in the central variable, and a
//! calculus of twisted distribution terms used to exhibit m-invariant
//! vectors and a Bernstein-Sato-type recursion for the meromorphic family
//! of twisted powers.

mod ft;
mod suites;
#[cfg(test)]
mod tests;
mod twisted;

pub use ft::{ft_chart, FtMap};
pub use suites::{
    bernstein_sato_suite, invariant_vector, verify_ft_of_systems, verify_ft_symbol_rules,
    verify_invariant_vector, verify_metaplectic, verify_sl_constant_vector,
    verify_sopq_invariant_vectors,
};
pub use twisted::{quadrant_charts, Radical, TwistedSum, TwistedTerm};

use crate::diffop::{chart, Chart, DiffOp};
use crate::exactmath::{LaurentPoly, Scalar};
use crate::liecore::{promote, Algebra, Bigrading, Elt};

/// Chart for the oscillator model: the central Fourier parameter `lam`
/// (invertible), the coordinate `a` along the distinguished Lagrangian line,
/// and coordinates `z0..` along the Jordan part of the Lagrangian.
pub fn schro_chart(alg: &Algebra, bg: &Bigrading) -> Chart {
    let _ = alg;
    let mut coords: Vec<(String, bool)> = vec![("lam".to_string(), true), ("a".to_string(), false)];
    for i in 0..bg.j_basis.len() {
        coords.push((format!("z{i}"), false));
    }
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    chart("oscillator", &borrowed)
}

/// The oscillator model on one chart: a frame identifying chart coordinates
/// with the Lagrangian basis (A, j_0, ..), and a central parameter monomial
/// (usually lam, or -lam for the transposed model).
pub struct SchroCtx {
    pub alg: Algebra,
    pub chart: Chart,
    pub lam: LaurentPoly,
    pub a_idx: usize,
    pub z_idx: Vec<usize>,
    a_elt: Elt,
    b_elt: Elt,
    j_basis: Vec<Elt>,
    j_dual: Vec<Elt>,
    bmu_ab: Elt,
}

impl SchroCtx {
    pub fn new(
        alg: &Algebra,
        bg: &Bigrading,
        ch: &Chart,
        lam: LaurentPoly,
        a_name: &str,
        z_names: &[String],
    ) -> SchroCtx {
        let vars = ch.vars.clone();
        assert_eq!(z_names.len(), bg.j_basis.len(), "frame size mismatch");
        SchroCtx {
            alg: alg.clone(),
            chart: ch.clone(),
            lam,
            a_idx: vars.index_of(a_name).expect("missing frame coordinate"),
            z_idx: z_names
                .iter()
                .map(|n| vars.index_of(n).expect("missing frame coordinate"))
                .collect(),
            a_elt: promote(&bg.a, &vars),
            b_elt: promote(&bg.b, &vars),
            j_basis: bg.j_basis.iter().map(|e| promote(e, &vars)).collect(),
            j_dual: bg.j_dual.iter().map(|e| promote(e, &vars)).collect(),
            bmu_ab: promote(&bg.bmu_ab, &vars),
        }
    }

    /// The model on the chart built by `schro_chart`, with central
    /// parameter lam.
    pub fn standard(alg: &Algebra, bg: &Bigrading, ch: &Chart) -> SchroCtx {
        let z: Vec<String> = (0..bg.j_basis.len()).map(|i| format!("z{i}")).collect();
        SchroCtx::new(
            alg,
            bg,
            ch,
            LaurentPoly::var_named(&ch.vars, "lam"),
            "a",
            &z,
        )
    }

    fn i_lam(&self) -> LaurentPoly {
        self.lam.scale(&Scalar::i())
    }

    fn inv_2i_lam(&self) -> LaurentPoly {
        self.lam
            .scale(&(&Scalar::i() * &Scalar::from_int(2)))
            .invert_monomial()
    }

    /// The Jordan part of the Lagrangian point, sum z_i j_i.
    pub fn z_point(&self) -> Elt {
        let vars = &self.chart.vars;
        let mut z = self.alg.zero_elt(vars);
        for (k, &zi) in self.z_idx.iter().enumerate() {
            z = z.add(&self.j_basis[k].scale_poly(&LaurentPoly::var(vars, zi)));
        }
        z
    }

    /// The full Lagrangian point a A + sum z_i j_i.
    pub fn x_point(&self) -> Elt {
        let vars = &self.chart.vars;
        self.z_point()
            .add(&self.a_elt.scale_poly(&LaurentPoly::var(vars, self.a_idx)))
    }

    /// Decompose a V-element into Lagrangian coordinates (c_A, c_{j_i}) and
    /// the complementary-Lagrangian part c_B B + w, with w in the span of
    /// the dual Jordan basis.
    fn split(&self, x: &Elt) -> (LaurentPoly, Vec<LaurentPoly>, LaurentPoly, Elt) {
        let half = Scalar::rat(1, 2);
        let ca = self.alg.omega_form(x, &self.b_elt).scale(&half);
        let cb = self.alg.omega_form(x, &self.a_elt).scale(&-&half);
        let zc: Vec<LaurentPoly> = self
            .j_dual
            .iter()
            .map(|jd| self.alg.omega_form(x, jd))
            .collect();
        let mut w = x.sub(&self.a_elt.scale_poly(&ca)).sub(&self.b_elt.scale_poly(&cb));
        for (i, c) in zc.iter().enumerate() {
            w = w.sub(&self.j_basis[i].scale_poly(c));
        }
        (ca, zc, cb, w)
    }

    /// Directional derivative along a Lagrangian vector v = c_A A + sum c_i j_i.
    pub fn dir_lambda(&self, v: &Elt) -> DiffOp {
        let (ca, zc, cb, w) = self.split(v);
        assert!(
            cb.is_zero() && w.is_zero(),
            "direction must lie in the Lagrangian"
        );
        let mut op = DiffOp::derivative(&self.chart, self.a_idx).scale_poly(&ca);
        for (k, &zi) in self.z_idx.iter().enumerate() {
            op = op.add(&DiffOp::derivative(&self.chart, zi).scale_poly(&zc[k]));
        }
        op
    }

    /// The oscillator action of x in V + RF:
    /// derivative along the Lagrangian part, multiplication by
    /// i lam omega(complement part, point) for the rest, and i lam for the
    /// central generator.
    pub fn dsigma(&self, x: &Elt) -> DiffOp {
        for (i, c) in x.coeffs.iter().enumerate() {
            assert!(
                c.is_zero() || self.alg.v_idx.contains(&i) || i == self.alg.idx_f,
                "oscillator action is defined on V and the center only"
            );
        }
        let vars = &self.chart.vars;
        let cf = x.coeffs[self.alg.idx_f].clone();
        let mut xv = x.clone();
        xv.coeffs[self.alg.idx_f] = LaurentPoly::zero(vars);
        let (ca, zc, cb, w) = self.split(&xv);
        let mut op = DiffOp::derivative(&self.chart, self.a_idx)
            .scale_poly(&ca)
            .neg();
        for (k, &zi) in self.z_idx.iter().enumerate() {
            op = op.sub(&DiffOp::derivative(&self.chart, zi).scale_poly(&zc[k]));
        }
        let a_var = LaurentPoly::var(vars, self.a_idx);
        let mult = cb
            .mul(&a_var)
            .scale(&Scalar::from_int(-2))
            .add(&self.alg.omega_form(&w, &self.z_point()))
            .add(&cf);
        op.add(&DiffOp::from_poly(&self.chart, &mult.mul(&self.i_lam())))
    }

    /// The quadratic action of T in m, in closed form. T is decomposed into
    /// the eigenspaces of ad B_mu(A, B) on m (eigenvalues +1, 0, -1) and
    /// each piece acts by its own display.
    pub fn dmet(&self, t: &Elt) -> DiffOp {
        for (i, c) in t.coeffs.iter().enumerate() {
            assert!(
                c.is_zero() || self.alg.m_idx.contains(&i),
                "quadratic action is defined on m only"
            );
        }
        let half = Scalar::rat(1, 2);
        let n1 = self.alg.bracket(&self.bmu_ab, t);
        let n2 = self.alg.bracket(&self.bmu_ab, &n1);
        let t_plus = n2.add(&n1).scale(&half);
        let t_minus = n2.sub(&n1).scale(&half);
        let t_zero = t.sub(&t_plus).sub(&t_minus);
        self.dmet_plus(&t_plus)
            .add(&self.dmet_zero(&t_zero))
            .add(&self.dmet_minus(&t_minus))
    }

    /// T mapping the dual Jordan space into the Jordan space:
    /// (1/2i lam) sum omega(T jd_a, jd_b) d_{z_a} d_{z_b} - (1/2) omega(TB, z) d_a.
    fn dmet_plus(&self, t: &Elt) -> DiffOp {
        let half = Scalar::rat(1, 2);
        let mut op = DiffOp::zero(&self.chart);
        for (a, &za) in self.z_idx.iter().enumerate() {
            let tja = self.alg.bracket(t, &self.j_dual[a]);
            for (b, &zb) in self.z_idx.iter().enumerate() {
                let c = self.alg.omega_form(&tja, &self.j_dual[b]);
                if !c.is_zero() {
                    op = op.add(
                        &DiffOp::derivative(&self.chart, za)
                            .compose(&DiffOp::derivative(&self.chart, zb))
                            .scale_poly(&c),
                    );
                }
            }
        }
        op = op.scale_poly(&self.inv_2i_lam());
        let tb = self.alg.bracket(t, &self.b_elt);
        let c = self
            .alg
            .omega_form(&tb, &self.z_point())
            .scale(&half);
        op.sub(&DiffOp::derivative(&self.chart, self.a_idx).scale_poly(&c))
    }

    /// T preserving the Lagrangian:
    /// -(1/2) omega(TA, B) a d_a - d_{Tz} - (1/2) tr(T on the Lagrangian).
    fn dmet_zero(&self, t: &Elt) -> DiffOp {
        let vars = &self.chart.vars;
        let half = Scalar::rat(1, 2);
        let a_var = LaurentPoly::var(vars, self.a_idx);
        let ta = self.alg.bracket(t, &self.a_elt);
        let c_aa = self.alg.omega_form(&ta, &self.b_elt).scale(&half);
        let mut op = DiffOp::derivative(&self.chart, self.a_idx)
            .scale_poly(&c_aa.mul(&a_var))
            .neg();
        let tz = self.alg.bracket(t, &self.z_point());
        op = op.sub(&self.dir_lambda(&tz));
        let mut tr = c_aa;
        for (i, j) in self.j_basis.iter().enumerate() {
            tr = tr.add(&self.alg.omega_form(&self.alg.bracket(t, j), &self.j_dual[i]));
        }
        op.sub(&DiffOp::from_poly(&self.chart, &tr.scale(&half)))
    }

    /// T mapping the Jordan space into its dual:
    /// -a d_{TA} + (1/2) i lam omega(Tz, z).
    fn dmet_minus(&self, t: &Elt) -> DiffOp {
        let vars = &self.chart.vars;
        let half = Scalar::rat(1, 2);
        let a_var = LaurentPoly::var(vars, self.a_idx);
        let ta = self.alg.bracket(t, &self.a_elt);
        let z = self.z_point();
        let mult = self
            .alg
            .omega_form(&self.alg.bracket(t, &z), &z)
            .mul(&self.i_lam())
            .scale(&half);
        self.dir_lambda(&ta)
            .scale_poly(&a_var)
            .neg()
            .add(&DiffOp::from_poly(&self.chart, &mult))
    }

    /// The quadratic action from its basis-independent definition,
    /// (1/2i lam) sum_{ab} omega(T ehat_a, ehat_b) dsigma(e_a) dsigma(e_b)
    /// over a V-basis (e_a) with symplectic dual (ehat_a).
    pub fn dmet_defn(&self, t: &Elt) -> DiffOp {
        let vars = &self.chart.vars;
        let duals = crate::confsys::dual_basis_elts(&self.alg, &self.chart);
        let dsig: Vec<DiffOp> = self
            .alg
            .v_idx
            .iter()
            .map(|&i| self.dsigma(&self.alg.basis_elt(i, vars)))
            .collect();
        let mut op = DiffOp::zero(&self.chart);
        for (a, da) in duals.iter().enumerate() {
            let tda = self.alg.bracket(t, da);
            for (b, db) in duals.iter().enumerate() {
                let c = self.alg.omega_form(&tda, db);
                if !c.is_zero() {
                    op = op.add(&dsig[a].compose(&dsig[b]).scale_poly(&c));
                }
            }
        }
        op.scale_poly(&self.inv_2i_lam())
    }
}

/// The oscillator action of a Heisenberg algebra element (free-function alias
/// for `SchroCtx::dsigma`).
pub fn schrodinger_action(ctx: &SchroCtx, x: &Elt) -> DiffOp {
    ctx.dsigma(x)
}

/// The quadratic action of a Levi element (free-function alias for
/// `SchroCtx::dmet`).
pub fn metaplectic_action(ctx: &SchroCtx, t: &Elt) -> DiffOp {
    ctx.dmet(t)
}

/// The symbol map of the partial Fourier transform in the central variable
/// (free-function alias for `FtMap::new`).
pub fn ft_symbol_rules(alg: &Algebra, bg: &Bigrading, src: &Chart, dst: &Chart) -> FtMap {
    FtMap::new(alg, bg, src, dst)
}
