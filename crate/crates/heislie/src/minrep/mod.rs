//! The L2-model action of the minimal representation.
//!
//! The representation lives on functions of the Fourier parameter `lam`
//! (invertible) and coordinates of the Lagrangian a A + sum z_i j_i. Every
//! basis element of the graded algebra acts by an exact differential
//! operator of order at most three; the tables split into three shapes:
//! a generic one (simple Levi factor), the sl(n) family with a formal
//! parameter r, and the so(p,q) family where the Jordan line through P and
//! its complement carry different constants. Alongside the lam-picture
//! action `dpi`, the module implements the y-picture action `drho` and the
//! exact conjugations relating the two (the scaling intertwiner) and
//! implementing the non-trivial Weyl element and the squares of the Weyl
//! candidates, both as differential-operator conjugations and as invertible
//! substitution/multiplier operators on twisted terms.

mod suites;
#[cfg(test)]
mod tests;

pub use suites::{
    intertwiner_roundtrips, phi_delta, verify_central_bbar_bridge, verify_group_flows,
    verify_joseph_annihilation, verify_minrep_homomorphism, weyl_squares_action, weyl_w1_action,
};

use num::Signed;

use crate::diffop::{chart, Chart, DiffOp};
use crate::exactmath::{Expo, LaurentPoly, Scalar};
use crate::heisft::{SchroCtx, TwistedSum};
use crate::liecore::{promote, Algebra, Bigrading, Elt, Family, GradedLieAlgebra};

/// Which operator table a family uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinKind {
    /// Simple Levi factor (g2 at desk scale): constants from s_min.
    Generic,
    /// sl(n) with the formal inducing parameter r as a chart variable.
    Sl(usize),
    /// so(p,q): the Jordan line R P and its complement carry different
    /// constants; the table parameter is s = -1.
    So(usize, usize),
}

/// Chart coordinates of the L2 model: invertible `lam`, the Lagrangian
/// coordinates `a`, `z0..`, and for sl(n) the formal parameter `r`.
pub fn min_coords(family: &Family) -> Vec<(String, bool)> {
    let nj = match family {
        Family::G2 => 1,
        Family::Sl(n) => n - 3,
        Family::So(p, q) => p + q - 5,
    };
    let mut coords: Vec<(String, bool)> = vec![("lam".to_string(), true), ("a".to_string(), false)];
    for i in 0..nj {
        coords.push((format!("z{i}"), false));
    }
    if matches!(family, Family::Sl(_)) {
        coords.push(("r".to_string(), false));
    }
    coords
}

/// The default chart of the L2 model.
pub fn min_chart(family: &Family) -> Chart {
    let coords = min_coords(family);
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    chart("l2model", &borrowed)
}

/// One family of the minimal representation on one chart: the algebra, the
/// refined grading frames promoted to the chart, and the full tables of
/// basis-element actions in both pictures.
pub struct MinRepFamily {
    pub alg: Algebra,
    pub bg: Bigrading,
    pub chart: Chart,
    pub kind: MinKind,
    ctx: SchroCtx,
    a_idx: usize,
    z_idx: Vec<usize>,
    a_elt: Elt,
    b_elt: Elt,
    j_basis: Vec<Elt>,
    j_dual: Vec<Elt>,
    p_elt: Option<Elt>,
    q_elt: Option<Elt>,
    /// Table constant (s_min generic, 0 for sl, -1 for so).
    s: Scalar,
    s_expo: Expo,
    dim_lambda: i64,
    /// Formal parameter r for sl(n).
    r_poly: Option<LaurentPoly>,
    /// The cubic norm n(x') of the Jordan point sum z_i j_i.
    pub n_poly: LaurentPoly,
    /// The dual cubic operator n(d'): third-order constant-coefficient
    /// operator whose z-symbol is the dual Jordan norm on the omega-dual
    /// frame, coefficients (1/2) omega(A, B_Psi(jhat, jhat, jhat)).
    nd_op: DiffOp,
    /// mu of the Jordan point, an m-element with quadratic coefficients.
    mu_z: Elt,
    dpi_tab: Vec<DiffOp>,
    drho_tab: Vec<DiffOp>,
}

impl MinRepFamily {
    pub fn new(family: &Family) -> MinRepFamily {
        let ch = min_chart(family);
        MinRepFamily::with_chart(family, &ch)
    }

    /// Build on a caller-supplied chart containing the standard coordinate
    /// names (extra coordinates are allowed and ignored).
    pub fn with_chart(family: &Family, ch: &Chart) -> MinRepFamily {
        MinRepFamily::with_frame(family, ch, "a", "z")
    }

    /// Build with custom frame names: the Lagrangian coordinates are
    /// `a_name` and `{z_prefix}0..`; `lam` (and `r` for sl) keep their
    /// standard names.
    pub fn with_frame(family: &Family, ch: &Chart, a_name: &str, z_prefix: &str) -> MinRepFamily {
        let alg = GradedLieAlgebra::construct(family);
        let bg = Bigrading::new(&alg);
        let vars = ch.vars.clone();
        let nj = bg.j_basis.len();
        let z_names: Vec<String> = (0..nj).map(|i| format!("{z_prefix}{i}")).collect();
        let ctx = SchroCtx::new(
            &alg,
            &bg,
            ch,
            LaurentPoly::var_named(&vars, "lam"),
            a_name,
            &z_names,
        );
        let kind = match family {
            Family::G2 => MinKind::Generic,
            Family::Sl(n) => MinKind::Sl(*n),
            Family::So(p, q) => MinKind::So(*p, *q),
        };
        let s = match kind {
            MinKind::Generic => bg.s_min(),
            MinKind::Sl(_) => Scalar::zero(),
            MinKind::So(_, _) => -&Scalar::one(),
        };
        let sr = s
            .as_rational()
            .expect("table constant must be rational")
            .clone();
        let s_expo = Expo::new(
            i64::try_from(sr.numer()).expect("small rational"),
            i64::try_from(sr.denom()).expect("small rational"),
        );
        let a_idx = vars.index_of(a_name).expect("missing frame coordinate");
        let z_idx: Vec<usize> = z_names
            .iter()
            .map(|n| vars.index_of(n).expect("missing frame coordinate"))
            .collect();
        let r_poly = match kind {
            MinKind::Sl(_) => Some(LaurentPoly::var_named(&vars, "r")),
            _ => None,
        };
        let z_pt = ctx.z_point();
        let n_poly = bg.norm_j(&alg, &z_pt);
        // n(d') pairs the coordinate derivatives with the symmetric cubic
        // built on the omega-dual basis of the Jordan block: the coefficient
        // of d_{z_a} d_{z_b} d_{z_c} summed over ordered triples is
        // (1/2) omega(A, B_Psi(jhat_a, jhat_b, jhat_c)).
        let a_frame = promote(&bg.a, &vars);
        let j_dual: Vec<Elt> = bg.j_dual.iter().map(|e| promote(e, &vars)).collect();
        let half = &Scalar::one() / &Scalar::from_int(2);
        let mut nd_op = DiffOp::zero(ch);
        for al in 0..nj {
            for be in 0..nj {
                for ga in 0..nj {
                    let w = alg.b_psi(&j_dual[al], &j_dual[be], &j_dual[ga]);
                    let c = alg.omega_form(&a_frame, &w);
                    if c.is_zero() {
                        continue;
                    }
                    let mut mi = vec![0u64; vars.len()];
                    mi[z_idx[al]] += 1;
                    mi[z_idx[be]] += 1;
                    mi[z_idx[ga]] += 1;
                    nd_op.add_term(mi, c.scale(&half));
                }
            }
        }
        let mu_z = alg.mu(&z_pt);
        let mut fam = MinRepFamily {
            alg: alg.clone(),
            chart: ch.clone(),
            kind,
            ctx,
            a_idx,
            z_idx,
            a_elt: promote(&bg.a, &vars),
            b_elt: promote(&bg.b, &vars),
            j_basis: bg.j_basis.iter().map(|e| promote(e, &vars)).collect(),
            j_dual: bg.j_dual.iter().map(|e| promote(e, &vars)).collect(),
            p_elt: bg.p_elt.as_ref().map(|e| promote(e, &vars)),
            q_elt: bg.q_elt.as_ref().map(|e| promote(e, &vars)),
            s,
            s_expo,
            dim_lambda: bg.dim_lambda() as i64,
            r_poly,
            n_poly,
            nd_op,
            mu_z,
            dpi_tab: Vec::new(),
            drho_tab: Vec::new(),
            bg,
        };
        fam.dpi_tab = (0..alg.dim()).map(|i| fam.dpi_basis_row(i)).collect();
        fam.drho_tab = (0..alg.dim()).map(|i| fam.drho_basis_row(i)).collect();
        fam
    }

    pub fn label(&self) -> String {
        self.alg.name()
    }

    pub fn dim_lambda(&self) -> i64 {
        self.dim_lambda
    }

    pub fn s_scalar(&self) -> &Scalar {
        &self.s
    }

    /// The frame elements (A, B) promoted to the chart.
    pub fn frame_ab(&self) -> (&Elt, &Elt) {
        (&self.a_elt, &self.b_elt)
    }

    /// The Lagrangian point a A + sum z_i j_i.
    pub fn x_point(&self) -> Elt {
        self.ctx.x_point()
    }

    /// The Jordan part sum z_i j_i of the Lagrangian point.
    pub fn z_point(&self) -> Elt {
        self.ctx.z_point()
    }

    /// mu of the Jordan point (an m-element with quadratic coefficients).
    pub fn mu_point(&self) -> &Elt {
        &self.mu_z
    }

    /// Directional derivative along a Lagrangian element (public wrapper).
    pub fn dir_op(&self, v: &Elt) -> DiffOp {
        self.dir(v)
    }

    /// Residual pinning the dual-cubic operator coefficients: the symbol of
    /// n(d') on the z-coordinates, i.e. the ordered-triple sum of
    /// (1/2) omega(A, B_Psi(jhat, jhat, jhat)) z_a z_b z_c, must equal the
    /// dual Jordan norm n*(sum z_a jhat_a) computed independently from the
    /// quadratic covariant. Returns their difference.
    pub fn norm_dual_display_residual(&self) -> LaurentPoly {
        let vars = self.vars();
        let half = Scalar::rat(1, 2);
        let mut cand = LaurentPoly::zero(vars);
        let mut w_pt = self.alg.zero_elt(vars);
        for (al, &za) in self.z_idx.iter().enumerate() {
            w_pt = w_pt.add(&self.j_dual[al].scale_poly(&LaurentPoly::var(vars, za)));
            for (be, &zb) in self.z_idx.iter().enumerate() {
                for (ga, &zc) in self.z_idx.iter().enumerate() {
                    let bp = self
                        .alg
                        .b_psi(&self.j_dual[al], &self.j_dual[be], &self.j_dual[ga]);
                    let c = self.omega(&self.a_elt, &bp).scale(&half);
                    let m = LaurentPoly::var(vars, za)
                        .mul(&LaurentPoly::var(vars, zb))
                        .mul(&LaurentPoly::var(vars, zc));
                    cand = cand.add(&c.mul(&m));
                }
            }
        }
        cand.sub(&self.bg.norm_jstar(&self.alg, &w_pt))
    }

    /// Exact check of the Heisenberg flow: the parameter derivative of
    /// phase(e) * f(lam, y - e z') equals the action of z + tF applied to
    /// the flowed vector, as twisted sums, for the one-parameter subgroup
    /// through (z, t) with flow parameter named `eps`.
    pub fn heis_flow_residual_is_zero(&self, zv: &Elt, t: &Scalar, f: &LaurentPoly, eps: &str) -> bool {
        let vars = self.vars();
        let ei = vars.index_of(eps).expect("missing flow parameter");
        let evar = LaurentPoly::var(vars, ei);
        let (ca, zc, cb, w) = self.split(zv);
        let zprime = self.lag_part(&ca, &zc);
        let zsec = self.b_elt.scale_poly(&cb).add(&w);
        let y = self.ctx.x_point();
        let om1 = self.omega(&zsec, &y);
        let om2 = self.omega(&zprime, &zsec);
        let phase = evar
            .scale(t)
            .add(&evar.mul(&om1))
            .add(
                &evar
                    .mul(&evar)
                    .mul(&om2)
                    .scale(&Scalar::rat(1, 2)),
            )
            .mul(&self.lam())
            .scale(&Self::i());
        let mut coeff = f.clone();
        let a_var = LaurentPoly::var(vars, self.a_idx);
        coeff = coeff.subst_var(self.a_idx, &a_var.sub(&evar.mul(&ca)));
        for (k, &zi) in self.z_idx.iter().enumerate() {
            let zvp = LaurentPoly::var(vars, zi);
            coeff = coeff.subst_var(zi, &zvp.sub(&evar.mul(&zc[k])));
        }
        let term = crate::heisft::TwistedTerm::new(&self.chart, coeff).with_phase(&phase);
        let sum = TwistedSum::term(term);
        let gen = zv.add(&self.alg.elt_f(vars).scale(t));
        let lhs = sum.derivative(ei);
        let rhs = sum.apply(&self.drho_min(&gen));
        lhs.sub(&rhs).is_zero()
    }

    pub fn s_expo(&self) -> Expo {
        self.s_expo
    }

    pub fn lagrangian_coords(&self) -> (usize, Vec<usize>) {
        (self.a_idx, self.z_idx.clone())
    }

    // --- small operator builders ---

    fn vars(&self) -> &crate::exactmath::Vars {
        &self.chart.vars
    }

    fn lam(&self) -> LaurentPoly {
        LaurentPoly::var_named(self.vars(), "lam")
    }

    fn lam_inv(&self) -> LaurentPoly {
        self.lam().invert_monomial()
    }

    fn dlam(&self) -> DiffOp {
        DiffOp::derivative_named(&self.chart, "lam")
    }

    fn d_a(&self) -> DiffOp {
        DiffOp::derivative(&self.chart, self.a_idx)
    }

    /// Euler operator over the full Lagrangian (a and z).
    fn euler_full(&self) -> DiffOp {
        let vars = self.vars();
        let mut op = self
            .d_a()
            .scale_poly(&LaurentPoly::var(vars, self.a_idx));
        for &zi in &self.z_idx {
            op = op.add(&DiffOp::derivative(&self.chart, zi).scale_poly(&LaurentPoly::var(vars, zi)));
        }
        op
    }

    /// Euler operator over the Jordan coordinates only.
    fn euler_j(&self) -> DiffOp {
        let vars = self.vars();
        let mut op = DiffOp::zero(&self.chart);
        for &zi in &self.z_idx {
            op = op.add(&DiffOp::derivative(&self.chart, zi).scale_poly(&LaurentPoly::var(vars, zi)));
        }
        op
    }

    fn const_op(&self, p: &LaurentPoly) -> DiffOp {
        DiffOp::from_poly(&self.chart, p)
    }

    fn cnum(&self, s: Scalar) -> LaurentPoly {
        LaurentPoly::constant(self.vars(), s)
    }

    fn omega(&self, x: &Elt, y: &Elt) -> LaurentPoly {
        self.alg.omega_form(x, y)
    }

    /// Directional derivative along a Lagrangian element (polynomial
    /// coefficients allowed, multiplied on the left).
    fn dir(&self, v: &Elt) -> DiffOp {
        self.ctx.dir_lambda(v)
    }

    /// Decompose a V-element: Lagrangian coordinates (c_A, c_{j_i}) and the
    /// complementary part c_B B + w with w in the dual Jordan span.
    fn split(&self, x: &Elt) -> (LaurentPoly, Vec<LaurentPoly>, LaurentPoly, Elt) {
        let half = Scalar::rat(1, 2);
        let ca = self.omega(x, &self.b_elt).scale(&half);
        let cb = self.omega(x, &self.a_elt).scale(&-&half);
        let zc: Vec<LaurentPoly> = self.j_dual.iter().map(|jd| self.omega(x, jd)).collect();
        let mut w = x
            .sub(&self.a_elt.scale_poly(&ca))
            .sub(&self.b_elt.scale_poly(&cb));
        for (i, c) in zc.iter().enumerate() {
            w = w.sub(&self.j_basis[i].scale_poly(c));
        }
        (ca, zc, cb, w)
    }

    /// The Lagrangian part of a V-element as an element.
    fn lag_part(&self, ca: &LaurentPoly, zc: &[LaurentPoly]) -> Elt {
        let mut v = self.a_elt.scale_poly(ca);
        for (i, c) in zc.iter().enumerate() {
            v = v.add(&self.j_basis[i].scale_poly(c));
        }
        v
    }

    /// Trace of an m-element on the Lagrangian.
    fn tr_lambda(&self, t: &Elt) -> LaurentPoly {
        let half = Scalar::rat(1, 2);
        let mut tr = self
            .omega(&self.alg.bracket(t, &self.a_elt), &self.b_elt)
            .scale(&half);
        for (i, j) in self.j_basis.iter().enumerate() {
            tr = tr.add(&self.omega(&self.alg.bracket(t, j), &self.j_dual[i]));
        }
        tr
    }

    /// sum_{ab} omega(T jhat_a, jhat_b) d_{z_a} d_{z_b} for an m-element T
    /// (polynomial coefficients allowed).
    fn jj_op(&self, t: &Elt) -> DiffOp {
        let mut op = DiffOp::zero(&self.chart);
        for (a, &za) in self.z_idx.iter().enumerate() {
            let tja = self.alg.bracket(t, &self.j_dual[a]);
            for (b, &zb) in self.z_idx.iter().enumerate() {
                let c = self.omega(&tja, &self.j_dual[b]);
                if !c.is_zero() {
                    op = op.add(
                        &DiffOp::derivative(&self.chart, za)
                            .compose(&DiffOp::derivative(&self.chart, zb))
                            .scale_poly(&c),
                    );
                }
            }
        }
        op
    }

    /// Split a Jordan element v into its component along the distinguished
    /// line R P and the remainder (so(p,q) only).
    fn split_j_line(&self, v: &Elt) -> (Elt, Elt) {
        let p = self.p_elt.as_ref().expect("so-family frame");
        let q = self.q_elt.as_ref().expect("so-family frame");
        let v0 = p.scale_poly(&self.omega(v, q));
        (v0.clone(), v.sub(&v0))
    }

    /// Split a dual-Jordan element w into its component along R Q and the
    /// remainder (so(p,q) only).
    fn split_jstar_line(&self, w: &Elt) -> (Elt, Elt) {
        let p = self.p_elt.as_ref().expect("so-family frame");
        let q = self.q_elt.as_ref().expect("so-family frame");
        let w0 = q.scale_poly(&self.omega(w, p).neg());
        (w0.clone(), w.sub(&w0))
    }

    fn i() -> Scalar {
        Scalar::i()
    }

    fn half_dim_lambda(&self) -> Scalar {
        Scalar::rat(self.dim_lambda, 2)
    }

    /// (n - 2r) as a chart polynomial (sl only).
    fn n_minus_2r(&self) -> LaurentPoly {
        let n = match self.kind {
            MinKind::Sl(n) => n as i64,
            _ => panic!("sl-family parameter"),
        };
        LaurentPoly::int(self.vars(), n).sub(
            &self
                .r_poly
                .as_ref()
                .expect("sl-family parameter")
                .scale(&Scalar::from_int(2)),
        )
    }

    // --- the y-picture table ---

    fn drho_basis_row(&self, i: usize) -> DiffOp {
        let alg = self.alg.clone();
        let vars = self.vars();
        let x = alg.basis_elt(i, vars);
        if i == alg.idx_f || alg.v_idx.contains(&i) {
            return self.ctx.dsigma(&x);
        }
        if alg.m_idx.contains(&i) {
            return match self.kind {
                MinKind::Generic | MinKind::So(_, _) => self.ctx.dmet(&x),
                MinKind::Sl(n) => {
                    // -d_{Ty} - ((n - 2r)/(2n)) tr(T|Lambda)
                    let ty = alg.bracket(&x, &self.ctx.x_point());
                    let c = self
                        .n_minus_2r()
                        .mul(&self.tr_lambda(&x))
                        .scale(&Scalar::rat(1, 2 * n as i64));
                    self.dir(&ty).neg().sub(&self.const_op(&c))
                }
            };
        }
        if i == alg.idx_h {
            return match self.kind {
                MinKind::Generic | MinKind::So(_, _) => {
                    // d_y - 2 lam d_lam + 2s - dim(Lambda)/2 - 1
                    let c = &(&self.s * &Scalar::from_int(2)) - &self.half_dim_lambda();
                    let c = &c - &Scalar::one();
                    self.euler_full()
                        .sub(&self.dlam().scale_poly(&self.lam().scale(&Scalar::from_int(2))))
                        .add(&self.const_op(&self.cnum(c)))
                }
                MinKind::Sl(_) => {
                    // d_y - 2 lam d_lam - (n - 2r)/2
                    self.euler_full()
                        .sub(&self.dlam().scale_poly(&self.lam().scale(&Scalar::from_int(2))))
                        .sub(&self.const_op(&self.n_minus_2r().scale(&Scalar::rat(1, 2))))
                }
            };
        }
        if i == alg.idx_e {
            return self.row_e_rho();
        }
        assert!(alg.vbar_idx.contains(&i), "basis index out of range");
        let down = alg.bar_down(&x);
        let (ca, zc, cb, w) = self.split(&down);
        match self.kind {
            MinKind::Sl(_) => {
                // i (d_lam + (n-2r-2)/(2 lam)) d_v + omega(y, w)(d_y - lam d_lam)
                let v = self.lag_part(&ca, &zc);
                let wfull = self.b_elt.scale_poly(&cb).add(&w);
                let dv = self.dir(&v);
                let c = self
                    .n_minus_2r()
                    .sub(&LaurentPoly::int(self.vars(), 2))
                    .mul(&self.lam_inv())
                    .scale(&(&Self::i() * &Scalar::rat(1, 2)));
                let mut op = self.dlam().compose(&dv).scale(&Self::i());
                op = op.add(&dv.scale_poly(&c));
                let om = self.omega(&self.ctx.x_point(), &wfull);
                op.add(
                    &self
                        .euler_full()
                        .sub(&self.dlam().scale_poly(&self.lam()))
                        .scale_poly(&om),
                )
            }
            MinKind::Generic => {
                let v = self.jordan_part(&zc);
                let mut op = self.row_abar_rho().scale_poly(&ca);
                op = op.add(&self.row_vbar_rho_generic(&v));
                op = op.add(&self.row_wbar_rho_generic(&w));
                op.add(&self.row_bbar_rho().scale_poly(&cb))
            }
            MinKind::So(_, _) => {
                let v = self.jordan_part(&zc);
                let mut op = self.row_abar_rho().scale_poly(&ca);
                op = op.add(&self.row_vbar_rho_so(&v));
                op = op.add(&self.row_wbar_rho_so(&w));
                op.add(&self.row_bbar_rho().scale_poly(&cb))
            }
        }
    }

    fn jordan_part(&self, zc: &[LaurentPoly]) -> Elt {
        let mut v = self.alg.zero_elt(self.vars());
        for (i, c) in zc.iter().enumerate() {
            v = v.add(&self.j_basis[i].scale_poly(c));
        }
        v
    }

    /// i d_lam d_A + ((s - dim/2)/(i lam)) d_A - (2/lam^2) n(d').
    fn row_abar_rho(&self) -> DiffOp {
        let c = &(&self.s - &self.half_dim_lambda()) * &-&Self::i();
        self.dlam()
            .compose(&self.d_a())
            .scale(&Self::i())
            .add(&self.d_a().scale_poly(&self.lam_inv().scale(&c)))
            .sub(
                &self
                    .nd_op
                    .scale_poly(&self.lam_inv().mul(&self.lam_inv()).scale(&Scalar::from_int(2))),
            )
    }

    /// Generic row for v in the Jordan part of the Lagrangian.
    fn row_vbar_rho_generic(&self, v: &Elt) -> DiffOp {
        // i d_lam d_v + ((3s+1)/(i lam)) d_v + (1/2) omega(mu(y') v, B) d_A
        //   - (1/(i lam)) sum omega(B_mu(y', v) jhat, jhat) dz dz
        let dv = self.dir(v);
        let c1 = &(&(&self.s * &Scalar::from_int(3)) + &Scalar::one()) * &-&Self::i();
        let mut op = self.dlam().compose(&dv).scale(&Self::i());
        op = op.add(&dv.scale_poly(&self.lam_inv().scale(&c1)));
        let mub = self
            .omega(&self.alg.bracket(&self.mu_z, v), &self.b_elt)
            .scale(&Scalar::rat(1, 2));
        op = op.add(&self.d_a().scale_poly(&mub));
        let bm = self.alg.b_mu(&self.ctx.z_point(), v);
        op.add(&self.jj_op(&bm).scale_poly(&self.lam_inv().scale(&Self::i())))
    }

    /// Generic row for w in the complement of the Lagrangian (dual Jordan).
    fn row_wbar_rho_generic(&self, w: &Elt) -> DiffOp {
        // -omega(y,w) lam d_lam + omega(y,w) d_y + 2s omega(y,w)
        //   + d_{mu(y') w} + (i a / lam) sum omega(B_mu(A, w) jhat, jhat) dz dz
        let om = self.omega(&self.ctx.x_point(), w);
        let mut op = self
            .dlam()
            .scale_poly(&om.mul(&self.lam()))
            .neg();
        op = op.add(&self.euler_full().scale_poly(&om));
        op = op.add(&self.const_op(&om.scale(&(&self.s * &Scalar::from_int(2)))));
        op = op.add(&self.dir(&self.alg.bracket(&self.mu_z, w)));
        let bm = self.alg.b_mu(&self.a_elt, w);
        let a_var = LaurentPoly::var(self.vars(), self.a_idx);
        op.add(
            &self
                .jj_op(&bm)
                .scale_poly(&a_var.mul(&self.lam_inv()).scale(&Self::i())),
        )
    }

    /// -omega(y,B) lam d_lam + omega(y,B) d_y + s omega(y,B) + 2 i lam n(y').
    fn row_bbar_rho(&self) -> DiffOp {
        let om = self.omega(&self.ctx.x_point(), &self.b_elt);
        let mut op = self.dlam().scale_poly(&om.mul(&self.lam())).neg();
        op = op.add(&self.euler_full().scale_poly(&om));
        op = op.add(&self.const_op(&om.scale(&self.s)));
        op.add(&self.const_op(&self.n_poly.mul(&self.lam()).scale(&(&Self::i() * &Scalar::from_int(2)))))
    }

    /// so(p,q) row for v in the Jordan part: the first-order constant splits
    /// over R P and its complement.
    fn row_vbar_rho_so(&self, v: &Elt) -> DiffOp {
        let dv = self.dir(v);
        let mut op = self.dlam().compose(&dv).scale(&Self::i());
        let mub = self
            .omega(&self.alg.bracket(&self.mu_z, v), &self.b_elt)
            .scale(&Scalar::rat(1, 2));
        op = op.add(&self.d_a().scale_poly(&mub));
        let bm = self.alg.b_mu(&self.ctx.z_point(), v);
        op = op.add(&self.jj_op(&bm).scale_poly(&self.lam_inv().scale(&Self::i())));
        // + (s-1)/(i lam) d_{v0} + (s - dim/2 + 1)/(i lam) d_{v1}
        let (v0, v1) = self.split_j_line(v);
        let c0 = &(&self.s - &Scalar::one()) * &-&Self::i();
        let c1h = &(&self.s - &self.half_dim_lambda()) + &Scalar::one();
        let c1 = &c1h * &-&Self::i();
        op = op.add(&self.dir(&v0).scale_poly(&self.lam_inv().scale(&c0)));
        op.add(&self.dir(&v1).scale_poly(&self.lam_inv().scale(&c1)))
    }

    /// so(p,q) row for w in the dual Jordan part.
    fn row_wbar_rho_so(&self, w: &Elt) -> DiffOp {
        let om = self.omega(&self.ctx.x_point(), w);
        let mut op = self.dlam().scale_poly(&om.mul(&self.lam())).neg();
        op = op.add(&self.euler_full().scale_poly(&om));
        op = op.add(&self.dir(&self.alg.bracket(&self.mu_z, w)));
        let bm = self.alg.b_mu(&self.a_elt, w);
        let a_var = LaurentPoly::var(self.vars(), self.a_idx);
        op = op.add(
            &self
                .jj_op(&bm)
                .scale_poly(&a_var.mul(&self.lam_inv()).scale(&Self::i())),
        );
        // + (s - dim/2 + 1) omega(y, w0) + (s-1) omega(y, w1)
        let (w0, w1) = self.split_jstar_line(w);
        let c0 = &(&self.s - &self.half_dim_lambda()) + &Scalar::one();
        let c1 = &self.s - &Scalar::one();
        let om0 = self.omega(&self.ctx.x_point(), &w0).scale(&c0);
        let om1 = self.omega(&self.ctx.x_point(), &w1).scale(&c1);
        op.add(&self.const_op(&om0.add(&om1)))
    }

    fn row_e_rho(&self) -> DiffOp {
        let vars = self.vars();
        let a_var = LaurentPoly::var(vars, self.a_idx);
        match self.kind {
            MinKind::Sl(_) => {
                // i (lam d_lam^2 - d_lam d_y - ((n-2r-2)/(2 lam)) d_y + ((n-2r)/2) d_lam)
                let n2 = self.n_minus_2r();
                let n2m2 = n2.sub(&LaurentPoly::int(vars, 2));
                let mut op = self
                    .dlam()
                    .compose(&self.dlam())
                    .scale_poly(&self.lam().scale(&Self::i()));
                op = op.sub(&self.dlam().compose(&self.euler_full()).scale(&Self::i()));
                op = op.sub(
                    &self
                        .euler_full()
                        .scale_poly(&n2m2.mul(&self.lam_inv()).scale(&(&Self::i() * &Scalar::rat(1, 2)))),
                );
                op.add(&self.dlam().scale_poly(&n2.scale(&(&Self::i() * &Scalar::rat(1, 2)))))
            }
            MinKind::Generic => {
                // i lam d_lam^2 - i a d_lam d_A - i d_lam d_{y'} - 5 i s d_lam
                //  + i (4s+1)/lam a d_A + n(y') d_A + (2 a / lam^2) n(d')
                //  - i s dim / lam + i (3s+1)/lam d_{y'} - (i/2 lam) sum omega(mu(y') jhat, jhat) dz dz
                let s = self.s.clone();
                let i = Self::i();
                let mut op = self
                    .dlam()
                    .compose(&self.dlam())
                    .scale_poly(&self.lam().scale(&i));
                op = op.sub(
                    &self
                        .dlam()
                        .compose(&self.d_a())
                        .scale_poly(&a_var.scale(&i)),
                );
                op = op.sub(&self.dlam().compose(&self.euler_j()).scale(&i));
                op = op.sub(&self.dlam().scale(&(&(&i * &s) * &Scalar::from_int(5))));
                let c4 = &(&(&s * &Scalar::from_int(4)) + &Scalar::one()) * &i;
                op = op.add(&self.d_a().scale_poly(&a_var.mul(&self.lam_inv()).scale(&c4)));
                op = op.add(&self.d_a().scale_poly(&self.n_poly));
                op = op.add(
                    &self.nd_op.scale_poly(
                        &a_var
                            .mul(&self.lam_inv())
                            .mul(&self.lam_inv())
                            .scale(&Scalar::from_int(2)),
                    ),
                );
                let cdim = &(&(-&i) * &s) * &Scalar::from_int(self.dim_lambda);
                op = op.add(&self.const_op(&self.lam_inv().scale(&cdim)));
                let c3 = &(&(&s * &Scalar::from_int(3)) + &Scalar::one()) * &i;
                op = op.add(&self.euler_j().scale_poly(&self.lam_inv().scale(&c3)));
                op.sub(
                    &self
                        .jj_op(&self.mu_z)
                        .scale_poly(&self.lam_inv().scale(&(&i * &Scalar::rat(1, 2)))),
                )
            }
            MinKind::So(_, _) => {
                // i lam d_lam^2 - i a d_lam d_A - i d_lam d_{y'}
                //  - i (2s - dim/2 - 1) d_lam + i (s - dim/2)/lam a d_A
                //  + n(y') d_A + (2 a / lam^2) n(d')
                //  + i (s-1)(s - dim/2 + 1)/lam + i (s-1)/lam d_{y0'}
                //  + i (s - dim/2 + 1)/lam d_{y1'} - (i/2 lam) sum omega(mu jhat, jhat) dz dz
                let s = self.s.clone();
                let i = Self::i();
                let hd = self.half_dim_lambda();
                let mut op = self
                    .dlam()
                    .compose(&self.dlam())
                    .scale_poly(&self.lam().scale(&i));
                op = op.sub(
                    &self
                        .dlam()
                        .compose(&self.d_a())
                        .scale_poly(&a_var.scale(&i)),
                );
                op = op.sub(&self.dlam().compose(&self.euler_j()).scale(&i));
                let ch = &(&(&s * &Scalar::from_int(2)) - &hd) - &Scalar::one();
                op = op.sub(&self.dlam().scale(&(&i * &ch)));
                let ca = &(&s - &hd) * &i;
                op = op.add(&self.d_a().scale_poly(&a_var.mul(&self.lam_inv()).scale(&ca)));
                op = op.add(&self.d_a().scale_poly(&self.n_poly));
                op = op.add(
                    &self.nd_op.scale_poly(
                        &a_var
                            .mul(&self.lam_inv())
                            .mul(&self.lam_inv())
                            .scale(&Scalar::from_int(2)),
                    ),
                );
                let s1 = &s - &Scalar::one();
                let s2 = &(&s - &hd) + &Scalar::one();
                let cc = &(&i * &s1) * &s2;
                op = op.add(&self.const_op(&self.lam_inv().scale(&cc)));
                // split Euler of the Jordan coordinates over R P and the rest
                let (z0, z1) = self.split_j_line(&self.ctx.z_point());
                op = op.add(&self.dir(&z0).scale_poly(&self.lam_inv().scale(&(&i * &s1))));
                op = op.add(&self.dir(&z1).scale_poly(&self.lam_inv().scale(&(&i * &s2))));
                op.sub(
                    &self
                        .jj_op(&self.mu_z)
                        .scale_poly(&self.lam_inv().scale(&(&i * &Scalar::rat(1, 2)))),
                )
            }
        }
    }

    // --- the lam-picture table ---

    fn dpi_basis_row(&self, i: usize) -> DiffOp {
        let alg = self.alg.clone();
        let vars = self.vars();
        let x = alg.basis_elt(i, vars);
        let a_var = LaurentPoly::var(vars, self.a_idx);
        if i == alg.idx_f {
            return self.const_op(&self.lam().scale(&Self::i()));
        }
        if alg.v_idx.contains(&i) {
            // -lam d_v on the Lagrangian part, -i omega(x, w) on the rest
            let (ca, zc, cb, w) = self.split(&x);
            let v = self.lag_part(&ca, &zc);
            let wfull = self.b_elt.scale_poly(&cb).add(&w);
            let om = self.omega(&self.ctx.x_point(), &wfull);
            return self
                .dir(&v)
                .scale_poly(&self.lam())
                .neg()
                .add(&self.const_op(&om.scale(&-&Self::i())));
        }
        if alg.m_idx.contains(&i) {
            return match self.kind {
                MinKind::Sl(n) => {
                    let tx = alg.bracket(&x, &self.ctx.x_point());
                    let c = self
                        .n_minus_2r()
                        .mul(&self.tr_lambda(&x))
                        .scale(&Scalar::rat(1, 2 * n as i64));
                    self.dir(&tx).neg().sub(&self.const_op(&c))
                }
                MinKind::Generic | MinKind::So(_, _) => {
                    // eigenspace split under ad B_mu(A,B): +1, 0, -1
                    let bmu_ab = self.alg.b_mu(&self.a_elt, &self.b_elt);
                    let half = Scalar::rat(1, 2);
                    let n1 = alg.bracket(&bmu_ab, &x);
                    let n2 = alg.bracket(&bmu_ab, &n1);
                    let t_plus = n2.add(&n1).scale(&half);
                    let t_minus = n2.sub(&n1).scale(&half);
                    let t_zero = x.sub(&t_plus).sub(&t_minus);
                    // plus: -(i lam / 2) sum omega(T jhat, jhat) dz dz - (1/2) omega(TB, x') d_A
                    let mut op = self
                        .jj_op(&t_plus)
                        .scale_poly(&self.lam().scale(&(&-&Self::i() * &half)));
                    let tb = alg.bracket(&t_plus, &self.b_elt);
                    let c = self.omega(&tb, &self.ctx.z_point()).scale(&half);
                    op = op.sub(&self.d_a().scale_poly(&c));
                    // zero: -d_{Tx} - (1/2) tr(T|Lambda)
                    let tx = alg.bracket(&t_zero, &self.ctx.x_point());
                    op = op.sub(&self.dir(&tx));
                    op = op.sub(&self.const_op(&self.tr_lambda(&t_zero).scale(&half)));
                    // minus: -a d_{TA} + (i / 2 lam) omega(T x', x')
                    let ta = alg.bracket(&t_minus, &self.a_elt);
                    op = op.sub(&self.dir(&ta).scale_poly(&a_var));
                    let z = self.ctx.z_point();
                    let m = self
                        .omega(&alg.bracket(&t_minus, &z), &z)
                        .mul(&self.lam_inv())
                        .scale(&(&Self::i() * &half));
                    op.add(&self.const_op(&m))
                }
            };
        }
        if i == alg.idx_h {
            let c = match self.kind {
                MinKind::Sl(_) => self.n_minus_2r().scale(&Scalar::rat(1, 2)),
                _ => self.cnum(Scalar::rat(self.dim_lambda + 2, 2)),
            };
            return self
                .euler_full()
                .neg()
                .sub(&self.dlam().scale_poly(&self.lam().scale(&Scalar::from_int(2))))
                .sub(&self.const_op(&c));
        }
        if i == alg.idx_e {
            return self.row_e_pi();
        }
        assert!(alg.vbar_idx.contains(&i), "basis index out of range");
        let down = alg.bar_down(&x);
        let (ca, zc, cb, w) = self.split(&down);
        match self.kind {
            MinKind::Sl(_) => {
                // i (lam d_lam + d_x + (n-2r)/2) d_v - omega(x, w) d_lam
                let v = self.lag_part(&ca, &zc);
                let wfull = self.b_elt.scale_poly(&cb).add(&w);
                let k = self.sl_k_op();
                let om = self.omega(&self.ctx.x_point(), &wfull);
                k.compose(&self.dir(&v))
                    .scale(&Self::i())
                    .sub(&self.dlam().scale_poly(&om))
            }
            MinKind::Generic => {
                let v = self.jordan_part(&zc);
                let mut op = self.row_abar_pi().scale_poly(&ca);
                op = op.add(&self.row_vbar_pi_generic(&v));
                op = op.add(&self.row_wbar_pi_generic(&w));
                op.add(&self.row_bbar_pi().scale_poly(&cb))
            }
            MinKind::So(_, _) => {
                let v = self.jordan_part(&zc);
                let mut op = self.row_abar_pi().scale_poly(&ca);
                op = op.add(&self.row_vbar_pi_so(&v));
                op = op.add(&self.row_wbar_pi_so(&w));
                op.add(&self.row_bbar_pi().scale_poly(&cb))
            }
        }
    }

    /// lam d_lam + d_x + (n-2r)/2 (sl only).
    fn sl_k_op(&self) -> DiffOp {
        self.dlam()
            .scale_poly(&self.lam())
            .add(&self.euler_full())
            .add(&self.const_op(&self.n_minus_2r().scale(&Scalar::rat(1, 2))))
    }

    /// i lam d_lam d_A + i d_x d_A + i (dim+2)/2 d_A - 2 lam n(d').
    fn row_abar_pi(&self) -> DiffOp {
        let i = Self::i();
        let mut op = self
            .dlam()
            .compose(&self.d_a())
            .scale_poly(&self.lam().scale(&i));
        op = op.add(&self.euler_full().compose(&self.d_a()).scale(&i));
        op = op.add(&self.d_a().scale(&(&i * &Scalar::rat(self.dim_lambda + 2, 2))));
        op.sub(&self.nd_op.scale_poly(&self.lam().scale(&Scalar::from_int(2))))
    }

    fn row_vbar_pi_generic(&self, v: &Elt) -> DiffOp {
        // i lam d_lam d_v + i d_x d_v - 2 i s d_v
        //   + (1/(2 lam)) omega(mu(x') v, B) d_A + i sum omega(B_mu(x',v) jhat, jhat) dz dz
        let i = Self::i();
        let dv = self.dir(v);
        let mut op = self.dlam().compose(&dv).scale_poly(&self.lam().scale(&i));
        op = op.add(&self.euler_full().compose(&dv).scale(&i));
        op = op.sub(&dv.scale(&(&(&i * &self.s) * &Scalar::from_int(2))));
        let mub = self
            .omega(&self.alg.bracket(&self.mu_z, v), &self.b_elt)
            .mul(&self.lam_inv())
            .scale(&Scalar::rat(1, 2));
        op = op.add(&self.d_a().scale_poly(&mub));
        let bm = self.alg.b_mu(&self.ctx.z_point(), v);
        op.add(&self.jj_op(&bm).scale(&i))
    }

    fn row_wbar_pi_generic(&self, w: &Elt) -> DiffOp {
        // -omega(x,w) d_lam + (s/lam) omega(x,w) + (1/lam) d_{mu(x') w}
        //   + i a sum omega(B_mu(A,w) jhat, jhat) dz dz
        let om = self.omega(&self.ctx.x_point(), w);
        let mut op = self.dlam().scale_poly(&om).neg();
        op = op.add(&self.const_op(&om.mul(&self.lam_inv()).scale(&self.s)));
        op = op.add(
            &self
                .dir(&self.alg.bracket(&self.mu_z, w))
                .scale_poly(&self.lam_inv()),
        );
        let bm = self.alg.b_mu(&self.a_elt, w);
        let a_var = LaurentPoly::var(self.vars(), self.a_idx);
        op.add(&self.jj_op(&bm).scale_poly(&a_var.scale(&Self::i())))
    }

    /// -omega(x,B) d_lam + (2 i / lam^2) n(x').
    fn row_bbar_pi(&self) -> DiffOp {
        let om = self.omega(&self.ctx.x_point(), &self.b_elt);
        let c = self
            .n_poly
            .mul(&self.lam_inv())
            .mul(&self.lam_inv())
            .scale(&(&Self::i() * &Scalar::from_int(2)));
        self.dlam().scale_poly(&om).neg().add(&self.const_op(&c))
    }

    fn row_vbar_pi_so(&self, v: &Elt) -> DiffOp {
        // i lam d_lam d_v + i d_x d_v + (1/(2 lam)) omega(mu(x') v, B) d_A
        //   + i sum omega(B_mu(x',v) jhat, jhat) dz dz
        //   + 2 i d_{v0} + i (dim/2) d_{v1}
        let i = Self::i();
        let dv = self.dir(v);
        let mut op = self.dlam().compose(&dv).scale_poly(&self.lam().scale(&i));
        op = op.add(&self.euler_full().compose(&dv).scale(&i));
        let mub = self
            .omega(&self.alg.bracket(&self.mu_z, v), &self.b_elt)
            .mul(&self.lam_inv())
            .scale(&Scalar::rat(1, 2));
        op = op.add(&self.d_a().scale_poly(&mub));
        let bm = self.alg.b_mu(&self.ctx.z_point(), v);
        op = op.add(&self.jj_op(&bm).scale(&i));
        let (v0, v1) = self.split_j_line(v);
        op = op.add(&self.dir(&v0).scale(&(&i * &Scalar::from_int(2))));
        op.add(&self.dir(&v1).scale(&(&i * &self.half_dim_lambda())))
    }

    fn row_wbar_pi_so(&self, w: &Elt) -> DiffOp {
        // -omega(x,w) d_lam + (1/lam) d_{mu(x') w}
        //   + i a sum omega(B_mu(A,w) jhat, jhat) dz dz
        //   - ((dim-2)/(2 lam)) omega(x,w0) - (1/lam) omega(x,w1)
        let om = self.omega(&self.ctx.x_point(), w);
        let mut op = self.dlam().scale_poly(&om).neg();
        op = op.add(
            &self
                .dir(&self.alg.bracket(&self.mu_z, w))
                .scale_poly(&self.lam_inv()),
        );
        let bm = self.alg.b_mu(&self.a_elt, w);
        let a_var = LaurentPoly::var(self.vars(), self.a_idx);
        op = op.add(&self.jj_op(&bm).scale_poly(&a_var.scale(&Self::i())));
        let (w0, w1) = self.split_jstar_line(w);
        let c0 = Scalar::rat(self.dim_lambda - 2, 2);
        let om0 = self.omega(&self.ctx.x_point(), &w0).scale(&c0);
        let om1 = self.omega(&self.ctx.x_point(), &w1);
        op.sub(&self.const_op(&om0.add(&om1).mul(&self.lam_inv())))
    }

    fn row_e_pi(&self) -> DiffOp {
        let vars = self.vars();
        let a_var = LaurentPoly::var(vars, self.a_idx);
        let i = Self::i();
        match self.kind {
            MinKind::Sl(_) => self.sl_k_op().compose(&self.dlam()).scale(&i),
            MinKind::Generic => {
                // i lam d_lam^2 + i d_lam d_x - 3 i s d_lam + (n(x')/lam^2) d_A
                //   + 2 a n(d') - (i s (dim - 1)/3) / lam - (i s / lam) d_{x'}
                //   - (i / 2 lam) sum omega(mu(x') jhat, jhat) dz dz
                let s = self.s.clone();
                let mut op = self
                    .dlam()
                    .compose(&self.dlam())
                    .scale_poly(&self.lam().scale(&i));
                op = op.add(&self.dlam().compose(&self.euler_full()).scale(&i));
                op = op.sub(&self.dlam().scale(&(&(&i * &s) * &Scalar::from_int(3))));
                op = op.add(
                    &self
                        .d_a()
                        .scale_poly(&self.n_poly.mul(&self.lam_inv()).mul(&self.lam_inv())),
                );
                op = op.add(&self.nd_op.scale_poly(&a_var.scale(&Scalar::from_int(2))));
                let cc = &(&(-&i) * &s) * &Scalar::rat(self.dim_lambda - 1, 3);
                op = op.add(&self.const_op(&self.lam_inv().scale(&cc)));
                op = op.add(&self.euler_j().scale_poly(&self.lam_inv().scale(&(&(-&i) * &s))));
                op.sub(
                    &self
                        .jj_op(&self.mu_z)
                        .scale_poly(&self.lam_inv().scale(&(&i * &Scalar::rat(1, 2)))),
                )
            }
            MinKind::So(_, _) => {
                // i lam d_lam^2 + i d_lam d_x + i ((dim+2)/2) d_lam
                //   + (n(x')/lam^2) d_A + 2 a n(d')
                //   + i (dim-2)/(2 lam) + i (dim-2)/(2 lam) d_{x0'} + (i/lam) d_{x1'}
                //   - (i / 2 lam) sum omega(mu(x') jhat, jhat) dz dz
                let mut op = self
                    .dlam()
                    .compose(&self.dlam())
                    .scale_poly(&self.lam().scale(&i));
                op = op.add(&self.dlam().compose(&self.euler_full()).scale(&i));
                op = op.add(&self.dlam().scale(&(&i * &Scalar::rat(self.dim_lambda + 2, 2))));
                op = op.add(
                    &self
                        .d_a()
                        .scale_poly(&self.n_poly.mul(&self.lam_inv()).mul(&self.lam_inv())),
                );
                op = op.add(&self.nd_op.scale_poly(&a_var.scale(&Scalar::from_int(2))));
                let chalf = &i * &Scalar::rat(self.dim_lambda - 2, 2);
                op = op.add(&self.const_op(&self.lam_inv().scale(&chalf)));
                let (z0, z1) = self.split_j_line(&self.ctx.z_point());
                op = op.add(&self.dir(&z0).scale_poly(&self.lam_inv().scale(&chalf)));
                op = op.add(&self.dir(&z1).scale_poly(&self.lam_inv().scale(&i)));
                op.sub(
                    &self
                        .jj_op(&self.mu_z)
                        .scale_poly(&self.lam_inv().scale(&(&i * &Scalar::rat(1, 2)))),
                )
            }
        }
    }

    // --- public action API ---

    pub fn dpi_basis(&self, i: usize) -> &DiffOp {
        &self.dpi_tab[i]
    }

    pub fn drho_basis(&self, i: usize) -> &DiffOp {
        &self.drho_tab[i]
    }

    /// Action of a constant-coefficient algebra element in the lam-picture.
    pub fn dpi_min(&self, x: &Elt) -> DiffOp {
        self.combine(&self.dpi_tab, x)
    }

    /// Action of a constant-coefficient algebra element in the y-picture.
    pub fn drho_min(&self, x: &Elt) -> DiffOp {
        self.combine(&self.drho_tab, x)
    }

    fn combine(&self, tab: &[DiffOp], x: &Elt) -> DiffOp {
        let mut op = DiffOp::zero(&self.chart);
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.as_scalar().expect("constant coefficients expected");
            op = op.add(&tab[i].scale(&c));
        }
        op
    }

    // --- exact conjugations at the operator level ---

    /// Conjugate an operator in the y-picture by the scaling intertwiner
    /// u(lam, x) -> |lam|^{-s} sgn(lam)^delta u(lam, x/lam): the coordinate
    /// derivative maps to lam d, the lam-derivative to
    /// d_lam + (1/lam)(Euler + s), and coefficients substitute x -> x/lam.
    /// The sign factors are locally constant and drop out.
    pub fn phi_conjugate(&self, op: &DiffOp) -> DiffOp {
        let vars = self.vars();
        let lam_idx = vars.index_of("lam").expect("missing lam");
        let mut xcoords = vec![self.a_idx];
        xcoords.extend(self.z_idx.iter().copied());
        let img_dlam = self
            .dlam()
            .add(&self.euler_full().scale_poly(&self.lam_inv()))
            .add(&self.const_op(&self.lam_inv().scale(&self.s)));
        let img_dx: Vec<DiffOp> = xcoords
            .iter()
            .map(|&i| DiffOp::derivative(&self.chart, i).scale_poly(&self.lam()))
            .collect();
        let mut out = DiffOp::zero(&self.chart);
        for (mi, p) in op.terms() {
            let mut dpart = DiffOp::one(&self.chart);
            for (pos, &i) in xcoords.iter().enumerate() {
                for _ in 0..mi[i] {
                    dpart = dpart.compose(&img_dx[pos]);
                }
            }
            for _ in 0..mi[lam_idx] {
                dpart = dpart.compose(&img_dlam);
            }
            for (j, &k) in mi.iter().enumerate() {
                assert!(
                    k == 0 || j == lam_idx || xcoords.contains(&j),
                    "derivative outside the model coordinates"
                );
            }
            // coefficient: substitute each Lagrangian coordinate x -> x/lam
            let mut np = LaurentPoly::zero(vars);
            for (exps, c) in p.terms() {
                let mut ne = exps.clone();
                let total: Expo = xcoords.iter().map(|&i| exps[i]).sum();
                ne[lam_idx] -= total;
                np = np.add(&LaurentPoly::monomial(vars, ne, c.clone()));
            }
            out = out.add(&dpart.scale_poly(&np));
        }
        out
    }

    /// Conjugate by the substitution (lam, a) -> (sqrt2 a, -lam/sqrt2):
    /// d_lam -> (1/sqrt2) d_a, d_a -> -sqrt2 d_lam, coefficients substitute
    /// monomial-wise. Requires integer exponents of lam and a.
    pub fn swap_conjugate(&self, op: &DiffOp) -> DiffOp {
        let vars = self.vars();
        let lam_idx = vars.index_of("lam").expect("missing lam");
        let a_idx = self.a_idx;
        let img_dlam = self
            .d_a()
            .scale(&(&Scalar::one() / &Scalar::sqrt2()));
        let img_da = self.dlam().scale(&-&Scalar::sqrt2());
        let mut out = DiffOp::zero(&self.chart);
        for (mi, p) in op.terms() {
            let mut dpart = DiffOp::one(&self.chart);
            for (j, &k) in mi.iter().enumerate() {
                let img = if j == lam_idx {
                    img_dlam.clone()
                } else if j == a_idx {
                    img_da.clone()
                } else {
                    DiffOp::derivative(&self.chart, j)
                };
                for _ in 0..k {
                    dpart = dpart.compose(&img);
                }
            }
            let mut np = LaurentPoly::zero(vars);
            for (exps, c) in p.terms() {
                let pl = exps[lam_idx];
                let pa = exps[a_idx];
                assert!(
                    pl.is_integer() && pa.is_integer(),
                    "fractional exponent on a swapped coordinate"
                );
                let mut ne = exps.clone();
                ne[lam_idx] = pa;
                ne[a_idx] = pl;
                let mut s = &Scalar::sqrt2().pow(pl.to_integer() - pa.to_integer()) * c;
                if pa.to_integer().rem_euclid(2) == 1 {
                    s = -&s;
                }
                np = np.add(&LaurentPoly::monomial(vars, ne, s));
            }
            out = out.add(&dpart.scale_poly(&np));
        }
        out
    }

    /// Conjugate by multiplication with exp(p): each derivative maps to
    /// d_i - (d_i p).
    pub fn phase_conjugate(&self, op: &DiffOp, p: &LaurentPoly) -> DiffOp {
        let n = self.vars().len();
        let imgs: Vec<DiffOp> = (0..n)
            .map(|i| {
                DiffOp::derivative(&self.chart, i)
                    .sub(&DiffOp::from_poly(&self.chart, &p.partial(i)))
            })
            .collect();
        let mut out = DiffOp::zero(&self.chart);
        for (mi, coeff) in op.terms() {
            let mut dpart = DiffOp::one(&self.chart);
            for (j, &k) in mi.iter().enumerate() {
                for _ in 0..k {
                    dpart = dpart.compose(&imgs[j]);
                }
            }
            out = out.add(&dpart.scale_poly(coeff));
        }
        out
    }

    /// Conjugate by the substitution flipping the signs of the listed
    /// coordinates. Constant multipliers drop out of a conjugation, so this
    /// also implements conjugation by the square intertwiners.
    pub fn flip_conjugate(&self, op: &DiffOp, flips: &[usize]) -> DiffOp {
        let vars = self.vars();
        let mut out = DiffOp::zero(&self.chart);
        for (mi, p) in op.terms() {
            let dsign: i64 = flips.iter().map(|&i| mi[i] as i64).sum();
            let mut np = LaurentPoly::zero(vars);
            for (exps, c) in p.terms() {
                let mut total = dsign;
                for &i in flips {
                    assert!(exps[i].is_integer(), "fractional exponent on a flipped coordinate");
                    total += exps[i].to_integer();
                }
                let s = if total.rem_euclid(2) == 1 {
                    -c
                } else {
                    c.clone()
                };
                np = np.add(&LaurentPoly::monomial(vars, exps.clone(), s));
            }
            let mut term = DiffOp::zero(&self.chart);
            term.add_term(mi.clone(), np);
            out = out.add(&term);
        }
        out
    }
}

/// One step of an invertible substitution/multiplier operator on twisted
/// terms over a family of quadrant charts.
#[derive(Clone, Debug)]
enum Step {
    MulScalar(Scalar),
    MulSgn { coord: String, parity: i64 },
    MulAbs { coord: String, expo: Expo },
    MulPhase(LaurentPoly),
    /// Multiply by eps(x y)^power with eps = 1 on the positive half-line
    /// and i on the negative one; constant on each quadrant.
    MulEps { x: String, y: String, power: i64 },
    Flip(Vec<String>),
    /// x_i -> x_i * by^pow for each target coordinate.
    Scale {
        targets: Vec<String>,
        by: String,
        pow: i64,
    },
    /// (lam, a) -> (sqrt2 a, -lam/sqrt2).
    Swap { lam: String, a: String },
}

/// An invertible operator on twisted sums: a sequence of substitutions and
/// quadrant-wise multipliers. The inverse is stored as the reversed sequence
/// of inverted steps.
#[derive(Clone, Debug)]
pub struct IntertwinerOp {
    pub name: String,
    steps: Vec<Step>,
}

impl IntertwinerOp {
    fn new(name: &str, steps: Vec<Step>) -> IntertwinerOp {
        IntertwinerOp {
            name: name.to_string(),
            steps,
        }
    }

    pub fn inverse(&self) -> IntertwinerOp {
        let mut steps = Vec::new();
        for s in self.steps.iter().rev() {
            match s {
                Step::MulScalar(c) => steps.push(Step::MulScalar(c.inv())),
                Step::MulSgn { coord, parity } => steps.push(Step::MulSgn {
                    coord: coord.clone(),
                    parity: *parity,
                }),
                Step::MulAbs { coord, expo } => steps.push(Step::MulAbs {
                    coord: coord.clone(),
                    expo: -*expo,
                }),
                Step::MulPhase(p) => steps.push(Step::MulPhase(p.neg())),
                Step::MulEps { x, y, power } => steps.push(Step::MulEps {
                    x: x.clone(),
                    y: y.clone(),
                    power: -power,
                }),
                Step::Flip(coords) => steps.push(Step::Flip(coords.clone())),
                Step::Scale { targets, by, pow } => steps.push(Step::Scale {
                    targets: targets.clone(),
                    by: by.clone(),
                    pow: -pow,
                }),
                Step::Swap { lam, a } => {
                    // the substitution has order four; its inverse is the
                    // substitution followed by the sign flip of both coords
                    steps.push(Step::Flip(vec![lam.clone(), a.clone()]));
                    steps.push(Step::Swap {
                        lam: lam.clone(),
                        a: a.clone(),
                    });
                }
            }
        }
        IntertwinerOp {
            name: format!("{}^-1", self.name),
            steps,
        }
    }

    /// Apply to a twisted sum; `charts` is the family of quadrant charts the
    /// substitutions move between.
    pub fn apply(&self, sum: &TwistedSum, charts: &[Chart]) -> TwistedSum {
        let mut cur = sum.clone();
        for step in &self.steps {
            cur = apply_step(step, &cur, charts);
        }
        cur
    }
}

fn find_chart(charts: &[Chart], signs: &std::collections::BTreeMap<usize, i8>) -> Chart {
    charts
        .iter()
        .find(|c| &c.signs == signs)
        .expect("missing quadrant chart")
        .clone()
}

fn apply_step(step: &Step, sum: &TwistedSum, charts: &[Chart]) -> TwistedSum {
    let ch = sum.chart.clone();
    let vars = ch.vars.clone();
    let idx = |n: &str| vars.index_of(n).expect("unknown coordinate");
    match step {
        Step::MulScalar(c) => sum.scale(c),
        Step::MulSgn { coord, parity } => {
            let i = idx(coord);
            TwistedSum::merged(
                &ch,
                sum.terms
                    .iter()
                    .map(|t| t.clone().with_sgn(i, *parity))
                    .collect(),
            )
        }
        Step::MulAbs { coord, expo } => {
            let i = idx(coord);
            TwistedSum::merged(
                &ch,
                sum.terms
                    .iter()
                    .map(|t| t.clone().with_abs(i, *expo, 0))
                    .collect(),
            )
        }
        Step::MulPhase(p) => sum.mul_phase(p),
        Step::MulEps { x, y, power } => {
            let sx = ch.sign_of(x).expect("eps needs a signed coordinate");
            let sy = ch.sign_of(y).expect("eps needs a signed coordinate");
            if sx * sy > 0 {
                sum.clone()
            } else {
                sum.scale(&Scalar::i().pow(*power))
            }
        }
        Step::Flip(coords) => {
            let idxs: Vec<usize> = coords.iter().map(|n| idx(n)).collect();
            let mut signs = ch.signs.clone();
            for &i in &idxs {
                if let Some(s) = signs.get_mut(&i) {
                    *s = -*s;
                }
            }
            sum.subst_flip(&idxs, &find_chart(charts, &signs))
                .expect("flip substitution failed")
        }
        Step::Scale { targets, by, pow } => {
            let idxs: Vec<usize> = targets.iter().map(|n| idx(n)).collect();
            let den = idx(by);
            let mut signs = ch.signs.clone();
            if pow.rem_euclid(2) == 1 && ch.signs.get(&den).copied().unwrap_or(1) < 0 {
                for &i in &idxs {
                    if let Some(s) = signs.get_mut(&i) {
                        *s = -*s;
                    }
                }
            }
            sum.subst_scale(&idxs, den, *pow, &find_chart(charts, &signs))
                .expect("scale substitution failed")
        }
        Step::Swap { lam, a } => {
            let li = idx(lam);
            let ai = idx(a);
            let sl = *ch.signs.get(&li).expect("swap needs signed coordinates");
            let sa = *ch.signs.get(&ai).expect("swap needs signed coordinates");
            let mut signs = ch.signs.clone();
            signs.insert(ai, sl);
            signs.insert(li, -sa);
            sum.subst_swap(lam, a, &find_chart(charts, &signs))
                .expect("swap substitution failed")
        }
    }
}

/// Squares table variants: sl(n) depends on the inducing character parity,
/// and sl(3) has the genuinely half-integer representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinVariant {
    Plain,
    SlInteger { eps: u8 },
    SlHalf,
}

/// The scaling intertwiner u -> sgn(lam)^delta |lam|^{-s} u(lam, x/lam).
pub fn phi_op(fam: &MinRepFamily, delta: i64) -> IntertwinerOp {
    let mut targets = vec!["a".to_string()];
    for i in 0..fam.z_idx.len() {
        targets.push(format!("z{i}"));
    }
    IntertwinerOp::new(
        &format!("phi_{delta}"),
        vec![
            Step::Scale {
                targets,
                by: "lam".to_string(),
                pow: -1,
            },
            Step::MulAbs {
                coord: "lam".to_string(),
                expo: -fam.s_expo,
            },
            Step::MulSgn {
                coord: "lam".to_string(),
                parity: delta,
            },
        ],
    )
}

/// The non-trivial Weyl element: phase times the (lam, a)-swap, with the
/// quadrant-wise fourth-root factor in the half-integer cases.
pub fn w1_op(fam: &MinRepFamily, half_integer: bool) -> IntertwinerOp {
    // phase exponent: -i n(x) / (lam a); requires an invertible a-coordinate
    let vars = fam.chart.vars.clone();
    let a_inv = LaurentPoly::var(&vars, fam.a_idx).invert_monomial();
    let p = fam
        .n_poly
        .mul(&fam.lam_inv())
        .mul(&a_inv)
        .scale(&-&Scalar::i());
    let mut steps = vec![
        Step::Swap {
            lam: "lam".to_string(),
            a: "a".to_string(),
        },
        Step::MulPhase(p),
    ];
    if half_integer {
        steps.push(Step::MulEps {
            x: "a".to_string(),
            y: "lam".to_string(),
            power: 1,
        });
    }
    IntertwinerOp::new("w1", steps)
}

/// The three square intertwiners (w0^2, w1^2, w2^2) for a family/variant.
pub fn square_ops(fam: &MinRepFamily, variant: MinVariant) -> Vec<IntertwinerOp> {
    let zs: Vec<String> = (0..fam.z_idx.len()).map(|i| format!("z{i}")).collect();
    let mut flip_ax = vec!["a".to_string()];
    flip_ax.extend(zs.iter().cloned());
    let mut flip_lx = vec!["lam".to_string()];
    flip_lx.extend(zs.iter().cloned());
    let flip_la = vec!["lam".to_string(), "a".to_string()];
    let m1 = -&Scalar::one();
    match (&fam.kind, variant) {
        (MinKind::Generic, MinVariant::Plain) => vec![
            IntertwinerOp::new("w0sq", vec![Step::Flip(flip_ax), Step::MulScalar(m1.clone())]),
            IntertwinerOp::new("w1sq", vec![Step::Flip(flip_la)]),
            IntertwinerOp::new("w2sq", vec![Step::Flip(flip_lx), Step::MulScalar(m1)]),
        ],
        (MinKind::Sl(_), MinVariant::SlInteger { eps }) => {
            let c = if eps % 2 == 1 { m1 } else { Scalar::one() };
            vec![
                IntertwinerOp::new("w0sq", vec![Step::Flip(flip_ax), Step::MulScalar(c.clone())]),
                IntertwinerOp::new("w1sq", vec![Step::Flip(flip_la)]),
                IntertwinerOp::new("w2sq", vec![Step::Flip(flip_lx), Step::MulScalar(c)]),
            ]
        }
        (MinKind::Sl(3), MinVariant::SlHalf) => vec![
            IntertwinerOp::new(
                "w0sq",
                vec![
                    Step::Flip(flip_ax),
                    Step::MulSgn {
                        coord: "lam".to_string(),
                        parity: 1,
                    },
                    Step::MulScalar(-&Scalar::i()),
                ],
            ),
            IntertwinerOp::new(
                "w1sq",
                vec![Step::Flip(flip_la), Step::MulScalar(Scalar::i())],
            ),
            IntertwinerOp::new(
                "w2sq",
                vec![
                    Step::Flip(flip_lx),
                    Step::MulSgn {
                        coord: "lam".to_string(),
                        parity: 1,
                    },
                    Step::MulScalar(m1),
                ],
            ),
        ],
        (MinKind::So(p, q), MinVariant::Plain) => {
            let d = (*p as i64) - (*q as i64);
            let cpq = (-&Scalar::i()).pow(d);
            let codd = if (*p + *q) % 2 == 1 {
                Scalar::i()
            } else {
                Scalar::one()
            };
            vec![
                IntertwinerOp::new(
                    "w0sq",
                    vec![
                        Step::Flip(flip_ax),
                        Step::MulSgn {
                            coord: "lam".to_string(),
                            parity: d,
                        },
                        Step::MulScalar(cpq.clone()),
                    ],
                ),
                IntertwinerOp::new(
                    "w1sq",
                    vec![Step::Flip(flip_la), Step::MulScalar(codd.clone())],
                ),
                IntertwinerOp::new(
                    "w2sq",
                    vec![
                        Step::Flip(flip_lx),
                        Step::MulSgn {
                            coord: "lam".to_string(),
                            parity: d,
                        },
                        Step::MulScalar(&cpq * &codd),
                    ],
                ),
            ]
        }
        _ => panic!("unsupported family/variant combination"),
    }
}

/// Coordinate index lists of the three square flips (for operator-level
/// conjugation, where the constant multipliers drop out).
pub fn square_flips(fam: &MinRepFamily) -> Vec<Vec<usize>> {
    let vars = fam.chart.vars.clone();
    let lam = vars.index_of("lam").expect("missing lam");
    let mut ax = vec![fam.a_idx];
    ax.extend(fam.z_idx.iter().copied());
    let mut lx = vec![lam];
    lx.extend(fam.z_idx.iter().copied());
    vec![ax, vec![lam, fam.a_idx], lx]
}
