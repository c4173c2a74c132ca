//! Degenerate principal-series Lie algebra action in noncommutative-group
//! coordinates, the quantized covariant operator systems, and their
//! conformal-invariance verification.
//!
//! The group chart carries one coordinate per symplectic basis vector plus a
//! central coordinate `t`. The induction parameter `nu` (and any twist
//! parameters) are extra formal chart variables that are never
//! differentiated, so invariance conditions come out as polynomial equations
//! solved exactly.

mod suites;
#[cfg(test)]
mod tests;

pub use suites::{
    solve_special_nu, verify_conformal_invariance, verify_induction_param, verify_sl_lambda,
    verify_sopq_sl2_on_v, verify_sopq_twisted_systems, System,
};

use crate::diffop::{chart, Chart, DiffOp};
use crate::exactmath::{ExactMatrix, LaurentPoly, Scalar};
use crate::liecore::{Algebra, Bigrading, Elt};
use crate::report::Report;

/// Chart for the nilpotent group V x R: one coordinate per V-basis vector
/// (same names as the algebra basis), the central coordinate `t`, the formal
/// induction parameter `nu`, and any extra formal parameters.
pub fn nc_chart(alg: &Algebra, extra: &[&str]) -> Chart {
    let mut names: Vec<String> = (0..alg.dim_v())
        .map(|a| alg.basis_name(alg.v_idx[a]).to_string())
        .collect();
    names.push("t".to_string());
    names.push("nu".to_string());
    for e in extra {
        names.push(e.to_string());
    }
    let coords: Vec<(&str, bool)> = names.iter().map(|n| (n.as_str(), false)).collect();
    chart("nc", &coords)
}

/// The tautological V-valued point x = sum_alpha x_alpha e_alpha whose
/// coordinates are the chart variables.
pub fn coordinate_point(alg: &Algebra, ch: &Chart) -> Elt {
    let coords: Vec<LaurentPoly> = (0..alg.dim_v())
        .map(|a| LaurentPoly::var(&ch.vars, a))
        .collect();
    alg.from_v_coords(&coords)
}

/// Directional derivative along a V-valued element with polynomial
/// coefficients (coefficients multiply on the left).
pub fn dir_derivative(alg: &Algebra, ch: &Chart, v: &Elt) -> DiffOp {
    let mut out = DiffOp::zero(ch);
    for (a, c) in alg.v_coords(v).iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&DiffOp::derivative(ch, a).scale_poly(c));
        }
    }
    out
}

/// The dual symplectic basis as elements over the chart variables.
pub fn dual_basis_elts(alg: &Algebra, ch: &Chart) -> Vec<Elt> {
    alg.dual_v_basis()
        .iter()
        .map(|coords| {
            let c: Vec<LaurentPoly> = coords
                .iter()
                .map(|s| LaurentPoly::constant(&ch.vars, s.clone()))
                .collect();
            alg.from_v_coords(&c)
        })
        .collect()
}

fn basis_v(alg: &Algebra, ch: &Chart, a: usize) -> Elt {
    alg.basis_elt(alg.v_idx[a], &ch.vars)
}

// ---------------------------------------------------------------------------
// Induction parameter
// ---------------------------------------------------------------------------

/// The reductive twist: how the Levi part m acts on the inducing space.
pub enum Zeta {
    /// Trivial twist.
    Zero,
    /// A character of m: dzeta(T) = functional(T) * value, with the
    /// functional given by dual coefficients over the full algebra basis
    /// (zero on the commutator part of m).
    Character {
        dual: Vec<Scalar>,
        value: LaurentPoly,
    },
    /// An sl(2)-module twist on a designated sl(2)-factor of m.
    Module {
        module: FormalSL2Module,
        projection: Sl2Projection,
    },
}

/// Parameters (nu, zeta) of a degenerate principal-series representation.
/// `nu` is a polynomial over the chart (typically the formal variable `nu`).
pub struct InductionParam {
    pub nu: LaurentPoly,
    pub zeta: Zeta,
}

impl InductionParam {
    pub fn trivial(ch: &Chart) -> InductionParam {
        InductionParam {
            nu: LaurentPoly::var_named(&ch.vars, "nu"),
            zeta: Zeta::Zero,
        }
    }

    /// Representation-space dimension modeled by the twist (1 for scalars).
    pub fn zeta_dim(&self) -> usize {
        match &self.zeta {
            Zeta::Zero | Zeta::Character { .. } => 1,
            Zeta::Module { module, .. } => module.dim(),
        }
    }

    /// dzeta applied to an m-valued element with polynomial coefficients,
    /// for the scalar cases; panics on the module case.
    pub fn dzeta_scalar(&self, ch: &Chart, t: &Elt) -> LaurentPoly {
        match &self.zeta {
            Zeta::Zero => LaurentPoly::zero(&ch.vars),
            Zeta::Character { dual, value } => {
                let mut acc = LaurentPoly::zero(&ch.vars);
                for (i, c) in t.coeffs.iter().enumerate() {
                    if !c.is_zero() && !dual[i].is_zero() {
                        acc = acc.add(&c.scale(&dual[i]));
                    }
                }
                acc.mul(value)
            }
            Zeta::Module { .. } => panic!("module twist has no scalar dzeta"),
        }
    }

    /// dzeta as a matrix of polynomials (1x1 for scalar cases), together
    /// with the shift reach of the matrix.
    pub fn dzeta_mat(&self, ch: &Chart, t: &Elt) -> (Vec<Vec<LaurentPoly>>, usize) {
        match &self.zeta {
            Zeta::Zero | Zeta::Character { .. } => (vec![vec![self.dzeta_scalar(ch, t)]], 0),
            Zeta::Module { module, projection } => {
                let (ce, cf, chh) = projection.coords(t);
                let mut m = pmat_zero(&module_ctx(ch), module.dim());
                m = pmat_add(&m, &pmat_scale(&module.mat_e, &ce));
                m = pmat_add(&m, &pmat_scale(&module.mat_f, &cf));
                m = pmat_add(&m, &pmat_scale(&module.mat_h, &chh));
                (m, 1)
            }
        }
    }
}

fn module_ctx(ch: &Chart) -> crate::exactmath::Vars {
    ch.vars.clone()
}

/// Linear projection from m onto a designated sl(2)-triple (e, f, h),
/// vanishing on the complementary ideal. Stored as three functionals over
/// the full basis coordinates.
pub struct Sl2Projection {
    pub row_e: Vec<Scalar>,
    pub row_f: Vec<Scalar>,
    pub row_h: Vec<Scalar>,
}

impl Sl2Projection {
    /// Build from the triple and a basis of the complementary ideal; the
    /// union must be a basis of m.
    pub fn new(alg: &Algebra, e: &Elt, f: &Elt, h: &Elt, complement: &[Elt]) -> Sl2Projection {
        let nm = alg.m_idx.len();
        assert_eq!(nm, 3 + complement.len(), "triple + complement must span m");
        let mut a = ExactMatrix::zeros(nm, nm);
        let cols: Vec<&Elt> = [e, f, h].into_iter().chain(complement.iter()).collect();
        for (j, col) in cols.iter().enumerate() {
            for (r, &mi) in alg.m_idx.iter().enumerate() {
                a.set(r, j, col.coeffs[mi].as_scalar().unwrap().clone());
            }
        }
        let inv = a.inverse().expect("m-basis change singular");
        let mut rows = vec![vec![Scalar::zero(); alg.dim()]; 3];
        for k in 0..3 {
            for (j, &mi) in alg.m_idx.iter().enumerate() {
                rows[k][mi] = inv.get(k, j).clone();
            }
        }
        let mut it = rows.into_iter();
        Sl2Projection {
            row_e: it.next().unwrap(),
            row_f: it.next().unwrap(),
            row_h: it.next().unwrap(),
        }
    }

    /// (e, f, h)-coordinates of an m-valued element with polynomial
    /// coefficients.
    pub fn coords(&self, t: &Elt) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
        let apply = |row: &[Scalar]| {
            let mut acc = LaurentPoly::zero(t.vars());
            for (i, c) in t.coeffs.iter().enumerate() {
                if !c.is_zero() && !row[i].is_zero() {
                    acc = acc.add(&c.scale(&row[i]));
                }
            }
            acc
        };
        (apply(&self.row_e), apply(&self.row_f), apply(&self.row_h))
    }
}

// ---------------------------------------------------------------------------
// Formal sl(2)-module on a symmetric index window
// ---------------------------------------------------------------------------

type PolyMat = Vec<Vec<LaurentPoly>>;

fn pmat_zero(vars: &crate::exactmath::Vars, d: usize) -> PolyMat {
    vec![vec![LaurentPoly::zero(vars); d]; d]
}

fn pmat_add(a: &PolyMat, b: &PolyMat) -> PolyMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

fn pmat_sub(a: &PolyMat, b: &PolyMat) -> PolyMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

fn pmat_scale(a: &PolyMat, c: &LaurentPoly) -> PolyMat {
    a.iter()
        .map(|r| r.iter().map(|x| x.mul(c)).collect())
        .collect()
}

fn pmat_scale_s(a: &PolyMat, c: &Scalar) -> PolyMat {
    a.iter()
        .map(|r| r.iter().map(|x| x.scale(c)).collect())
        .collect()
}

fn pmat_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let d = a.len();
    let vars = a[0][0].vars().clone();
    let mut out = pmat_zero(&vars, d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul(bkj));
                }
            }
        }
    }
    out
}

/// A principal-series sl(2)-module realized on a finite symmetric window of
/// basis vectors v_{n+2j}, j = -w..w, with a formal base index `n` and
/// formal (or specialized) parameter `s`. Matrix entries are exact for
/// columns at distance >= (shift reach) from the window boundary.
pub struct FormalSL2Module {
    /// Parity class of the index lattice (record only; the base index is
    /// formal, so identities hold for every class).
    pub k_mod4: i64,
    /// Half-width of the window; dimension is 2w + 1.
    pub window: usize,
    pub s: LaurentPoly,
    pub mat_e: PolyMat,
    pub mat_f: PolyMat,
    pub mat_h: PolyMat,
    pub mat_kappa: PolyMat,
    pub mat_xp: PolyMat,
    pub mat_xm: PolyMat,
}

impl FormalSL2Module {
    /// Build on a chart that declares the formal variable `n`; `s` is any
    /// polynomial over the chart.
    pub fn new(ch: &Chart, k_mod4: i64, window: usize, s: LaurentPoly) -> FormalSL2Module {
        let vars = ch.vars.clone();
        let d = 2 * window + 1;
        let n = LaurentPoly::var_named(&vars, "n");
        let one = LaurentPoly::one(&vars);
        let idx = |j: usize| {
            // Basis vector j carries index n + 2(j - window).
            n.add(&LaurentPoly::constant(
                &vars,
                Scalar::from_int(2 * (j as i64 - window as i64)),
            ))
        };
        let mut xp = pmat_zero(&vars, d);
        let mut xm = pmat_zero(&vars, d);
        let mut kappa = pmat_zero(&vars, d);
        for j in 0..d {
            let nj = idx(j);
            kappa[j][j] = nj.scale(&Scalar::i());
            if j + 1 < d {
                xp[j + 1][j] = s.add(&nj).add(&one);
            }
            if j > 0 {
                xm[j - 1][j] = s.sub(&nj).add(&one);
            }
        }
        // h = (x_+ + x_-)/2, e + f = (i/2)(x_+ - x_-), e = ((e+f) - kappa)/2,
        // f = ((e+f) + kappa)/2 from x_pm = h -+ i(e+f) and kappa = f - e.
        let h = pmat_scale_s(&pmat_add(&xp, &xm), &Scalar::rat(1, 2));
        let epf = pmat_scale_s(
            &pmat_sub(&xp, &xm),
            &(Scalar::i() * Scalar::rat(1, 2)),
        );
        let e = pmat_scale_s(&pmat_sub(&epf, &kappa), &Scalar::rat(1, 2));
        let f = pmat_scale_s(&pmat_add(&epf, &kappa), &Scalar::rat(1, 2));
        FormalSL2Module {
            k_mod4,
            window,
            s,
            mat_e: e,
            mat_f: f,
            mat_h: h,
            mat_kappa: kappa,
            mat_xp: xp,
            mat_xm: xm,
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.window + 1
    }

    /// Entries of `m` vanish on all columns at distance >= `reach` from the
    /// window boundary.
    pub fn interior_zero(m: &PolyMat, reach: usize) -> bool {
        let d = m.len();
        assert!(2 * reach < d, "window too small for requested reach");
        for row in m {
            for (j, x) in row.iter().enumerate() {
                if j >= reach && j + reach < d && !x.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Verify the sl(2) relations, the compact/raising/lowering action, and
    /// the Casimir value s^2 - 1 on the window interior.
    pub fn verify(&self, ch: &Chart) -> Report {
        let mut rep = Report::new("formal_sl2_module", "sl2", 0);
        let vars = ch.vars.clone();
        let two = |m: &PolyMat| pmat_scale_s(m, &Scalar::from_int(2));
        let br = |a: &PolyMat, b: &PolyMat| pmat_sub(&pmat_mul(a, b), &pmat_mul(b, a));
        rep.push(
            "bracket_h_e",
            Self::interior_zero(&pmat_sub(&br(&self.mat_h, &self.mat_e), &two(&self.mat_e)), 2),
            None,
        );
        rep.push(
            "bracket_h_f",
            Self::interior_zero(
                &pmat_add(&br(&self.mat_h, &self.mat_f), &two(&self.mat_f)),
                2,
            ),
            None,
        );
        rep.push(
            "bracket_e_f",
            Self::interior_zero(&pmat_sub(&br(&self.mat_e, &self.mat_f), &self.mat_h), 2),
            None,
        );
        rep.push(
            "kappa_is_f_minus_e",
            Self::interior_zero(
                &pmat_sub(&self.mat_kappa, &pmat_sub(&self.mat_f, &self.mat_e)),
                1,
            ),
            None,
        );
        // Casimir h^2 + 2ef + 2fe = (s^2 - 1) id on the interior.
        let cas = self.casimir();
        let mut expect = pmat_zero(&vars, self.dim());
        let val = self
            .s
            .mul(&self.s)
            .sub(&LaurentPoly::one(&vars));
        for j in 0..self.dim() {
            expect[j][j] = val.clone();
        }
        rep.push(
            "casimir_value",
            Self::interior_zero(&pmat_sub(&cas, &expect), 2),
            None,
        );
        rep.finalize()
    }

    /// h^2 + 2ef + 2fe as a window matrix (reach 2).
    pub fn casimir(&self) -> PolyMat {
        let hh = pmat_mul(&self.mat_h, &self.mat_h);
        let ef = pmat_mul(&self.mat_e, &self.mat_f);
        let fe = pmat_mul(&self.mat_f, &self.mat_e);
        pmat_add(
            &hh,
            &pmat_scale_s(&pmat_add(&ef, &fe), &Scalar::from_int(2)),
        )
    }
}

// ---------------------------------------------------------------------------
// Matrix-valued differential operators (vector-valued inducing space)
// ---------------------------------------------------------------------------

/// A square matrix of differential operators acting on functions with values
/// in a finite window of the inducing module. `reach` tracks how far module
/// shifts can move a basis vector: entries are trustworthy on columns at
/// distance >= reach from the window boundary.
#[derive(Clone)]
pub struct MatOp {
    pub chart: Chart,
    pub dim: usize,
    pub reach: usize,
    pub entries: Vec<Vec<DiffOp>>,
}

impl MatOp {
    pub fn zero(ch: &Chart, dim: usize) -> MatOp {
        MatOp {
            chart: ch.clone(),
            dim,
            reach: 0,
            entries: vec![vec![DiffOp::zero(ch); dim]; dim],
        }
    }

    /// A scalar operator acting diagonally.
    pub fn scalar(op: &DiffOp, dim: usize) -> MatOp {
        let mut out = MatOp::zero(&op.chart, dim);
        for j in 0..dim {
            out.entries[j][j] = op.clone();
        }
        out
    }

    /// Multiplication by a matrix of polynomials with the given shift reach.
    pub fn from_poly_mat(ch: &Chart, m: &PolyMat, reach: usize) -> MatOp {
        let dim = m.len();
        let mut out = MatOp::zero(ch, dim);
        out.reach = reach;
        for (i, row) in m.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                out.entries[i][j] = DiffOp::from_poly(ch, p);
            }
        }
        out
    }

    pub fn add(&self, rhs: &MatOp) -> MatOp {
        assert_eq!(self.dim, rhs.dim);
        let mut out = MatOp::zero(&self.chart, self.dim);
        out.reach = self.reach.max(rhs.reach);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i][j] = self.entries[i][j].add(&rhs.entries[i][j]);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &MatOp) -> MatOp {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MatOp {
        MatOp {
            chart: self.chart.clone(),
            dim: self.dim,
            reach: self.reach,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(DiffOp::neg).collect())
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> MatOp {
        MatOp {
            chart: self.chart.clone(),
            dim: self.dim,
            reach: self.reach,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.scale_poly(p)).collect())
                .collect(),
        }
    }

    pub fn compose(&self, rhs: &MatOp) -> MatOp {
        assert_eq!(self.dim, rhs.dim);
        let mut out = MatOp::zero(&self.chart, self.dim);
        out.reach = self.reach + rhs.reach;
        for i in 0..self.dim {
            for k in 0..self.dim {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    if rhs.entries[k][j].is_zero() {
                        continue;
                    }
                    out.entries[i][j] =
                        out.entries[i][j].add(&self.entries[i][k].compose(&rhs.entries[k][j]));
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &MatOp) -> MatOp {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    /// True when every entry vanishes on all columns at distance >= reach
    /// from the window boundary.
    pub fn interior_is_zero(&self) -> bool {
        assert!(2 * self.reach < self.dim, "window too small for reach");
        for row in &self.entries {
            for (j, e) in row.iter().enumerate() {
                if j >= self.reach && j + self.reach < self.dim && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// The principal-series Lie algebra action
// ---------------------------------------------------------------------------

/// The m-valued twist argument of the action of X: the element whose dzeta
/// image enters the operator (zero for X in the nilradical or H).
pub fn zeta_argument(alg: &Algebra, ch: &Chart, x_elt: &Elt) -> Elt {
    let xpt = coordinate_point(alg, ch);
    let mut acc = alg.zero_elt(&ch.vars);
    for (i, c) in x_elt.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.as_scalar().expect("constant coefficients required");
        if alg.m_idx.contains(&i) {
            acc = acc.add(&alg.basis_elt(i, &ch.vars).scale(&c));
        } else if i == alg.idx_e {
            acc = acc.add(&alg.mu(&xpt).scale(&c));
        } else if let Some(a) = alg.vbar_idx.iter().position(|&k| k == i) {
            let bm = alg.b_mu(&xpt, &basis_v(alg, ch, a));
            acc = acc.add(&bm.scale(&(c * Scalar::from_int(-2))));
        }
    }
    acc
}

/// The untwisted part of the Lie algebra action (the twist contribution is
/// `dzeta(zeta_argument(..))`, added by the callers below).
fn dpi_untwisted(alg: &Algebra, ch: &Chart, nu: &LaurentPoly, x_elt: &Elt) -> DiffOp {
    let vars = ch.vars.clone();
    let nv = alg.dim_v();
    let t = LaurentPoly::var_named(&vars, "t");
    let dt = DiffOp::derivative_named(ch, "t");
    let xpt = coordinate_point(alg, ch);
    let rho = LaurentPoly::constant(&vars, alg.rho());
    let nu_rho = nu.add(&rho);
    let mut out = DiffOp::zero(ch);
    for (i, c) in x_elt.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.as_scalar().expect("constant coefficients required");
        let op = if i == alg.idx_f {
            dt.neg()
        } else if i == alg.idx_h {
            // Weighted Euler operator plus (nu + rho).
            let mut w = vec![0i64; ch.dim()];
            for item in w.iter_mut().take(nv) {
                *item = 1;
            }
            w[nv] = 2; // the coordinate t
            DiffOp::weighted_euler(ch, &w).add(&DiffOp::from_poly(ch, &nu_rho))
        } else if i == alg.idx_e {
            let dir = xpt.scale_poly(&t).add(&alg.psi(&xpt));
            let coef = t.mul(&t).add(&alg.quartic(&xpt));
            dir_derivative(alg, ch, &dir)
                .add(&dt.scale_poly(&coef))
                .add(&DiffOp::from_poly(ch, &nu_rho.mul(&t)))
        } else if let Some(a) = alg.v_idx.iter().position(|&k| k == i) {
            let v = basis_v(alg, ch, a);
            DiffOp::derivative(ch, a)
                .neg()
                .add(&dt.scale_poly(&alg.omega_form(&xpt, &v).scale(&Scalar::rat(1, 2))))
        } else if let Some(a) = alg.vbar_idx.iter().position(|&k| k == i) {
            let wbar = basis_v(alg, ch, a);
            let dir = alg
                .bracket(&alg.mu(&xpt), &wbar)
                .add(&xpt.scale_poly(&alg.omega_form(&xpt, &wbar)))
                .sub(&wbar.scale_poly(&t));
            let tcoef = alg
                .omega_form(&xpt.scale_poly(&t).add(&alg.psi(&xpt)), &wbar)
                .scale(&Scalar::rat(1, 2));
            let zcoef = nu_rho
                .mul(&alg.omega_form(&xpt, &wbar))
                .scale(&Scalar::rat(1, 2));
            dir_derivative(alg, ch, &dir)
                .add(&dt.scale_poly(&tcoef))
                .add(&DiffOp::from_poly(ch, &zcoef))
        } else if alg.m_idx.contains(&i) {
            let tx = alg.bracket(&alg.basis_elt(i, &vars), &xpt);
            dir_derivative(alg, ch, &tx).neg()
        } else {
            unreachable!("basis index not covered by the grading")
        };
        out = out.add(&op.scale(&c));
    }
    out
}

/// Lie algebra action for a scalar twist (trivial or character).
pub fn dpi_op(alg: &Algebra, ch: &Chart, param: &InductionParam, x_elt: &Elt) -> DiffOp {
    assert_eq!(param.zeta_dim(), 1, "use dpi_mat for module twists");
    let base = dpi_untwisted(alg, ch, &param.nu, x_elt);
    let zarg = zeta_argument(alg, ch, x_elt);
    base.add(&DiffOp::from_poly(ch, &param.dzeta_scalar(ch, &zarg)))
}

/// Lie algebra action for an arbitrary twist, as a matrix operator.
pub fn dpi_mat(alg: &Algebra, ch: &Chart, param: &InductionParam, x_elt: &Elt) -> MatOp {
    let d = param.zeta_dim();
    let base = MatOp::scalar(&dpi_untwisted(alg, ch, &param.nu, x_elt), d);
    let zarg = zeta_argument(alg, ch, x_elt);
    let (m, reach) = param.dzeta_mat(ch, &zarg);
    base.add(&MatOp::from_poly_mat(ch, &m, reach))
}

/// Basis-indexed action table for a scalar twist, suitable for the generic
/// homomorphism check.
pub fn dpi_table(alg: &Algebra, ch: &Chart, param: &InductionParam) -> Vec<DiffOp> {
    (0..alg.dim())
        .map(|i| dpi_op(alg, ch, param, &alg.basis_elt(i, &ch.vars)))
        .collect()
}

// ---------------------------------------------------------------------------
// Quantized covariant systems
// ---------------------------------------------------------------------------

/// Left-invariant vector field of the alpha-th basis vector.
pub fn left_invariant_field(alg: &Algebra, ch: &Chart, alpha: usize) -> DiffOp {
    let xpt = coordinate_point(alg, ch);
    let coef = alg
        .omega_form(&xpt, &basis_v(alg, ch, alpha))
        .scale(&Scalar::rat(1, 2));
    DiffOp::derivative(ch, alpha).add(&DiffOp::derivative_named(ch, "t").scale_poly(&coef))
}

/// First-order system: directional left-invariant field of v (coefficients
/// of v may be polynomials; they multiply on the left).
pub fn omega_omega(alg: &Algebra, ch: &Chart, v: &Elt) -> DiffOp {
    let mut out = DiffOp::zero(ch);
    for (a, c) in alg.v_coords(v).iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&left_invariant_field(alg, ch, a).scale_poly(c));
        }
    }
    out
}

/// Second-order system attached to T in m.
pub fn omega_mu(alg: &Algebra, ch: &Chart, t_elt: &Elt) -> DiffOp {
    let duals = dual_basis_elts(alg, ch);
    let nv = alg.dim_v();
    let fields: Vec<DiffOp> = (0..nv).map(|a| left_invariant_field(alg, ch, a)).collect();
    let mut out = DiffOp::zero(ch);
    for a in 0..nv {
        let te = alg.bracket(t_elt, &duals[a]);
        for b in 0..nv {
            let c = alg.omega_form(&te, &duals[b]);
            if !c.is_zero() {
                out = out.add(&fields[a].compose(&fields[b]).scale_poly(&c));
            }
        }
    }
    out
}

/// Third-order system attached to X in V.
pub fn omega_psi(alg: &Algebra, ch: &Chart, x_elt: &Elt) -> DiffOp {
    let duals = dual_basis_elts(alg, ch);
    let nv = alg.dim_v();
    let fields: Vec<DiffOp> = (0..nv).map(|a| left_invariant_field(alg, ch, a)).collect();
    let mut out = DiffOp::zero(ch);
    for a in 0..nv {
        for b in 0..nv {
            let fab = fields[a].compose(&fields[b]);
            for c in 0..nv {
                let coef = alg.omega_form(x_elt, &alg.b_psi(&duals[a], &duals[b], &duals[c]));
                if !coef.is_zero() {
                    out = out.add(&fab.compose(&fields[c]).scale_poly(&coef));
                }
            }
        }
    }
    out
}

/// Fourth-order scalar system from the symmetrized quartic.
pub fn omega_q(alg: &Algebra, ch: &Chart) -> DiffOp {
    let duals = dual_basis_elts(alg, ch);
    let nv = alg.dim_v();
    let fields: Vec<DiffOp> = (0..nv).map(|a| left_invariant_field(alg, ch, a)).collect();
    let mut out = DiffOp::zero(ch);
    for a in 0..nv {
        for b in 0..nv {
            let fab = fields[a].compose(&fields[b]);
            for c in 0..nv {
                let fabc = fab.compose(&fields[c]);
                // The quartic coefficient is symmetric; the innermost slot
                // is resolved through the cubic symmetrization.
                let bpsi = alg.b_psi(&duals[b], &duals[c], &duals[a]);
                for (d, fd) in fields.iter().enumerate() {
                    let coef = alg
                        .omega_form(&duals[d], &bpsi)
                        .scale(&Scalar::rat(1, 4));
                    if !coef.is_zero() {
                        out = out.add(&fabc.compose(fd).scale_poly(&coef));
                    }
                }
            }
        }
    }
    out
}

/// Twisted first-order system (vector-valued inducing space).
pub fn omega_omega_zeta(alg: &Algebra, ch: &Chart, param: &InductionParam, v: &Elt) -> MatOp {
    let d = param.zeta_dim();
    let duals = dual_basis_elts(alg, ch);
    let rho = LaurentPoly::constant(&ch.vars, alg.rho());
    let nu_rho_m2 = param
        .nu
        .add(&rho)
        .sub(&LaurentPoly::constant(&ch.vars, Scalar::from_int(2)));
    let mut out = MatOp::zero(ch, d);
    for (a, dual) in duals.iter().enumerate() {
        let base = left_invariant_field(alg, ch, a);
        // Scalar part (nu + rho - 2) omega(v, dual_a).
        let c1 = alg.omega_form(v, dual).mul(&nu_rho_m2);
        let mut coeff = MatOp::from_poly_mat(
            ch,
            &{
                let mut m = pmat_zero(&ch.vars, d);
                for j in 0..d {
                    m[j][j] = c1.clone();
                }
                m
            },
            0,
        );
        // Twist part 4 dzeta(B_mu(v, dual_a)).
        let (m, reach) = param.dzeta_mat(ch, &alg.b_mu(v, dual));
        coeff = coeff.add(&MatOp::from_poly_mat(ch, &pmat_scale_s(&m, &Scalar::from_int(4)), reach));
        out = out.add(&coeff.compose(&MatOp::scalar(&base, d)));
    }
    out
}

/// Twisted second-order system.
pub fn omega_mu_zeta(alg: &Algebra, ch: &Chart, param: &InductionParam, t_elt: &Elt) -> MatOp {
    let d = param.zeta_dim();
    let base = MatOp::scalar(&omega_mu(alg, ch, t_elt), d);
    let (m, reach) = param.dzeta_mat(ch, t_elt);
    let dt = MatOp::scalar(&DiffOp::derivative_named(ch, "t"), d);
    base.add(
        &MatOp::from_poly_mat(ch, &pmat_scale_s(&m, &Scalar::from_int(2)), reach).compose(&dt),
    )
}

/// The standard sl(2)-triple spanning the rank-one Levi factor of the
/// orthogonal families, built from the bigrading.
pub fn sopq_sl2_triple(alg: &Algebra, bg: &Bigrading) -> (Elt, Elt, Elt) {
    let p = bg.p_elt.as_ref().expect("orthogonal family required");
    let q = bg.q_elt.as_ref().expect("orthogonal family required");
    let sqrt2 = Scalar::sqrt2();
    let e = alg.b_mu(&bg.a, q).scale(&sqrt2);
    let f = alg.b_mu(p, &bg.b).scale(&sqrt2);
    let h = alg
        .b_mu(&bg.a, &bg.b)
        .sub(&alg.b_mu(p, q).scale(&Scalar::from_int(2)));
    (e, f, h)
}
