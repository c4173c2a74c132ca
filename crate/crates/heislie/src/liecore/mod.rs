//! Graded Lie algebras with Heisenberg parabolic structure.
//!
//! An algebra is stored as exact structure constants over an ordered basis
//! adapted to the 5-grading g = g_{-2} + g_{-1} + g_0 + g_1 + g_2 with
//! distinguished sl2-triple {E, H, F}. The g_{-1} block is the symplectic
//! space V; the g_1 basis is fixed as the image of the V-basis under the
//! raising bar map X -> [X, E], so both bar maps are coordinate identities.

mod bigrading;
mod cartan;
mod covariants;
mod realize;
mod suites;
#[cfg(test)]
mod tests;
mod weyl;

pub use bigrading::{promote, Bigrading, JordanUnit};
pub use cartan::{apply_linear, CartanInvolution};
pub use suites::{
    ad_exp, bezoutian_constant, joseph_generator_count, joseph_generators, m_factors, su2_ideal,
    verify_decomposition_suite, verify_structure_suite, UeWord,
};
pub use weyl::{WeylTables, CHI_W0_SQUARED, CHI_W1_SQUARED, CHI_W2_SQUARED};

use crate::exactmath::{ExactMatrix, LaurentPoly, Scalar, VarSet, Vars};
use std::sync::Arc;

/// Which construction produced the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Sl(usize),
    So(usize, usize),
    G2,
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Sl(n) => format!("sl({n})"),
            Family::So(p, q) => format!("so({p},{q})"),
            Family::G2 => "g2".to_string(),
        }
    }
}

/// Parse labels like "sl(4)", "so(5,5)", "g2".
pub fn parse_family(label: &str) -> Option<Family> {
    let s = label.trim();
    if s == "g2" {
        return Some(Family::G2);
    }
    if let Some(rest) = s.strip_prefix("sl(").and_then(|r| r.strip_suffix(')')) {
        return rest.parse().ok().map(Family::Sl);
    }
    if let Some(rest) = s.strip_prefix("so(").and_then(|r| r.strip_suffix(')')) {
        let (p, q) = rest.split_once(',')?;
        return Some(Family::So(p.trim().parse().ok()?, q.trim().parse().ok()?));
    }
    None
}

/// A Lie algebra element with polynomial coefficients over the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Elt {
    pub coeffs: Vec<LaurentPoly>,
}

impl Elt {
    pub fn add(&self, rhs: &Elt) -> Elt {
        Elt {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Elt) -> Elt {
        Elt {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Elt {
        Elt {
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Elt {
        Elt {
            coeffs: self.coeffs.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Elt {
        Elt {
            coeffs: self.coeffs.iter().map(|a| a.mul(p)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn vars(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    /// Evaluate polynomial coefficients at a scalar point.
    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }
}

/// Graded Lie algebra with exact structure constants.
pub struct GradedLieAlgebra {
    pub family: Family,
    basis_names: Vec<String>,
    grade: Vec<i32>,
    /// bracket[i][j] = sparse expansion of [b_i, b_j].
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    pub idx_f: usize,
    pub idx_h: usize,
    pub idx_e: usize,
    /// Basis indices of V = g_{-1}, in V-order.
    pub v_idx: Vec<usize>,
    /// Basis indices of the bar images [v_alpha, E] spanning g_1.
    pub vbar_idx: Vec<usize>,
    /// Basis indices of m (the H-orthogonal reductive part of g_0).
    pub m_idx: Vec<usize>,
    omega: ExactMatrix,
    omega_inv: ExactMatrix,
    killing: ExactMatrix,
    scalar_vars: Vars,
}

pub type Algebra = Arc<GradedLieAlgebra>;

impl GradedLieAlgebra {
    /// Construct an algebra for the given family; panics on unsupported
    /// parameters (sl needs n >= 3, so needs p >= q >= 3).
    pub fn construct(family: &Family) -> Algebra {
        match family {
            Family::Sl(n) => realize::build_sl(*n),
            Family::So(p, q) => realize::build_so(*p, *q),
            Family::G2 => realize::build_g2(),
        }
    }

    /// Internal: finish construction from a bracket table.
    pub(crate) fn from_table(
        family: Family,
        basis_names: Vec<String>,
        grade: Vec<i32>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
        idx_f: usize,
        idx_h: usize,
        idx_e: usize,
        v_idx: Vec<usize>,
        vbar_idx: Vec<usize>,
        m_idx: Vec<usize>,
    ) -> Algebra {
        let dim = basis_names.len();
        let nv = v_idx.len();
        // omega from [X, Y] = omega(X, Y) F on V.
        let mut omega = ExactMatrix::zeros(nv, nv);
        for a in 0..nv {
            for b in 0..nv {
                let mut c = Scalar::zero();
                for (k, s) in &table[v_idx[a]][v_idx[b]] {
                    if *k == idx_f {
                        c = s.clone();
                    } else {
                        panic!("[V,V] not in g_-2");
                    }
                }
                omega.set(a, b, c);
            }
        }
        let omega_inv = omega.inverse().expect("symplectic form degenerate");
        // Killing form from structure constants.
        let mut ad: Vec<ExactMatrix> = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut m = ExactMatrix::zeros(dim, dim);
            for j in 0..dim {
                for (k, c) in &table[i][j] {
                    m.set(*k, j, c.clone());
                }
            }
            ad.push(m);
        }
        let mut killing = ExactMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let mut tr = Scalar::zero();
                for r in 0..dim {
                    for k in 0..dim {
                        let a = ad[i].get(r, k);
                        if a.is_zero() {
                            continue;
                        }
                        let b = ad[j].get(k, r);
                        if !b.is_zero() {
                            tr += &(a * b);
                        }
                    }
                }
                killing.set(i, j, tr.clone());
                killing.set(j, i, tr);
            }
        }
        let alg = GradedLieAlgebra {
            family,
            basis_names,
            grade,
            table,
            idx_f,
            idx_h,
            idx_e,
            v_idx,
            vbar_idx,
            m_idx,
            omega,
            omega_inv,
            killing,
            scalar_vars: VarSet::new(&[]),
        };
        alg.assert_basic_structure();
        Arc::new(alg)
    }

    fn assert_basic_structure(&self) {
        let dim = self.dim();
        // Grading: [b_i, b_j] lands in grade g_i + g_j.
        for i in 0..dim {
            for j in 0..dim {
                for (k, _) in &self.table[i][j] {
                    assert_eq!(
                        self.grade[*k],
                        self.grade[i] + self.grade[j],
                        "grading violated by [{}, {}]",
                        self.basis_names[i],
                        self.basis_names[j]
                    );
                }
            }
        }
        // sl2-triple.
        assert_eq!(
            self.table[self.idx_e][self.idx_f],
            vec![(self.idx_h, Scalar::one())],
            "[E,F] != H"
        );
        for i in 0..dim {
            let expect: Vec<(usize, Scalar)> = if self.grade[i] == 0 {
                vec![]
            } else {
                vec![(i, Scalar::from_int(self.grade[i] as i64))]
            };
            assert_eq!(self.table[self.idx_h][i], expect, "[H, b_i] != grade * b_i");
        }
        // Bar maps mutually inverse on the chosen bases.
        for (a, &vi) in self.v_idx.iter().enumerate() {
            let up = &self.table[vi][self.idx_e];
            assert_eq!(up, &vec![(self.vbar_idx[a], Scalar::one())]);
            let down = &self.table[self.vbar_idx[a]][self.idx_f];
            assert_eq!(down, &vec![(vi, Scalar::one())]);
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn dim_v(&self) -> usize {
        self.v_idx.len()
    }

    pub fn name(&self) -> String {
        self.family.label()
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn grade_of(&self, i: usize) -> i32 {
        self.grade[i]
    }

    /// dim g_1 + 4; equals kappa(E, F).
    pub fn p_constant(&self) -> Scalar {
        Scalar::from_int(self.dim_v() as i64 + 4)
    }

    /// rho = (dim g_1)/2 + 1 under the identification nu -> nu(H).
    pub fn rho(&self) -> Scalar {
        Scalar::rat(self.dim_v() as i64, 2) + Scalar::one()
    }

    pub fn scalar_vars(&self) -> &Vars {
        &self.scalar_vars
    }

    pub fn structure_pairs(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    // ---- elements ----

    pub fn zero_elt(&self, vars: &Vars) -> Elt {
        Elt {
            coeffs: vec![LaurentPoly::zero(vars); self.dim()],
        }
    }

    pub fn basis_elt(&self, i: usize, vars: &Vars) -> Elt {
        let mut e = self.zero_elt(vars);
        e.coeffs[i] = LaurentPoly::one(vars);
        e
    }

    pub fn elt_e(&self, vars: &Vars) -> Elt {
        self.basis_elt(self.idx_e, vars)
    }

    pub fn elt_h(&self, vars: &Vars) -> Elt {
        self.basis_elt(self.idx_h, vars)
    }

    pub fn elt_f(&self, vars: &Vars) -> Elt {
        self.basis_elt(self.idx_f, vars)
    }

    /// Element of V from V-order coefficients.
    pub fn from_v_coords(&self, coords: &[LaurentPoly]) -> Elt {
        assert_eq!(coords.len(), self.dim_v());
        let vars = coords[0].vars().clone();
        let mut e = self.zero_elt(&vars);
        for (a, c) in coords.iter().enumerate() {
            e.coeffs[self.v_idx[a]] = c.clone();
        }
        e
    }

    /// Element of g_1 from V-order coefficients of the bar basis.
    pub fn from_vbar_coords(&self, coords: &[LaurentPoly]) -> Elt {
        assert_eq!(coords.len(), self.dim_v());
        let vars = coords[0].vars().clone();
        let mut e = self.zero_elt(&vars);
        for (a, c) in coords.iter().enumerate() {
            e.coeffs[self.vbar_idx[a]] = c.clone();
        }
        e
    }

    pub fn from_scalars(&self, coords: Vec<Scalar>, vars: &Vars) -> Elt {
        assert_eq!(coords.len(), self.dim());
        Elt {
            coeffs: coords
                .into_iter()
                .map(|s| LaurentPoly::constant(vars, s))
                .collect(),
        }
    }

    /// V-order coordinates of the g_{-1} component.
    pub fn v_coords<'a>(&self, x: &'a Elt) -> Vec<&'a LaurentPoly> {
        self.v_idx.iter().map(|&i| &x.coeffs[i]).collect()
    }

    /// V-order coordinates of the g_1 component in the bar basis.
    pub fn vbar_coords<'a>(&self, x: &'a Elt) -> Vec<&'a LaurentPoly> {
        self.vbar_idx.iter().map(|&i| &x.coeffs[i]).collect()
    }

    /// Project onto the grade-i subspace.
    pub fn grade_component(&self, x: &Elt, g: i32) -> Elt {
        let vars = x.vars().clone();
        let mut out = self.zero_elt(&vars);
        for i in 0..self.dim() {
            if self.grade[i] == g {
                out.coeffs[i] = x.coeffs[i].clone();
            }
        }
        out
    }

    pub fn bracket(&self, x: &Elt, y: &Elt) -> Elt {
        let vars = x.coeffs[0].vars().clone();
        let mut out = self.zero_elt(&vars);
        for i in 0..self.dim() {
            if x.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if y.coeffs[j].is_zero() {
                    continue;
                }
                let prod = x.coeffs[i].mul(&y.coeffs[j]);
                for (k, c) in &self.table[i][j] {
                    out.coeffs[*k] = out.coeffs[*k].add(&prod.scale(c));
                }
            }
        }
        out
    }

    /// Symplectic form of the g_{-1} components.
    pub fn omega_form(&self, x: &Elt, y: &Elt) -> LaurentPoly {
        let vars = x.coeffs[0].vars().clone();
        let mut acc = LaurentPoly::zero(&vars);
        for a in 0..self.dim_v() {
            let xa = &x.coeffs[self.v_idx[a]];
            if xa.is_zero() {
                continue;
            }
            for b in 0..self.dim_v() {
                let w = self.omega.get(a, b);
                if w.is_zero() {
                    continue;
                }
                acc = acc.add(&xa.mul(&y.coeffs[self.v_idx[b]]).scale(w));
            }
        }
        acc
    }

    pub fn omega_matrix(&self) -> &ExactMatrix {
        &self.omega
    }

    pub fn killing_matrix(&self) -> &ExactMatrix {
        &self.killing
    }

    pub fn killing_form(&self, x: &Elt, y: &Elt) -> LaurentPoly {
        let vars = x.coeffs[0].vars().clone();
        let mut acc = LaurentPoly::zero(&vars);
        for i in 0..self.dim() {
            if x.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                let k = self.killing.get(i, j);
                if k.is_zero() || y.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&x.coeffs[i].mul(&y.coeffs[j]).scale(k));
            }
        }
        acc
    }

    /// Dual basis e^_alpha of the V-basis: omega(e_alpha, e^_beta) =
    /// delta_{alpha beta}, returned as V-order coordinate vectors.
    pub fn dual_v_basis(&self) -> Vec<Vec<Scalar>> {
        // e^_beta = sum_gamma (omega^{-1})_{gamma beta} e_gamma gives
        // omega(e_alpha, e^_beta) = (Omega Omega^{-1})_{alpha beta}.
        (0..self.dim_v())
            .map(|beta| self.omega_inv.column(beta))
            .collect()
    }

    /// Jacobi residual [[x,y],z] + [[y,z],x] + [[z,x],y].
    pub fn jacobi(&self, x: &Elt, y: &Elt, z: &Elt) -> Elt {
        let a = self.bracket(&self.bracket(x, y), z);
        let b = self.bracket(&self.bracket(y, z), x);
        let c = self.bracket(&self.bracket(z, x), y);
        a.add(&b).add(&c)
    }

    /// Check the Jacobi identity on all basis triples (exact).
    pub fn jacobi_all_triples(&self) -> bool {
        let dim = self.dim();
        let sv = self.scalar_vars.clone();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let x = self.basis_elt(i, &sv);
                    let y = self.basis_elt(j, &sv);
                    let z = self.basis_elt(k, &sv);
                    if !self.jacobi(&x, &y, &z).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}
