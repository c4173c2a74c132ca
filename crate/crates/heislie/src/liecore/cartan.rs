//! Cartan involutions built from a compatible complex structure J on the
//! symplectic space V = g_{-1}: theta fixes E - F, negates H, conjugates m
//! by J and exchanges g_{-1} and g_1 through J and the bar maps.

use super::{Algebra, Bigrading, Elt, Family};
use crate::exactmath::{ExactMatrix, LaurentPoly, Scalar};
use crate::report::Report;

pub struct CartanInvolution {
    /// J on V in V-basis coordinates (squares to -1).
    pub j_v: ExactMatrix,
    j_v_inv: ExactMatrix,
    /// theta on the whole algebra in basis coordinates.
    pub theta: ExactMatrix,
}

/// Apply a linear map given on the full basis to an element with
/// polynomial coefficients.
pub fn apply_linear(alg: &Algebra, m: &ExactMatrix, x: &Elt) -> Elt {
    let vars = x.vars().clone();
    let mut out = alg.zero_elt(&vars);
    for c in 0..alg.dim() {
        if x.coeffs[c].is_zero() {
            continue;
        }
        for r in 0..alg.dim() {
            let s = m.get(r, c);
            if !s.is_zero() {
                out.coeffs[r] = out.coeffs[r].add(&x.coeffs[c].scale(s));
            }
        }
    }
    out
}

impl CartanInvolution {
    pub fn new(alg: &Algebra, bg: &Bigrading) -> CartanInvolution {
        let nv = alg.dim_v();
        let j_v = match &alg.family {
            Family::Sl(_) => {
                // J(x, y) = (-y, x) on the two Lagrangian halves.
                let nh = nv / 2;
                let mut j = ExactMatrix::zeros(nv, nv);
                for i in 0..nh {
                    j.set(nh + i, i, Scalar::one());
                    j.set(i, nh + i, -Scalar::one());
                }
                j
            }
            Family::So(_, _) => {
                // J(V, W) = (JV, WJ): (v1, v2) -> (v2, -v1) and
                // (w1, w2) -> (-w2, w1).
                let mut j = ExactMatrix::zeros(nv, nv);
                for a in 0..nv {
                    let name = alg.basis_name(alg.v_idx[a]).to_string();
                    let (partner, sign) = if let Some(i) = name.strip_prefix("v1_") {
                        (format!("v2_{i}"), -Scalar::one())
                    } else if let Some(i) = name.strip_prefix("v2_") {
                        (format!("v1_{i}"), Scalar::one())
                    } else if let Some(i) = name.strip_prefix("w1_") {
                        (format!("w2_{i}"), Scalar::one())
                    } else if let Some(i) = name.strip_prefix("w2_") {
                        (format!("w1_{i}"), -Scalar::one())
                    } else {
                        panic!("unexpected V basis name {name}");
                    };
                    let row = alg
                        .v_idx
                        .iter()
                        .position(|&k| alg.basis_name(k) == partner)
                        .unwrap();
                    j.set(row, a, sign);
                }
                j
            }
            Family::G2 => {
                // dim J = 1, so V = span{A, C, D, B} and J is determined by
                // JA = -B, JB = A, JC = -D, JD = C.
                let ju = bg.jordan.as_ref().expect("g2 Jordan unit required");
                let span = [&bg.a, &ju.c, &ju.d, &bg.b];
                let images = [bg.b.neg(), ju.d.neg(), ju.c.clone(), bg.a.clone()];
                let col = |e: &Elt| -> Vec<Scalar> {
                    (0..nv)
                        .map(|r| e.coeffs[alg.v_idx[r]].as_scalar().unwrap())
                        .collect()
                };
                let s = ExactMatrix::from_fn(nv, nv, |r, c| col(span[c])[r].clone());
                let img = ExactMatrix::from_fn(nv, nv, |r, c| col(&images[c])[r].clone());
                img.matmul(&s.inverse().expect("A, C, D, B must span V"))
            }
        };
        let j_v_inv = j_v.inverse().expect("J must be invertible");

        let dim = alg.dim();
        let sv = alg.scalar_vars().clone();
        let mut theta = ExactMatrix::zeros(dim, dim);
        theta.set(alg.idx_f, alg.idx_e, -Scalar::one());
        theta.set(alg.idx_e, alg.idx_f, -Scalar::one());
        theta.set(alg.idx_h, alg.idx_h, -Scalar::one());
        for a in 0..nv {
            // theta y = bar_up(J y) for y in g_{-1}.
            let jy = alg.from_v_coords(
                &(0..nv)
                    .map(|r| LaurentPoly::constant(&sv, j_v.get(r, a).clone()))
                    .collect::<Vec<_>>(),
            );
            let up = alg.bar_up(&jy);
            for k in 0..dim {
                let c = up.coeffs[k].as_scalar().unwrap();
                if !c.is_zero() {
                    theta.set(k, alg.v_idx[a], c);
                }
            }
            // theta x = -J xbar for x in g_1; the bar basis has xbar = e_a.
            for r in 0..nv {
                let c = j_v.get(r, a);
                if !c.is_zero() {
                    theta.set(alg.v_idx[r], alg.vbar_idx[a], -c);
                }
            }
        }
        // theta T = J T J^{-1} on m: solve the conjugated V-action back
        // into the m basis.
        let nm = alg.m_idx.len();
        let act_of = |e: &Elt| -> ExactMatrix {
            ExactMatrix::from_fn(nv, nv, |r, c| {
                alg.bracket(e, &alg.basis_elt(alg.v_idx[c], &sv)).coeffs[alg.v_idx[r]]
                    .as_scalar()
                    .unwrap()
            })
        };
        let mut big = ExactMatrix::zeros(nv * nv, nm);
        let acts: Vec<ExactMatrix> = alg
            .m_idx
            .iter()
            .map(|&mi| act_of(&alg.basis_elt(mi, &sv)))
            .collect();
        for (c, a) in acts.iter().enumerate() {
            for r in 0..nv {
                for s in 0..nv {
                    big.set(r * nv + s, c, a.get(r, s).clone());
                }
            }
        }
        for (c, a) in acts.iter().enumerate() {
            let target = j_v.matmul(a).matmul(&j_v_inv);
            let rhs: Vec<Scalar> = (0..nv * nv)
                .map(|k| target.get(k / nv, k % nv).clone())
                .collect();
            let sol = big
                .solve(&rhs)
                .expect("J-conjugated action must stay in m");
            for (k, s) in sol.iter().enumerate() {
                if !s.is_zero() {
                    theta.set(alg.m_idx[k], alg.m_idx[c], s.clone());
                }
            }
        }
        CartanInvolution { j_v, j_v_inv, theta }
    }

    pub fn apply(&self, alg: &Algebra, x: &Elt) -> Elt {
        apply_linear(alg, &self.theta, x)
    }

    /// Apply J to the g_{-1} component (the element must lie in V).
    pub fn apply_j(&self, alg: &Algebra, x: &Elt) -> Elt {
        for (i, c) in x.coeffs.iter().enumerate() {
            assert!(
                c.is_zero() || alg.v_idx.contains(&i),
                "apply_j requires an element of V"
            );
        }
        let vars = x.vars().clone();
        let mut out = alg.zero_elt(&vars);
        for a in 0..alg.dim_v() {
            let xa = &x.coeffs[alg.v_idx[a]];
            if xa.is_zero() {
                continue;
            }
            for r in 0..alg.dim_v() {
                let s = self.j_v.get(r, a);
                if !s.is_zero() {
                    out.coeffs[alg.v_idx[r]] = out.coeffs[alg.v_idx[r]].add(&xa.scale(s));
                }
            }
        }
        out
    }

    /// The inner product (x|y) = (1/4) omega(Jx, y) on V.
    pub fn inner_product(&self, alg: &Algebra, x: &Elt, y: &Elt) -> LaurentPoly {
        alg.omega_form(&self.apply_j(alg, x), y)
            .scale(&Scalar::rat(1, 4))
    }

    /// Basis of the fixed subspace k = g^theta.
    pub fn k_basis(&self, alg: &Algebra) -> Vec<Elt> {
        let dim = alg.dim();
        let sv = alg.scalar_vars().clone();
        self.theta
            .sub(&ExactMatrix::identity(dim))
            .kernel()
            .into_iter()
            .map(|v| alg.from_scalars(v, &sv))
            .collect()
    }

    pub fn verify(&self, alg: &Algebra) -> Report {
        let mut rep = Report::new("cartan", alg.name(), 0);
        let dim = alg.dim();
        let nv = alg.dim_v();
        let sv = alg.scalar_vars().clone();

        // theta^2 = 1 and theta is an automorphism on all basis pairs.
        rep.push(
            "theta_squared_identity",
            self.theta
                .matmul(&self.theta)
                .sub(&ExactMatrix::identity(dim))
                .is_zero(),
            None,
        );
        let mut auto = true;
        for i in 0..dim {
            let ti = self.apply(alg, &alg.basis_elt(i, &sv));
            for j in i + 1..dim {
                let tj = self.apply(alg, &alg.basis_elt(j, &sv));
                let lhs = self.apply(
                    alg,
                    &alg.bracket(&alg.basis_elt(i, &sv), &alg.basis_elt(j, &sv)),
                );
                if !lhs.sub(&alg.bracket(&ti, &tj)).is_zero() {
                    auto = false;
                }
            }
        }
        rep.push("theta_automorphism", auto, None);

        // -kappa(theta X, Y) is symmetric positive definite.
        let gram = self
            .theta
            .transpose()
            .matmul(alg.killing_matrix())
            .neg();
        rep.push(
            "killing_theta_positive_definite",
            gram.sub(&gram.transpose()).is_zero() && gram.is_positive_definite(),
            None,
        );

        // J^2 = -1 and J symplectic.
        rep.push(
            "j_squared_minus_one",
            self.j_v
                .matmul(&self.j_v)
                .add(&ExactMatrix::identity(nv))
                .is_zero(),
            None,
        );
        rep.push(
            "j_symplectic",
            self.j_v
                .transpose()
                .matmul(alg.omega_matrix())
                .matmul(&self.j_v)
                .sub(alg.omega_matrix())
                .is_zero(),
            None,
        );

        // (x|y) = (1/4) omega(Jx, y) is symmetric positive definite; this
        // is the strict form of omega(Jx, x) >= 0.
        let ip = ExactMatrix::from_fn(nv, nv, |r, c| {
            self.inner_product(
                alg,
                &alg.basis_elt(alg.v_idx[r], &sv),
                &alg.basis_elt(alg.v_idx[c], &sv),
            )
            .as_scalar()
            .unwrap()
        });
        rep.push(
            "inner_product_positive_definite",
            ip.sub(&ip.transpose()).is_zero() && ip.is_positive_definite(),
            None,
        );
        if let Family::Sl(_) = alg.family {
            // (x,y | x',y') = (1/4)(x^T x' + y^T y').
            rep.push(
                "sl_inner_product_quarter_identity",
                ip.sub(&ExactMatrix::identity(nv).scale(&Scalar::rat(1, 4)))
                    .is_zero(),
                None,
            );
        }

        // mu(Jx) = J mu(x) J^{-1}, polarized over all basis pairs:
        // theta(B_mu(x, y)) = B_mu(Jx, Jy).
        let mut mu_ok = true;
        for a in 0..nv {
            let ea = alg.basis_elt(alg.v_idx[a], &sv);
            let jea = self.apply_j(alg, &ea);
            for b in a..nv {
                let eb = alg.basis_elt(alg.v_idx[b], &sv);
                let jeb = self.apply_j(alg, &eb);
                let lhs = self.apply(alg, &alg.b_mu(&ea, &eb));
                if !lhs.sub(&alg.b_mu(&jea, &jeb)).is_zero() {
                    mu_ok = false;
                }
            }
        }
        rep.push("mu_j_conjugation", mu_ok, None);

        // Dimension of k = g^theta.
        let expect_k = match &alg.family {
            Family::Sl(n) => n * (n - 1) / 2,
            Family::So(p, q) => p * (p - 1) / 2 + q * (q - 1) / 2,
            Family::G2 => 6,
        };
        rep.push("k_dimension", self.k_basis(alg).len() == expect_k, None);

        // J^{-1} = -J (consistency of the stored inverse).
        rep.push(
            "j_inverse_is_minus_j",
            self.j_v_inv.add(&self.j_v).is_zero(),
            None,
        );
        rep.finalize()
    }
}
