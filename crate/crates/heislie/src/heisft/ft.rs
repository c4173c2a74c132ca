//! Symbol rules for the partial Fourier transform in the central variable.
//!
//! Operators on the Heisenberg chart (V-coordinates and the central
//! coordinate t) are mapped to operators on the kernel chart with the
//! central Fourier parameter lam and two copies (x- and y-frame) of
//! Lagrangian coordinates. The images of the coordinate multiplications and
//! derivatives generate the map; on a Lagrangian vector v and a
//! complementary vector w the rules are
//!
//! ```text
//!   omega(v, z) .  ->  -(1/(i lam)) (d_{v,x} + d_{v,y})
//!   d_v            ->  -(1/2) (d_{v,x} - d_{v,y})
//!   omega(z, w) .  ->  omega(y - x, w) .
//!   d_w            ->  (i lam / 2) omega(x + y, w) .
//!   d_t            ->  -i lam .
//!   t .            ->  -i d_lam - (1/(2 i lam)) (d_{x+y,x} + d_{x+y,y})
//! ```

use num::Zero;

use crate::diffop::{chart, Chart, DiffOp};
use crate::exactmath::{LaurentPoly, Scalar};
use crate::liecore::{Algebra, Bigrading, Elt};

/// Kernel chart: the invertible Fourier parameter `lam`, the x-frame
/// (`xa`, `xz0`, ..) and the y-frame (`ya`, `yz0`, ..).
pub fn ft_chart(alg: &Algebra, bg: &Bigrading) -> Chart {
    let _ = alg;
    let nj = bg.j_basis.len();
    let mut coords: Vec<(String, bool)> = vec![("lam".to_string(), true)];
    coords.push(("xa".to_string(), false));
    for i in 0..nj {
        coords.push((format!("xz{i}"), false));
    }
    coords.push(("ya".to_string(), false));
    for i in 0..nj {
        coords.push((format!("yz{i}"), false));
    }
    let borrowed: Vec<(&str, bool)> = coords.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    chart("kernel", &borrowed)
}

/// The symbol map: images of the generators of the Weyl algebra of the
/// Heisenberg chart under the partial Fourier transform.
pub struct FtMap {
    pub src: Chart,
    pub dst: Chart,
    nv: usize,
    t_pos: usize,
    /// Image of multiplication by the coordinate x_a (a over the V-basis).
    pub img_mult: Vec<DiffOp>,
    /// Image of the coordinate derivative d_a.
    pub img_der: Vec<DiffOp>,
    /// Image of multiplication by the central coordinate t.
    pub img_mult_t: DiffOp,
    /// Image of d_t.
    pub img_der_t: DiffOp,
}

impl FtMap {
    pub fn new(alg: &Algebra, bg: &Bigrading, src: &Chart, dst: &Chart) -> FtMap {
        let nv = alg.dim_v();
        let svars = alg.scalar_vars().clone();
        let dvars = dst.vars.clone();
        let t_pos = src.vars.index_of("t").expect("source chart must carry t");
        let nj = bg.j_basis.len();
        let lam = LaurentPoly::var_named(&dvars, "lam");
        let lam_inv = lam.invert_monomial();
        let xa = dvars.index_of("xa").expect("missing x-frame");
        let ya = dvars.index_of("ya").expect("missing y-frame");
        let xz: Vec<usize> = (0..nj)
            .map(|i| dvars.index_of(&format!("xz{i}")).expect("missing x-frame"))
            .collect();
        let yz: Vec<usize> = (0..nj)
            .map(|i| dvars.index_of(&format!("yz{i}")).expect("missing y-frame"))
            .collect();
        let omega_s = |x: &Elt, y: &Elt| -> Scalar {
            alg.omega_form(x, y)
                .as_scalar()
                .expect("constant pairing expected")
        };
        // Lagrangian coordinates (c_A, c_{j_i}) and complement part of a
        // constant V-element.
        let split = |u: &Elt| -> (Scalar, Vec<Scalar>, Elt) {
            let ca = &omega_s(u, &bg.b) * &Scalar::rat(1, 2);
            let zc: Vec<Scalar> = bg.j_dual.iter().map(|jd| omega_s(u, jd)).collect();
            let mut star = u.sub(&bg.a.scale(&ca));
            for (i, c) in zc.iter().enumerate() {
                star = star.sub(&bg.j_basis[i].scale(c));
            }
            (ca, zc, star)
        };
        let dir = |a_pos: usize, z_pos: &[usize], ca: &Scalar, zc: &[Scalar]| -> DiffOp {
            let mut op = DiffOp::derivative(dst, a_pos).scale(ca);
            for (i, c) in zc.iter().enumerate() {
                op = op.add(&DiffOp::derivative(dst, z_pos[i]).scale(c));
            }
            op
        };
        // omega(point of one frame, w) for a complement vector w.
        let mult = |a_pos: usize, z_pos: &[usize], w: &Elt| -> LaurentPoly {
            let mut p = LaurentPoly::var(&dvars, a_pos).scale(&omega_s(&bg.a, w));
            for (i, &zi) in z_pos.iter().enumerate() {
                p = p.add(&LaurentPoly::var(&dvars, zi).scale(&omega_s(&bg.j_basis[i], w)));
            }
            p
        };
        let duals = alg.dual_v_basis();
        let mut img_mult = Vec::with_capacity(nv);
        let mut img_der = Vec::with_capacity(nv);
        for a in 0..nv {
            let e = alg.basis_elt(alg.v_idx[a], &svars);
            let ehat_coeffs: Vec<LaurentPoly> = duals[a]
                .iter()
                .map(|s| LaurentPoly::constant(&svars, s.clone()))
                .collect();
            let ehat = alg.from_v_coords(&ehat_coeffs);
            let (hca, hzc, hstar) = split(&ehat);
            // x_a = omega(z, ehat): the complement part transforms by
            // omega(y - x, .), the Lagrangian part by the derivative rule.
            let mut m = DiffOp::from_poly(
                dst,
                &mult(ya, &yz, &hstar).sub(&mult(xa, &xz, &hstar)),
            );
            let d_sum = dir(xa, &xz, &hca, &hzc).add(&dir(ya, &yz, &hca, &hzc));
            // +(1/(i lam)) on the Lagrangian part, since x_a picks up
            // -omega(Lagrangian part, z).
            m = m.add(&d_sum.scale_poly(&lam_inv.scale(&-&Scalar::i())));
            img_mult.push(m);
            let (eca, ezc, estar) = split(&e);
            let mut d = dir(xa, &xz, &eca, &ezc)
                .sub(&dir(ya, &yz, &eca, &ezc))
                .scale(&Scalar::rat(-1, 2));
            let p = mult(xa, &xz, &estar)
                .add(&mult(ya, &yz, &estar))
                .mul(&lam.scale(&(&Scalar::i() * &Scalar::rat(1, 2))));
            d = d.add(&DiffOp::from_poly(dst, &p));
            img_der.push(d);
        }
        let img_der_t = DiffOp::from_poly(dst, &lam.scale(&-&Scalar::i()));
        // -i d_lam - (1/(2 i lam)) ((x+y) . d_x + (x+y) . d_y)
        let mut euler = DiffOp::zero(dst);
        let pairs: Vec<(usize, usize)> = std::iter::once((xa, ya))
            .chain(xz.iter().copied().zip(yz.iter().copied()))
            .collect();
        for &(xi, yi) in &pairs {
            let sum = LaurentPoly::var(&dvars, xi).add(&LaurentPoly::var(&dvars, yi));
            euler = euler.add(&DiffOp::derivative(dst, xi).scale_poly(&sum));
            euler = euler.add(&DiffOp::derivative(dst, yi).scale_poly(&sum));
        }
        let img_mult_t = DiffOp::derivative_named(dst, "lam")
            .scale(&-&Scalar::i())
            .add(&euler.scale_poly(&lam_inv.scale(&(&Scalar::i() * &Scalar::rat(1, 2)))));
        FtMap {
            src: src.clone(),
            dst: dst.clone(),
            nv,
            t_pos,
            img_mult,
            img_der,
            img_mult_t,
            img_der_t,
        }
    }

    /// Image of a normal-ordered operator on the Heisenberg chart. The
    /// coefficient must be polynomial in the V-coordinates and t (no other
    /// chart coordinates); the images of the coordinate multiplications
    /// commute pairwise, so the monomial factorization is unambiguous.
    pub fn map(&self, op: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(&self.dst);
        for (mi, p) in op.terms() {
            for (idx, &k) in mi.iter().enumerate() {
                assert!(
                    k == 0 || idx < self.nv || idx == self.t_pos,
                    "derivative outside the Heisenberg chart"
                );
            }
            let mut dpart = DiffOp::one(&self.dst);
            for a in 0..self.nv {
                for _ in 0..mi[a] {
                    dpart = dpart.compose(&self.img_der[a]);
                }
            }
            for _ in 0..mi[self.t_pos] {
                dpart = dpart.compose(&self.img_der_t);
            }
            for (exps, c) in p.terms() {
                let mut mpart = DiffOp::constant(&self.dst, c.clone());
                for (idx, e) in exps.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    assert!(
                        idx < self.nv || idx == self.t_pos,
                        "coefficient outside the Heisenberg chart"
                    );
                    assert!(
                        e.is_integer() && *e.numer() > 0,
                        "coefficient must be polynomial"
                    );
                    let img = if idx == self.t_pos {
                        &self.img_mult_t
                    } else {
                        &self.img_mult[idx]
                    };
                    for _ in 0..e.to_integer() {
                        mpart = mpart.compose(img);
                    }
                }
                out = out.add(&mpart.compose(&dpart));
            }
        }
        out
    }
}
