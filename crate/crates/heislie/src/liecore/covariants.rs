//! Symplectic covariants: the moment map mu, the cubic Psi, the quartic Q,
//! their symmetrizations, and the bar maps between g_{-1} and g_1.

use super::{Elt, GradedLieAlgebra};
use crate::exactmath::{LaurentPoly, Scalar};

impl GradedLieAlgebra {
    /// Raising bar map g_{-1} -> g_1, Y -> [Y, E].
    pub fn bar_up(&self, y: &Elt) -> Elt {
        self.bracket(y, &self.elt_e(y.vars()))
    }

    /// Lowering bar map g_1 -> g_{-1}, X -> [X, F].
    pub fn bar_down(&self, x: &Elt) -> Elt {
        self.bracket(x, &self.elt_f(x.vars()))
    }

    /// Moment map mu(x) = (1/2) ad(x)^2 E for x in V; lands in m.
    pub fn mu(&self, x: &Elt) -> Elt {
        let e = self.elt_e(x.vars());
        self.bracket(x, &self.bracket(x, &e)).scale(&Scalar::rat(1, 2))
    }

    /// Cubic map Psi(x) = (1/6) ad(x)^3 E for x in V; lands in V.
    pub fn psi(&self, x: &Elt) -> Elt {
        let e = self.elt_e(x.vars());
        self.bracket(x, &self.bracket(x, &self.bracket(x, &e)))
            .scale(&Scalar::rat(1, 6))
    }

    /// Quartic Q(x) with Q(x) F = (1/24) ad(x)^4 E.
    pub fn quartic(&self, x: &Elt) -> LaurentPoly {
        let e = self.elt_e(x.vars());
        let mut acc = e;
        for _ in 0..4 {
            acc = self.bracket(x, &acc);
        }
        let acc = acc.scale(&Scalar::rat(1, 24));
        for (i, c) in acc.coeffs.iter().enumerate() {
            if i != self.idx_f {
                assert!(c.is_zero(), "ad(x)^4 E not in g_-2");
            }
        }
        acc.coeffs[self.idx_f].clone()
    }

    /// Symmetrized moment map B_mu(x,y) = (1/4)([x,[y,E]] + [y,[x,E]]).
    pub fn b_mu(&self, x: &Elt, y: &Elt) -> Elt {
        let e = self.elt_e(x.vars());
        let a = self.bracket(x, &self.bracket(y, &e));
        let b = self.bracket(y, &self.bracket(x, &e));
        a.add(&b).scale(&Scalar::rat(1, 4))
    }

    /// B_tau(x,y)z = (1/2)(omega(x,z) y + omega(y,z) x).
    pub fn b_tau(&self, x: &Elt, y: &Elt, z: &Elt) -> Elt {
        let a = y.scale_poly(&self.omega_form(x, z));
        let b = x.scale_poly(&self.omega_form(y, z));
        a.add(&b).scale(&Scalar::rat(1, 2))
    }

    /// Symmetrized cubic B_Psi(x,y,z) = -(1/3)[B_mu(x,y), z] - (1/6) B_tau(x,y)z.
    pub fn b_psi(&self, x: &Elt, y: &Elt, z: &Elt) -> Elt {
        let a = self.bracket(&self.b_mu(x, y), z).scale(&Scalar::rat(-1, 3));
        let b = self.b_tau(x, y, z).scale(&Scalar::rat(-1, 6));
        a.add(&b)
    }

    /// Symmetrized quartic B_Q(x,y,z,w) = (1/4) omega(x, B_Psi(y,z,w)).
    pub fn b_q(&self, x: &Elt, y: &Elt, z: &Elt, w: &Elt) -> LaurentPoly {
        self.omega_form(x, &self.b_psi(y, z, w))
            .scale(&Scalar::rat(1, 4))
    }

    /// tr(ad(T) restricted to V) for T in g_0.
    pub fn trace_on_v(&self, t: &Elt) -> LaurentPoly {
        let vars = t.vars().clone();
        let mut acc = LaurentPoly::zero(&vars);
        for &vi in &self.v_idx {
            let b = self.basis_elt(vi, &vars);
            let tb = self.bracket(t, &b);
            acc = acc.add(&tb.coeffs[vi]);
        }
        acc
    }
}
