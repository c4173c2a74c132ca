//! Exact computer algebra for Heisenberg-graded Lie algebras and the
//! differential-operator models of their minimal representations.
//!
//! Everything is computed over the number field Q(i, sqrt2) — there is no
//! floating point anywhere. The crate provides:
//!
//! * [`exactmath`] — the scalar field, sparse Laurent polynomials, and exact
//!   linear algebra;
//! * [`liecore`] — graded Lie algebras (sl(n), so(p,q), the split g2),
//!   symplectic covariants, bigradings, Cartan involutions, Weyl tables;
//! * [`diffop`] — Weyl-algebra differential operators on named charts;
//! * [`confsys`] — the degenerate principal-series Lie algebra action and
//!   the conformally invariant operator systems;
//! * [`heisft`] — Heisenberg-group Fourier symbol calculus, the metaplectic
//!   action, invariant distribution vectors, Bernstein–Sato recursion;
//! * [`minrep`] — the L^2-model action, intertwiners, Weyl-element actions;
//! * [`ktype`] — symbolic K-Bessel calculus and lowest K-type ladders;
//! * [`report`] — deterministic JSON verification reports for the CLI.

pub mod confsys;
pub mod diffop;
pub mod exactmath;
pub mod heisft;
pub mod ktype;
pub mod liecore;
pub mod minrep;
pub mod report;

pub use exactmath::{ExactMatrix, LaurentPoly, Scalar};
