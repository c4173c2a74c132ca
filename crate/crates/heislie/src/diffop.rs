//! Weyl-algebra layer: differential operators with Laurent-polynomial
//! coefficients over named coordinate charts. Operators are stored in
//! normal order (coefficients to the left of derivatives) and all algebra
//! is exact.

use crate::exactmath::{LaurentPoly, Sampler, Scalar, VarSet, Vars};
use crate::liecore::Algebra;
use crate::report::Report;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A coordinate chart: named coordinates, with invertible coordinates
/// allowed negative/rational exponents, plus an optional sign assumption
/// per coordinate (the four quadrant charts in the sign of two invertible
/// coordinates are distinct charts).
#[derive(Debug)]
pub struct ChartData {
    pub name: String,
    pub vars: Vars,
    /// Sign assumptions: coordinate index -> +1 or -1.
    pub signs: BTreeMap<usize, i8>,
}

pub type Chart = Arc<ChartData>;

/// Build a chart from (name, invertible) coordinate declarations.
pub fn chart(name: &str, coords: &[(&str, bool)]) -> Chart {
    Arc::new(ChartData {
        name: name.to_string(),
        vars: VarSet::new(coords),
        signs: BTreeMap::new(),
    })
}

/// Build a sign chart: like `chart`, with fixed signs for some coordinates.
pub fn sign_chart(name: &str, coords: &[(&str, bool)], signs: &[(&str, i8)]) -> Chart {
    let vars = VarSet::new(coords);
    let signs = signs
        .iter()
        .map(|(n, s)| {
            assert!(*s == 1 || *s == -1, "sign must be +1 or -1");
            (vars.index_of(n).expect("unknown sign coordinate"), *s)
        })
        .collect();
    Arc::new(ChartData {
        name: name.to_string(),
        vars,
        signs,
    })
}

impl ChartData {
    pub fn sign_of(&self, name: &str) -> Option<i8> {
        self.vars.index_of(name).and_then(|i| self.signs.get(&i).copied())
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }
}

fn same_chart(a: &Chart, b: &Chart) -> bool {
    Arc::ptr_eq(a, b)
}

/// A differential operator in normal order: a finite sum of terms
/// p(x) * d^alpha with multi-index alpha over the chart coordinates.
#[derive(Clone, Debug)]
pub struct DiffOp {
    pub chart: Chart,
    /// derivative multi-index -> coefficient; no zero coefficients stored.
    terms: BTreeMap<Vec<u64>, LaurentPoly>,
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.terms == other.terms
    }
}
impl Eq for DiffOp {}

impl DiffOp {
    pub fn zero(chart: &Chart) -> DiffOp {
        DiffOp {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The multiplication operator f -> p * f.
    pub fn from_poly(chart: &Chart, p: &LaurentPoly) -> DiffOp {
        let mut op = DiffOp::zero(chart);
        op.add_term(vec![0; chart.dim()], p.clone());
        op
    }

    pub fn constant(chart: &Chart, c: Scalar) -> DiffOp {
        DiffOp::from_poly(chart, &LaurentPoly::constant(&chart.vars, c))
    }

    pub fn one(chart: &Chart) -> DiffOp {
        DiffOp::constant(chart, Scalar::one())
    }

    /// The coordinate derivative d/dx_idx.
    pub fn derivative(chart: &Chart, idx: usize) -> DiffOp {
        assert!(idx < chart.dim(), "derivative of undeclared coordinate");
        let mut mi = vec![0; chart.dim()];
        mi[idx] = 1;
        let mut op = DiffOp::zero(chart);
        op.add_term(mi, LaurentPoly::one(&chart.vars));
        op
    }

    pub fn derivative_named(chart: &Chart, name: &str) -> DiffOp {
        let idx = chart
            .vars
            .index_of(name)
            .unwrap_or_else(|| panic!("no coordinate {name} on chart {}", chart.name));
        DiffOp::derivative(chart, idx)
    }

    pub fn add_term(&mut self, mi: Vec<u64>, coeff: LaurentPoly) {
        assert_eq!(mi.len(), self.chart.dim());
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mi) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &DiffOp) -> DiffOp {
        assert!(same_chart(&self.chart, &rhs.chart), "chart mismatch");
        let mut out = self.clone();
        for (mi, c) in &rhs.terms {
            out.add_term(mi.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &DiffOp) -> DiffOp {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        if s.is_zero() {
            return DiffOp::zero(&self.chart);
        }
        DiffOp {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(s))).collect(),
        }
    }

    /// Left-multiply by a polynomial coefficient.
    pub fn scale_poly(&self, p: &LaurentPoly) -> DiffOp {
        let mut out = DiffOp::zero(&self.chart);
        for (mi, c) in &self.terms {
            out.add_term(mi.clone(), c.mul(p));
        }
        out
    }

    /// Iterated partial derivative d^mi applied to a polynomial.
    fn multi_partial(p: &LaurentPoly, mi: &[u64]) -> LaurentPoly {
        let mut out = p.clone();
        for (idx, &k) in mi.iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = out.partial(idx);
            }
        }
        out
    }

    /// Exact normal-ordered composition (self after rhs).
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        assert!(same_chart(&self.chart, &rhs.chart), "chart mismatch");
        let n = self.chart.dim();
        let mut out = DiffOp::zero(&self.chart);
        for (alpha, p) in &self.terms {
            for (beta, q) in &rhs.terms {
                // p d^alpha (q d^beta) = p sum_{gamma <= alpha}
                //   binom(alpha, gamma) d^{alpha-gamma}(q) d^{gamma+beta}.
                let mut gamma = vec![0u64; n];
                loop {
                    let mut binom = Scalar::one();
                    for i in 0..n {
                        binom = binom * Scalar::from_int(binomial(alpha[i], gamma[i]));
                    }
                    let delta: Vec<u64> = (0..n).map(|i| alpha[i] - gamma[i]).collect();
                    let dq = Self::multi_partial(q, &delta);
                    if !dq.is_zero() {
                        let mi: Vec<u64> = (0..n).map(|i| gamma[i] + beta[i]).collect();
                        out.add_term(mi, p.mul(&dq).scale(&binom));
                    }
                    // Next gamma <= alpha in odometer order.
                    let mut i = 0;
                    loop {
                        if i == n {
                            break;
                        }
                        if gamma[i] < alpha[i] {
                            gamma[i] += 1;
                            break;
                        }
                        gamma[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    /// Apply to a polynomial function on the chart.
    pub fn apply_poly(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.chart.vars);
        for (mi, p) in &self.terms {
            let df = Self::multi_partial(f, mi);
            if !df.is_zero() {
                out = out.add(&p.mul(&df));
            }
        }
        out
    }

    /// Weighted Euler operator sum_i w_i x_i d_i.
    pub fn weighted_euler(chart: &Chart, weights: &[i64]) -> DiffOp {
        assert_eq!(weights.len(), chart.dim());
        let mut out = DiffOp::zero(chart);
        for (i, &w) in weights.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let mut mi = vec![0; chart.dim()];
            mi[i] = 1;
            out.add_term(
                mi,
                LaurentPoly::var(&chart.vars, i).scale(&Scalar::from_int(w)),
            );
        }
        out
    }

    /// Total derivative order of the highest-order term.
    pub fn order(&self) -> u64 {
        self.terms
            .keys()
            .map(|mi| mi.iter().sum())
            .max()
            .unwrap_or(0)
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * ((n - i) as i64) / (i as i64 + 1);
    }
    acc
}

/// Check that a basis-indexed operator family is a Lie algebra
/// homomorphism: [rep(X), rep(Y)] = rep([X, Y]) on all basis pairs.
pub fn commutator_table(alg: &Algebra, rep: &[DiffOp]) -> Report {
    assert_eq!(rep.len(), alg.dim());
    let chart = rep[0].chart.clone();
    let mut rep_out = Report::new("commutator_table", alg.name(), 0);
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let mut expect = DiffOp::zero(&chart);
            for (k, c) in alg.structure_pairs(i, j) {
                expect = expect.add(&rep[*k].scale(c));
            }
            let diff = rep[i].commutator(&rep[j]).sub(&expect);
            rep_out.push(
                format!(
                    "bracket_{}_{}",
                    alg.basis_name(i),
                    alg.basis_name(j)
                ),
                diff.is_zero(),
                None,
            );
        }
    }
    rep_out.finalize()
}

/// Random operator of small order with small rational coefficients.
pub fn sample_op(chart: &Chart, smp: &mut Sampler, max_order: u64) -> DiffOp {
    let n = chart.dim();
    let mut op = DiffOp::zero(chart);
    for _ in 0..3 {
        let mut mi = vec![0u64; n];
        for m in mi.iter_mut() {
            *m = smp.below(max_order as usize + 1) as u64;
        }
        op.add_term(mi, sample_poly(chart, smp));
    }
    op
}

/// Random polynomial with a few small monomials.
pub fn sample_poly(chart: &Chart, smp: &mut Sampler) -> LaurentPoly {
    let n = chart.dim();
    let mut p = LaurentPoly::zero(&chart.vars);
    for _ in 0..3 {
        let exps: Vec<num::rational::Ratio<i64>> = (0..n)
            .map(|i| {
                let e = smp.below(3) as i64;
                if chart.vars.is_invertible(i) && smp.below(2) == 1 {
                    num::rational::Ratio::from_integer(-e)
                } else {
                    num::rational::Ratio::from_integer(e)
                }
            })
            .collect();
        p = p.add(&LaurentPoly::monomial(&chart.vars, exps, smp.rational()));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc_chart() -> Chart {
        chart("nc", &[("x", false), ("y", false), ("t", false)])
    }

    #[test]
    fn derivative_commutes_with_coordinate() {
        let ch = nc_chart();
        let dt = DiffOp::derivative_named(&ch, "t");
        let t = DiffOp::from_poly(&ch, &LaurentPoly::var_named(&ch.vars, "t"));
        let c = dt.commutator(&t);
        assert_eq!(c, DiffOp::one(&ch));
    }

    #[test]
    fn weighted_euler_degree() {
        // E = x dx + y dy + 2 t dt applied to x^2 t gives 4 x^2 t.
        let ch = nc_chart();
        let e = DiffOp::weighted_euler(&ch, &[1, 1, 2]);
        let x = LaurentPoly::var_named(&ch.vars, "x");
        let t = LaurentPoly::var_named(&ch.vars, "t");
        let f = x.mul(&x).mul(&t);
        assert!(e.apply_poly(&f).sub(&f.scale(&Scalar::from_int(4))).is_zero());
    }

    #[test]
    fn composition_associative_and_compatible_with_apply() {
        let ch = Arc::new(ChartData {
            name: "min".into(),
            vars: VarSet::new(&[("l", true), ("a", true), ("z", false)]),
            signs: BTreeMap::new(),
        });
        let mut smp = Sampler::new(5);
        for _ in 0..100 {
            let a = sample_op(&ch, &mut smp, 2);
            let b = sample_op(&ch, &mut smp, 2);
            let f = sample_poly(&ch, &mut smp);
            let seq = a.apply_poly(&b.apply_poly(&f));
            let composed = a.compose(&b).apply_poly(&f);
            assert!(seq.sub(&composed).is_zero(), "apply/compose mismatch");
        }
        for _ in 0..8 {
            let a = sample_op(&ch, &mut smp, 2);
            let b = sample_op(&ch, &mut smp, 2);
            let c = sample_op(&ch, &mut smp, 1);
            let assoc = a.compose(&b.compose(&c)).sub(&a.compose(&b).compose(&c));
            assert!(assoc.is_zero(), "associativity failed");
            // Jacobi for the commutator.
            let j = a
                .commutator(&b)
                .commutator(&c)
                .add(&b.commutator(&c).commutator(&a))
                .add(&c.commutator(&a).commutator(&b));
            assert!(j.is_zero(), "operator Jacobi failed");
        }
    }

    #[test]
    fn laurent_coefficient_power_rule() {
        // d/da applied to a^s-style Laurent powers: here a^{-2} -> -2 a^{-3}.
        let ch = Arc::new(ChartData {
            name: "quad_pp".into(),
            vars: VarSet::new(&[("a", true)]),
            signs: [(0usize, 1i8)].into_iter().collect(),
        });
        let da = DiffOp::derivative_named(&ch, "a");
        let f = LaurentPoly::var_pow(
            &ch.vars,
            0,
            num::rational::Ratio::from_integer(-2),
            Scalar::one(),
        );
        let expect = LaurentPoly::var_pow(
            &ch.vars,
            0,
            num::rational::Ratio::from_integer(-3),
            Scalar::from_int(-2),
        );
        assert!(da.apply_poly(&f).sub(&expect).is_zero());
        assert_eq!(ch.sign_of("a"), Some(1));
    }
}
