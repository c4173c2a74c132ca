//! Calculus of twisted distribution terms on sign-restricted charts.
//!
//! A term is a product
//!
//! ```text
//!   coeff(x) * prod_i |x_i|^{r_i + k_i s} * (sqrt2)^{m s}
//!            * prod_j base_j(x)^{e_j} * exp(phase(x))
//! ```
//!
//! with a Laurent-polynomial coefficient and phase, absolute-value powers of
//! sign-restricted invertible coordinates (with exponents affine in a formal
//! parameter `s`), and rational powers of polynomial radical bases. The class
//! is closed under coordinate derivatives and (for integer exponents) under
//! the coordinate swap (lam, a) -> (sqrt2 a, -lam/sqrt2). Sign characters
//! sgn(x_i)^eps are constants on a fixed quadrant and are folded into the
//! coefficient at construction time.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::diffop::{Chart, ChartData, DiffOp};
use crate::exactmath::{Expo, LaurentPoly, Scalar, VarSet};

/// A rational power of a polynomial base.
#[derive(Clone, Debug)]
pub struct Radical {
    pub base: LaurentPoly,
    pub expo: Expo,
}

/// One twisted term; see the module docs for the factorization.
#[derive(Clone, Debug)]
pub struct TwistedTerm {
    pub chart: Chart,
    pub coeff: LaurentPoly,
    /// coordinate index -> (r, k) for a factor |x_i|^{r + k s}.
    pub abs_pows: BTreeMap<usize, (Expo, i64)>,
    /// Power m in a factor (sqrt2)^{m s}, produced by coordinate swaps.
    pub sqrt2_s: i64,
    pub radicals: Vec<Radical>,
    /// The term carries a factor exp(phase).
    pub phase: LaurentPoly,
}

/// Build all sign-quadrant charts over one shared variable set, so that
/// polynomials and terms move freely between quadrants. The first chart has
/// every listed coordinate positive; sign bits follow the order of `signed`.
pub fn quadrant_charts(base: &str, coords: &[(&str, bool)], signed: &[&str]) -> Vec<Chart> {
    let vars = VarSet::new(coords);
    let idxs: Vec<usize> = signed
        .iter()
        .map(|n| vars.index_of(n).expect("unknown signed coordinate"))
        .collect();
    (0..1usize << idxs.len())
        .map(|mask| {
            let mut signs = BTreeMap::new();
            let mut label = base.to_string();
            for (k, &i) in idxs.iter().enumerate() {
                let s: i8 = if mask >> k & 1 == 0 { 1 } else { -1 };
                signs.insert(i, s);
                label.push('_');
                label.push_str(vars.name(i));
                label.push_str(if s > 0 { "_pos" } else { "_neg" });
            }
            Arc::new(ChartData {
                name: label,
                vars: vars.clone(),
                signs,
            })
        })
        .collect()
}

impl TwistedTerm {
    pub fn new(chart: &Chart, coeff: LaurentPoly) -> TwistedTerm {
        TwistedTerm {
            chart: chart.clone(),
            coeff,
            abs_pows: BTreeMap::new(),
            sqrt2_s: 0,
            radicals: Vec::new(),
            phase: LaurentPoly::zero(&chart.vars),
        }
    }

    /// Multiply by sgn(x_idx)^parity; on a quadrant chart this is a constant.
    pub fn with_sgn(mut self, idx: usize, parity: i64) -> TwistedTerm {
        if parity.rem_euclid(2) == 1 {
            let s = *self
                .chart
                .signs
                .get(&idx)
                .expect("sign character on a coordinate without a sign assumption");
            if s < 0 {
                self.coeff = self.coeff.neg();
            }
        }
        self
    }

    /// Multiply by |x_idx|^{r + k s}.
    pub fn with_abs(mut self, idx: usize, r: Expo, k: i64) -> TwistedTerm {
        assert!(
            self.chart.signs.contains_key(&idx) && self.chart.vars.is_invertible(idx),
            "absolute-value power needs a sign-restricted invertible coordinate"
        );
        let e = self.abs_pows.entry(idx).or_insert((Expo::zero(), 0));
        e.0 += r;
        e.1 += k;
        self.normalized()
    }

    /// Multiply by base^expo.
    pub fn with_radical(mut self, base: LaurentPoly, expo: Expo) -> TwistedTerm {
        if let Some(r) = self.radicals.iter_mut().find(|r| r.base == base) {
            r.expo += expo;
        } else {
            self.radicals.push(Radical { base, expo });
        }
        self.normalized()
    }

    /// Multiply by exp(p).
    pub fn with_phase(mut self, p: &LaurentPoly) -> TwistedTerm {
        self.phase = self.phase.add(p);
        self
    }

    fn normalized(mut self) -> TwistedTerm {
        self.abs_pows.retain(|_, (r, k)| !r.is_zero() || *k != 0);
        self.radicals.retain(|r| !r.expo.is_zero());
        self
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> TwistedTerm {
        let mut t = self.clone();
        t.coeff = t.coeff.mul(p);
        t
    }

    pub fn scale(&self, s: &Scalar) -> TwistedTerm {
        let mut t = self.clone();
        t.coeff = t.coeff.scale(s);
        t
    }

    pub fn mul_phase(&self, p: &LaurentPoly) -> TwistedTerm {
        let mut t = self.clone();
        t.phase = t.phase.add(p);
        t
    }

    /// The polynomial r + k s, with `s` looked up by name in the chart.
    fn s_factor(&self, r: Expo, k: i64) -> LaurentPoly {
        let vars = &self.chart.vars;
        let mut p = LaurentPoly::constant(vars, Scalar::rat(*r.numer(), *r.denom()));
        if k != 0 {
            let sidx = vars
                .index_of("s")
                .expect("formal exponent parameter s missing from chart");
            p = p.add(&LaurentPoly::var(vars, sidx).scale(&Scalar::from_int(k)));
        }
        p
    }

    /// Derivative with respect to coordinate `idx` by the product rule; the
    /// result is a list of terms with the same symbolic factors up to
    /// integer shifts of radical exponents.
    pub fn derivative(&self, idx: usize) -> Vec<TwistedTerm> {
        let vars = self.chart.vars.clone();
        let mut out = Vec::new();
        let dc = self.coeff.partial(idx);
        if !dc.is_zero() {
            let mut t = self.clone();
            t.coeff = dc;
            out.push(t);
        }
        if let Some(&(r, k)) = self.abs_pows.get(&idx) {
            // d/dx |x|^{r+ks} = (r+ks) |x|^{r+ks} / x
            let mut exps = vec![Expo::zero(); vars.len()];
            exps[idx] = -Expo::one();
            let c = self
                .coeff
                .mul(&self.s_factor(r, k))
                .mul_monomial(&exps, &Scalar::one());
            if !c.is_zero() {
                let mut t = self.clone();
                t.coeff = c;
                out.push(t);
            }
        }
        for (j, rad) in self.radicals.iter().enumerate() {
            let db = rad.base.partial(idx);
            if db.is_zero() {
                continue;
            }
            let scl = Scalar::rat(*rad.expo.numer(), *rad.expo.denom());
            let mut t = self.clone();
            t.coeff = t.coeff.mul(&db).scale(&scl);
            t.radicals[j].expo -= Expo::one();
            out.push(t.normalized());
        }
        let dp = self.phase.partial(idx);
        if !dp.is_zero() {
            let mut t = self.clone();
            t.coeff = t.coeff.mul(&dp);
            out.push(t);
        }
        out
    }

    fn radicals_match(&self, other: &TwistedTerm) -> bool {
        if self.radicals.len() != other.radicals.len() {
            return false;
        }
        let mut used = vec![false; other.radicals.len()];
        for r in &self.radicals {
            match other
                .radicals
                .iter()
                .enumerate()
                .find(|(j, o)| !used[*j] && o.base == r.base && o.expo == r.expo)
            {
                Some((j, _)) => used[j] = true,
                None => return false,
            }
        }
        true
    }

    /// Structural equality of everything except the coefficient.
    fn matches(&self, other: &TwistedTerm) -> bool {
        Arc::ptr_eq(&self.chart, &other.chart)
            && self.abs_pows == other.abs_pows
            && self.sqrt2_s == other.sqrt2_s
            && self.phase == other.phase
            && self.radicals_match(other)
    }

    /// Same equivalence class for zero-testing: like `matches`, but radical
    /// exponents may differ by integers (the difference is a polynomial).
    fn same_class(&self, other: &TwistedTerm) -> bool {
        if !(Arc::ptr_eq(&self.chart, &other.chart)
            && self.abs_pows == other.abs_pows
            && self.sqrt2_s == other.sqrt2_s
            && self.phase == other.phase)
        {
            return false;
        }
        let mut bases: Vec<&LaurentPoly> = Vec::new();
        for r in self.radicals.iter().chain(other.radicals.iter()) {
            if !bases.iter().any(|b| **b == r.base) {
                bases.push(&r.base);
            }
        }
        for b in bases {
            let e1 = radical_expo(self, b);
            let e2 = radical_expo(other, b);
            if !(e1 - e2).is_integer() {
                return false;
            }
        }
        true
    }

    /// Substitute x_i -> -x_i for every listed coordinate, moving the term
    /// to the matching target quadrant (the sign of each flipped
    /// sign-restricted coordinate is negated, all other signs agree).
    /// Requires integer exponents of the flipped coordinates everywhere.
    pub fn subst_flip(&self, flips: &[usize], target: &Chart) -> Result<TwistedTerm, String> {
        let vars = self.chart.vars.clone();
        assert!(vars == target.vars, "charts must share the variable set");
        assert_eq!(
            self.chart.signs.len(),
            target.signs.len(),
            "target quadrant must restrict the same coordinates"
        );
        for (&i, &s) in &self.chart.signs {
            let expect = if flips.contains(&i) { -s } else { s };
            assert_eq!(
                target.signs.get(&i),
                Some(&expect),
                "target quadrant sign mismatch on {}",
                vars.name(i)
            );
        }
        let mut radicals = Vec::with_capacity(self.radicals.len());
        for r in &self.radicals {
            radicals.push(Radical {
                base: flip_poly(&r.base, flips)?,
                expo: r.expo,
            });
        }
        Ok(TwistedTerm {
            chart: target.clone(),
            coeff: flip_poly(&self.coeff, flips)?,
            abs_pows: self.abs_pows.clone(),
            sqrt2_s: self.sqrt2_s,
            radicals,
            phase: flip_poly(&self.phase, flips)?,
        }
        .normalized())
    }

    /// Substitute x_i -> x_i * d^pow for every target coordinate, where d is
    /// an invertible coordinate (index `den`, not among the targets). An
    /// absolute-value power on a target coordinate turns into a matching
    /// absolute power of d, so d must carry a sign whenever one occurs. The
    /// target quadrant must negate the sign of each sign-restricted target
    /// coordinate when d is negative and pow is odd.
    pub fn subst_scale(
        &self,
        targets: &[usize],
        den: usize,
        pow: i64,
        target: &Chart,
    ) -> Result<TwistedTerm, String> {
        let vars = self.chart.vars.clone();
        assert!(vars == target.vars, "charts must share the variable set");
        assert!(
            vars.is_invertible(den) && !targets.contains(&den),
            "scaling coordinate must be invertible and not rescaled itself"
        );
        let flip_signs = pow.rem_euclid(2) == 1
            && self.chart.signs.get(&den).copied().unwrap_or(1) < 0;
        assert_eq!(
            self.chart.signs.len(),
            target.signs.len(),
            "target quadrant must restrict the same coordinates"
        );
        for (&i, &s) in &self.chart.signs {
            let expect = if targets.contains(&i) && flip_signs {
                -s
            } else {
                s
            };
            assert_eq!(
                target.signs.get(&i),
                Some(&expect),
                "target quadrant sign mismatch on {}",
                vars.name(i)
            );
        }
        let mut radicals = Vec::with_capacity(self.radicals.len());
        for r in &self.radicals {
            radicals.push(Radical {
                base: scale_poly_subst(&r.base, targets, den, pow),
                expo: r.expo,
            });
        }
        let mut abs_pows = BTreeMap::new();
        let mut den_extra = (Expo::zero(), 0i64);
        for (&i, &(r, k)) in &self.abs_pows {
            if targets.contains(&i) {
                // |x_i d^pow|^{r+ks} = |x_i|^{r+ks} |d|^{pow (r+ks)}
                den_extra.0 += r * Expo::from(pow);
                den_extra.1 += k * pow;
                abs_pows.insert(i, (r, k));
            } else {
                abs_pows.insert(i, (r, k));
            }
        }
        if !den_extra.0.is_zero() || den_extra.1 != 0 {
            if !self.chart.signs.contains_key(&den) {
                return Err("absolute power moved onto an unsigned coordinate".to_string());
            }
            let e = abs_pows.entry(den).or_insert((Expo::zero(), 0));
            e.0 += den_extra.0;
            e.1 += den_extra.1;
        }
        Ok(TwistedTerm {
            chart: target.clone(),
            coeff: scale_poly_subst(&self.coeff, targets, den, pow),
            abs_pows,
            sqrt2_s: self.sqrt2_s,
            radicals,
            phase: scale_poly_subst(&self.phase, targets, den, pow),
        }
        .normalized())
    }

    /// Substitute (lam, a) -> (sqrt2 a, -lam/sqrt2), moving the term to the
    /// matching target quadrant. Requires integer exponents on the two
    /// coordinates everywhere (a fractional power of the swapped coordinates
    /// would leave the scalar field) and integer absolute-power offsets; the
    /// parameter-dependent part of an absolute power contributes a formal
    /// factor (sqrt2)^{k s} tracked in `sqrt2_s`.
    pub fn subst_swap(&self, lam: &str, a: &str, target: &Chart) -> Result<TwistedTerm, String> {
        let vars = self.chart.vars.clone();
        assert!(vars == target.vars, "charts must share the variable set");
        let li = vars.index_of(lam).expect("missing swap coordinate");
        let ai = vars.index_of(a).expect("missing swap coordinate");
        let sl = *self.chart.signs.get(&li).expect("lam must carry a sign");
        let sa = *self.chart.signs.get(&ai).expect("a must carry a sign");
        assert_eq!(
            target.signs.get(&ai),
            Some(&sl),
            "target quadrant must put sqrt2*a in the source lam half-line"
        );
        assert_eq!(
            target.signs.get(&li),
            Some(&(-sa)),
            "target quadrant must put -lam/sqrt2 in the source a half-line"
        );
        let coeff = swap_poly(&self.coeff, li, ai)?;
        let phase = swap_poly(&self.phase, li, ai)?;
        let mut radicals = Vec::with_capacity(self.radicals.len());
        for r in &self.radicals {
            radicals.push(Radical {
                base: swap_poly(&r.base, li, ai)?,
                expo: r.expo,
            });
        }
        let mut abs_pows = BTreeMap::new();
        let mut extra = Scalar::one();
        let mut sqrt2_s = self.sqrt2_s;
        for (&i, &(r, k)) in &self.abs_pows {
            if i == li {
                // |lam|^{r+ks} -> (sqrt2)^{r+ks} |a|^{r+ks}
                if !r.is_integer() {
                    return Err(format!(
                        "half-integer absolute power |{lam}|^{r} cannot be swapped exactly"
                    ));
                }
                extra = &extra * &Scalar::sqrt2().pow(r.to_integer());
                sqrt2_s += k;
                abs_pows.insert(ai, (r, k));
            } else if i == ai {
                // |a|^{r+ks} -> (sqrt2)^{-(r+ks)} |lam|^{r+ks}
                if !r.is_integer() {
                    return Err(format!(
                        "half-integer absolute power |{a}|^{r} cannot be swapped exactly"
                    ));
                }
                extra = &extra * &Scalar::sqrt2().pow(-r.to_integer());
                sqrt2_s -= k;
                abs_pows.insert(li, (r, k));
            } else {
                abs_pows.insert(i, (r, k));
            }
        }
        Ok(TwistedTerm {
            chart: target.clone(),
            coeff: coeff.scale(&extra),
            abs_pows,
            sqrt2_s,
            radicals,
            phase,
        }
        .normalized())
    }
}

fn radical_expo(t: &TwistedTerm, base: &LaurentPoly) -> Expo {
    t.radicals
        .iter()
        .find(|r| r.base == *base)
        .map(|r| r.expo)
        .unwrap_or_else(Expo::zero)
}

/// Monomial-wise image of a polynomial under x_i -> -x_i for i in `flips`.
fn flip_poly(p: &LaurentPoly, flips: &[usize]) -> Result<LaurentPoly, String> {
    let vars = p.vars().clone();
    let mut out = LaurentPoly::zero(&vars);
    for (exps, c) in p.terms() {
        let mut total = 0i64;
        for &i in flips {
            if !exps[i].is_integer() {
                return Err("fractional exponent on a flipped coordinate".to_string());
            }
            total += exps[i].to_integer();
        }
        let s = if total.rem_euclid(2) == 1 { -c } else { c.clone() };
        out = out.add(&LaurentPoly::monomial(&vars, exps.clone(), s));
    }
    Ok(out)
}

/// Monomial-wise image of a polynomial under x_i -> x_i d^pow.
fn scale_poly_subst(p: &LaurentPoly, targets: &[usize], den: usize, pow: i64) -> LaurentPoly {
    let vars = p.vars().clone();
    let mut out = LaurentPoly::zero(&vars);
    for (exps, c) in p.terms() {
        let mut ne = exps.clone();
        let total: Expo = targets.iter().map(|&i| exps[i]).sum();
        ne[den] += total * Expo::from(pow);
        out = out.add(&LaurentPoly::monomial(&vars, ne, c.clone()));
    }
    out
}

/// Monomial-wise image of a polynomial under (lam, a) -> (sqrt2 a, -lam/sqrt2).
fn swap_poly(p: &LaurentPoly, li: usize, ai: usize) -> Result<LaurentPoly, String> {
    let vars = p.vars().clone();
    let mut out = LaurentPoly::zero(&vars);
    for (exps, c) in p.terms() {
        let pl = exps[li];
        let pa = exps[ai];
        if !pl.is_integer() || !pa.is_integer() {
            return Err("fractional exponent on a swapped coordinate".to_string());
        }
        let mut ne = exps.clone();
        ne[li] = pa;
        ne[ai] = pl;
        let mut s = &Scalar::sqrt2().pow(pl.to_integer() - pa.to_integer()) * c;
        if pa.to_integer().rem_euclid(2) == 1 {
            s = -&s;
        }
        out = out.add(&LaurentPoly::monomial(&vars, ne, s));
    }
    Ok(out)
}

/// A finite sum of twisted terms on one quadrant chart.
#[derive(Clone, Debug)]
pub struct TwistedSum {
    pub chart: Chart,
    pub terms: Vec<TwistedTerm>,
}

impl TwistedSum {
    pub fn zero(chart: &Chart) -> TwistedSum {
        TwistedSum {
            chart: chart.clone(),
            terms: Vec::new(),
        }
    }

    pub fn term(t: TwistedTerm) -> TwistedSum {
        let chart = t.chart.clone();
        TwistedSum::merged(&chart, vec![t])
    }

    pub fn merged(chart: &Chart, terms: Vec<TwistedTerm>) -> TwistedSum {
        let mut acc: Vec<TwistedTerm> = Vec::new();
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            match acc.iter_mut().find(|u| u.matches(&t)) {
                Some(u) => u.coeff = u.coeff.add(&t.coeff),
                None => acc.push(t),
            }
        }
        acc.retain(|t| !t.coeff.is_zero());
        TwistedSum {
            chart: chart.clone(),
            terms: acc,
        }
    }

    pub fn add(&self, rhs: &TwistedSum) -> TwistedSum {
        assert!(Arc::ptr_eq(&self.chart, &rhs.chart), "chart mismatch");
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        TwistedSum::merged(&self.chart, terms)
    }

    pub fn sub(&self, rhs: &TwistedSum) -> TwistedSum {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TwistedSum {
        self.scale(&-&Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> TwistedSum {
        TwistedSum {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|t| t.scale(s)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> TwistedSum {
        TwistedSum::merged(
            &self.chart,
            self.terms.iter().map(|t| t.mul_poly(p)).collect(),
        )
    }

    pub fn mul_phase(&self, p: &LaurentPoly) -> TwistedSum {
        TwistedSum::merged(
            &self.chart,
            self.terms.iter().map(|t| t.mul_phase(p)).collect(),
        )
    }

    pub fn derivative(&self, idx: usize) -> TwistedSum {
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.extend(t.derivative(idx));
        }
        TwistedSum::merged(&self.chart, terms)
    }

    /// Apply a normal-ordered differential operator on the same chart.
    pub fn apply(&self, op: &DiffOp) -> TwistedSum {
        assert!(Arc::ptr_eq(&self.chart, &op.chart), "chart mismatch");
        let mut out = TwistedSum::zero(&self.chart);
        for (mi, p) in op.terms() {
            let mut g = self.clone();
            for (idx, &k) in mi.iter().enumerate() {
                for _ in 0..k {
                    g = g.derivative(idx);
                }
            }
            out = out.add(&g.mul_poly(p));
        }
        out
    }

    pub fn subst_swap(&self, lam: &str, a: &str, target: &Chart) -> Result<TwistedSum, String> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(t.subst_swap(lam, a, target)?);
        }
        Ok(TwistedSum::merged(target, terms))
    }

    pub fn subst_flip(&self, flips: &[usize], target: &Chart) -> Result<TwistedSum, String> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(t.subst_flip(flips, target)?);
        }
        Ok(TwistedSum::merged(target, terms))
    }

    pub fn subst_scale(
        &self,
        targets: &[usize],
        den: usize,
        pow: i64,
        target: &Chart,
    ) -> Result<TwistedSum, String> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(t.subst_scale(targets, den, pow, target)?);
        }
        Ok(TwistedSum::merged(target, terms))
    }

    /// Exact zero test. Terms are grouped into classes whose symbolic parts
    /// agree up to integer radical-exponent shifts; within a class the
    /// integer shifts are cleared into the polynomial coefficients, and the
    /// class sums to zero iff the resulting polynomial does.
    pub fn is_zero(&self) -> bool {
        let mut rest: Vec<TwistedTerm> = self
            .terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .cloned()
            .collect();
        while let Some(first) = rest.first().cloned() {
            let (class, others): (Vec<TwistedTerm>, Vec<TwistedTerm>) =
                rest.into_iter().partition(|t| first.same_class(t));
            rest = others;
            let mut bases: Vec<LaurentPoly> = Vec::new();
            for t in &class {
                for r in &t.radicals {
                    if !bases.iter().any(|b| *b == r.base) {
                        bases.push(r.base.clone());
                    }
                }
            }
            let vars = first.coeff.vars().clone();
            let mut acc = LaurentPoly::zero(&vars);
            for t in &class {
                let mut c = t.coeff.clone();
                for b in &bases {
                    let min = class
                        .iter()
                        .map(|u| radical_expo(u, b))
                        .min()
                        .expect("nonempty class");
                    let k = radical_expo(t, b) - min;
                    debug_assert!(k.is_integer() && !k.is_negative());
                    let k = k.to_integer() as u64;
                    if k > 0 {
                        c = c.mul(&b.pow(k));
                    }
                }
                acc = acc.add(&c);
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn equals(&self, rhs: &TwistedSum) -> bool {
        self.sub(rhs).is_zero()
    }
}
