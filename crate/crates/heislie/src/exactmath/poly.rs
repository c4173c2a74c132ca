use super::scalar::Scalar;
use num::rational::Ratio;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponents are exact rationals; ordinary variables only ever carry
/// nonnegative integers, variables flagged invertible (positive on the
/// ambient chart) may carry negative or fractional exponents.
pub type Expo = Ratio<i64>;

/// An ordered set of named variables shared by all polynomials on a chart.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    invertible: Vec<bool>,
}

pub type Vars = Arc<VarSet>;

impl VarSet {
    /// Build a shared variable set from (name, invertible) pairs.
    pub fn new(vars: &[(&str, bool)]) -> Vars {
        let names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len(), "duplicate variable names");
        Arc::new(VarSet {
            names,
            invertible: vars.iter().map(|(_, inv)| *inv).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn is_invertible(&self, idx: usize) -> bool {
        self.invertible[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Sparse multivariate Laurent polynomial over Q(i, sqrt2).
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Vec<Expo>, Scalar>,
}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        let mut p = LaurentPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![Expo::zero(); vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        LaurentPoly::constant(vars, Scalar::one())
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        LaurentPoly::constant(vars, Scalar::from_int(n))
    }

    pub fn var(vars: &Vars, idx: usize) -> Self {
        LaurentPoly::var_pow(vars, idx, Expo::one(), Scalar::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Self {
        let idx = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        LaurentPoly::var(vars, idx)
    }

    /// c * v^e for a single variable.
    pub fn var_pow(vars: &Vars, idx: usize, e: Expo, c: Scalar) -> Self {
        let mut exps = vec![Expo::zero(); vars.len()];
        exps[idx] = e;
        LaurentPoly::monomial(vars, exps, c)
    }

    pub fn monomial(vars: &Vars, exps: Vec<Expo>, c: Scalar) -> Self {
        assert_eq!(exps.len(), vars.len());
        for (i, e) in exps.iter().enumerate() {
            if !vars.is_invertible(i) {
                assert!(
                    e.is_integer() && !e.is_negative(),
                    "exponent {} not allowed on ordinary variable {}",
                    e,
                    vars.name(i)
                );
            }
        }
        let mut p = LaurentPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Expo>, &Scalar)> {
        self.terms.iter()
    }

    /// The scalar value if the polynomial is constant.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|e| e.is_zero()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn coeff(&self, exps: &[Expo]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    fn insert_term(&mut self, exps: Vec<Expo>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(same_vars(&self.vars, &rhs.vars), "variable set mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> LaurentPoly {
        if s.is_zero() {
            return LaurentPoly::zero(&self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(same_vars(&self.vars, &rhs.vars), "variable set mismatch");
        let mut out = LaurentPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<Expo> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(exps, ca * cb);
            }
        }
        out
    }

    /// Multiply by a single monomial in place of a full product.
    pub fn mul_monomial(&self, exps: &[Expo], c: &Scalar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            let e: Vec<Expo> = ea.iter().zip(exps).map(|(x, y)| x + y).collect();
            out.insert_term(e, ca * c);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse of a single-term monomial (all variables invertible or
    /// zero-exponent). Panics otherwise.
    pub fn invert_monomial(&self) -> LaurentPoly {
        assert_eq!(self.terms.len(), 1, "not a monomial");
        let (exps, c) = self.terms.iter().next().unwrap();
        for (i, e) in exps.iter().enumerate() {
            assert!(
                e.is_zero() || self.vars.is_invertible(i),
                "variable {} is not invertible",
                self.vars.name(i)
            );
        }
        let inv_exps: Vec<Expo> = exps.iter().map(|e| -e).collect();
        let mut p = LaurentPoly::zero(&self.vars);
        p.terms.insert(inv_exps, c.inv());
        p
    }

    /// Raise to a rational power; only defined for monomials with
    /// coefficient 1 (up to integer powers, where any coefficient works).
    pub fn pow_expo(&self, e: Expo) -> LaurentPoly {
        if e.is_integer() {
            let n = e.to_integer();
            if n >= 0 {
                return self.pow(n as u64);
            }
            return self.invert_monomial().pow((-n) as u64);
        }
        assert_eq!(self.terms.len(), 1, "fractional power of a non-monomial");
        let (exps, c) = self.terms.iter().next().unwrap();
        assert!(c.is_one(), "fractional power of non-unit coefficient {c}");
        let new_exps: Vec<Expo> = exps.iter().map(|x| x * e).collect();
        for (i, ne) in new_exps.iter().enumerate() {
            assert!(
                ne.is_zero() || self.vars.is_invertible(i),
                "fractional power needs invertible variable {}",
                self.vars.name(i)
            );
        }
        let mut p = LaurentPoly::zero(&self.vars);
        p.terms.insert(new_exps, Scalar::one());
        p
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.vars);
        for (exps, c) in &self.terms {
            let e = exps[idx];
            if e.is_zero() {
                continue;
            }
            let mut ne = exps.clone();
            ne[idx] = e - Expo::one();
            let factor = Scalar::rat(*e.numer(), *e.denom());
            out.insert_term(ne, c * &factor);
        }
        out
    }

    /// Substitute `repl` for variable `idx`. Negative or fractional
    /// exponents require `repl` to be an invertible monomial.
    pub fn subst_var(&self, idx: usize, repl: &LaurentPoly) -> LaurentPoly {
        assert!(same_vars(&self.vars, &repl.vars));
        let mut out = LaurentPoly::zero(&self.vars);
        for (exps, c) in &self.terms {
            let e = exps[idx];
            let mut rest = exps.clone();
            rest[idx] = Expo::zero();
            let base = LaurentPoly::monomial(&self.vars, rest, c.clone());
            out = out.add(&base.mul(&repl.pow_expo(e)));
        }
        out
    }

    /// Simultaneous substitution: variable j becomes `images[j]` (expressed
    /// over the variable set `target`).
    pub fn subst_all(&self, target: &Vars, images: &[LaurentPoly]) -> LaurentPoly {
        assert_eq!(images.len(), self.vars.len());
        for im in images {
            assert!(same_vars(im.vars(), target));
        }
        let mut out = LaurentPoly::zero(target);
        for (exps, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (j, e) in exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                term = term.mul(&images[j].pow_expo(*e));
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a scalar point; all exponents must be integers and
    /// negative powers require a nonzero value.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Scalar::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (j, e) in exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                assert!(e.is_integer(), "cannot evaluate fractional exponent");
                t *= &point[j].pow(e.to_integer());
            }
            acc += &t;
        }
        acc
    }

    /// Total degree bound (max over terms of the sum of exponents), if any.
    pub fn total_degree(&self) -> Option<Expo> {
        self.terms
            .keys()
            .map(|e| e.iter().copied().sum::<Expo>())
            .max()
    }

    /// Minimum exponent of a given variable over all terms (0 for the zero
    /// polynomial).
    pub fn min_exponent(&self, idx: usize) -> Expo {
        self.terms
            .keys()
            .map(|e| e[idx])
            .min()
            .unwrap_or_else(Expo::zero)
    }

    /// Maximum exponent of a given variable over all terms.
    pub fn max_exponent(&self, idx: usize) -> Expo {
        self.terms
            .keys()
            .map(|e| e[idx])
            .max()
            .unwrap_or_else(Expo::zero)
    }

    /// Collect coefficients of powers of one variable: pairs (exponent,
    /// polynomial with that variable cleared).
    pub fn coeffs_in_var(&self, idx: usize) -> BTreeMap<Expo, LaurentPoly> {
        let mut out: BTreeMap<Expo, LaurentPoly> = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e = exps[idx];
            let mut rest = exps.clone();
            rest[idx] = Expo::zero();
            out.entry(e)
                .or_insert_with(|| LaurentPoly::zero(&self.vars))
                .insert_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let trivial = exps.iter().all(|e| e.is_zero());
            if trivial {
                write!(f, "({c})")?;
                continue;
            }
            write!(f, "({c})")?;
            for (j, e) in exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    write!(f, "*{}", self.vars.name(j))?;
                } else {
                    write!(f, "*{}^({})", self.vars.name(j), e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        VarSet::new(&[("x", false), ("t", false), ("lam", true)])
    }

    #[test]
    fn difference_of_squares() {
        let vs = xy();
        let x = LaurentPoly::var_named(&vs, "x");
        let t = LaurentPoly::var_named(&vs, "t");
        let lhs = x.add(&t).mul(&x.sub(&t));
        let rhs = x.mul(&x).sub(&t.mul(&t));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_derivative() {
        let vs = xy();
        let lam_inv = LaurentPoly::var_pow(&vs, 2, Expo::from_integer(-1), Scalar::one());
        let d = lam_inv.partial(2);
        let expect = LaurentPoly::var_pow(&vs, 2, Expo::from_integer(-2), Scalar::from_int(-1));
        assert_eq!(d, expect);
    }

    #[test]
    fn substitute_monomial() {
        let vs = xy();
        // lam^2 with lam -> sqrt2 * x ... but x is ordinary, so use lam -> sqrt2*lam
        let lam2 = LaurentPoly::var_pow(&vs, 2, Expo::from_integer(2), Scalar::one());
        let repl = LaurentPoly::var_pow(&vs, 2, Expo::one(), Scalar::sqrt2());
        let out = lam2.subst_var(2, &repl);
        let expect = LaurentPoly::var_pow(&vs, 2, Expo::from_integer(2), Scalar::from_int(2));
        assert_eq!(out, expect);
    }

    #[test]
    fn fractional_exponents_on_invertible() {
        let vs = xy();
        let half = Expo::new(1, 2);
        let sq = LaurentPoly::var_pow(&vs, 2, half, Scalar::one());
        assert_eq!(sq.mul(&sq), LaurentPoly::var(&vs, 2));
        let d = sq.partial(2);
        let expect = LaurentPoly::var_pow(&vs, 2, Expo::new(-1, 2), Scalar::rat(1, 2));
        assert_eq!(d, expect);
    }
}
