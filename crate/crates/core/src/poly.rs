//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in graded lexicographic order (total degree first, then
//! exponent vectors compared left to right over the name-sorted variable
//! registry), which fixes a canonical form for equality and serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector, parallel to the owning polynomial's variable registry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in canonical form: variables sorted and deduplicated, no
/// stored zero coefficients, no unused variables. Structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        SparsePoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        SparsePoly::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        SparsePoly::constant(Rational::from_int(n))
    }

    pub fn symbol(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        SparsePoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Build from raw (exponent vector, coefficient) pairs over `vars`.
    /// Repeated monomials are summed; the result is canonicalized.
    pub fn from_terms(vars: &[&str], terms: &[(&[u32], Rational)]) -> Self {
        let var_names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            let entry = map
                .entry(Monomial(exps.to_vec()))
                .or_insert_with(Rational::zero);
            *entry += coeff;
        }
        SparsePoly::from_map(var_names, map)
    }

    fn from_map(vars: Vec<String>, terms: BTreeMap<Monomial, Rational>) -> Self {
        let mut p = SparsePoly { vars, terms };
        p.canonicalize();
        p
    }

    /// Restore canonical form: sort variables, drop zero coefficients and
    /// variables that no term uses.
    fn canonicalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());

        let mut order: Vec<usize> = (0..self.vars.len()).collect();
        order.sort_by(|&i, &j| self.vars[i].cmp(&self.vars[j]));
        let sorted = order.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>();
        debug_assert!(sorted.windows(2).all(|w| w[0] != w[1]), "duplicate variable");

        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        let keep: Vec<usize> = order.iter().copied().filter(|&i| used[i]).collect();
        let already_canonical =
            keep.len() == self.vars.len() && keep.iter().enumerate().all(|(k, &i)| k == i);
        if already_canonical {
            return;
        }

        let new_vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut new_terms = BTreeMap::new();
        for (m, c) in std::mem::take(&mut self.terms) {
            let exps: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            new_terms.insert(Monomial(exps), c);
        }
        self.vars = new_vars;
        self.terms = new_terms;
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The constant term (zero if absent).
    pub fn constant_value(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.total_degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(var)).ok()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Re-index onto a superset registry. `new_vars` must be sorted and
    /// contain every variable of `self`.
    pub(crate) fn with_vars(&self, new_vars: &[String]) -> SparsePoly {
        if new_vars == self.vars.as_slice() {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                new_vars
                    .binary_search(v)
                    .expect("with_vars: registry is not a superset")
            })
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[positions[i]] = e;
            }
            terms.insert(Monomial(exps), c.clone());
        }
        SparsePoly {
            vars: new_vars.to_vec(),
            terms,
        }
    }

    pub(crate) fn merged_vars(a: &SparsePoly, b: &SparsePoly) -> Vec<String> {
        let mut vars: Vec<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Map both polynomials onto the union of their registries.
    pub fn unified(a: &SparsePoly, b: &SparsePoly) -> (SparsePoly, SparsePoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = SparsePoly::merged_vars(a, b);
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn neg(&self) -> SparsePoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        SparsePoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let (a, b) = SparsePoly::unified(self, other);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        SparsePoly::from_map(a.vars, terms)
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero();
        }
        let (a, b) = SparsePoly::unified(self, other);
        let n = a.vars.len();
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mut exps = vec![0u32; n];
                for i in 0..n {
                    exps[i] = ma.0[i] + mb.0[i];
                }
                let entry = terms
                    .entry(Monomial(exps))
                    .or_insert_with(Rational::zero);
                *entry += &(ca * cb);
            }
        }
        SparsePoly::from_map(a.vars, terms)
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, coeff)| (m.clone(), coeff * c))
            .collect();
        SparsePoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, exp: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact formal partial derivative; zero when `var` is absent.
    pub fn partial_derivative(&self, var: &str) -> SparsePoly {
        let Some(i) = self.var_index(var) else {
            return SparsePoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            terms.insert(Monomial(exps), c * &Rational::from_int(i64::from(e)));
        }
        SparsePoly::from_map(self.vars.clone(), terms)
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        for v in &self.vars {
            if !assignment.contains_key(v) {
                return Err(Error::UnboundSymbol(v.clone()));
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &assignment[&self.vars[i]].pow(i64::from(e))?;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitute a rational constant for one variable, keeping the rest.
    pub fn substitute_rational(&self, var: &str, value: &Rational) -> SparsePoly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            let coeff = if e > 0 {
                c * &value.pow(i64::from(e)).expect("nonnegative exponent")
            } else {
                c.clone()
            };
            let entry = terms
                .entry(Monomial(exps))
                .or_insert_with(Rational::zero);
            *entry += &coeff;
        }
        SparsePoly::from_map(self.vars.clone(), terms)
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, or `None` when
    /// `self` is not a polynomial multiple.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SparsePoly::zero());
        }
        let (a, b) = SparsePoly::unified(self, divisor);
        let n = a.vars.len();
        let (lm_d, lc_d) = {
            let (m, c) = b.leading().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut rem = a.terms;
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((lm_r, lc_r)) = rem.last_key_value().map(|(m, c)| (m.clone(), c.clone())) {
            let mut qm = vec![0u32; n];
            for i in 0..n {
                if lm_r.0[i] < lm_d.0[i] {
                    return None;
                }
                qm[i] = lm_r.0[i] - lm_d.0[i];
            }
            let qc = &lc_r / &lc_d;
            for (m, c) in &b.terms {
                let mut exps = vec![0u32; n];
                for i in 0..n {
                    exps[i] = m.0[i] + qm[i];
                }
                let key = Monomial(exps);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-&(c * &qc));
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &(c * &qc);
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.insert(Monomial(qm), qc);
        }
        Some(SparsePoly::from_map(a.vars, quot))
    }

    /// Canonical JSON: variable registry plus a graded-lex-ordered map from
    /// exponent-vector strings to coefficient strings.
    pub fn to_json(&self) -> Value {
        let mut terms = serde_json::Map::new();
        for (m, c) in &self.terms {
            let key = m
                .0
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            terms.insert(key, Value::String(c.to_string()));
        }
        json!({ "vars": self.vars, "terms": Value::Object(terms) })
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{sign}")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> SparsePoly {
        SparsePoly::symbol("x")
    }

    fn q() -> SparsePoly {
        SparsePoly::symbol("q")
    }

    fn eta() -> SparsePoly {
        SparsePoly::symbol("eta")
    }

    #[test]
    fn difference_of_squares() {
        let a = x().add(&SparsePoly::one());
        let b = x().sub(&SparsePoly::one());
        let expect = x().mul(&x()).sub(&SparsePoly::one());
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn sub_self_is_zero() {
        let p = x().mul(&x()).add(&q()).add(&SparsePoly::from_int(7));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p), SparsePoly::zero());
    }

    #[test]
    fn cross_registry_product() {
        let a = q().add(&eta());
        let b = q().sub(&eta());
        let expect = q().mul(&q()).sub(&eta().mul(&eta()));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn power_rule() {
        let x3 = x().pow(3);
        let expect = x().pow(2).scale(&Rational::from_int(3));
        assert_eq!(x3.partial_derivative("x"), expect);
        assert!(x3.partial_derivative("y").is_zero());
    }

    #[test]
    fn derivative_linearity() {
        // d/dx (x*y + x) = y + 1
        let p = x().mul(&SparsePoly::symbol("y")).add(&x());
        let expect = SparsePoly::symbol("y").add(&SparsePoly::one());
        assert_eq!(p.partial_derivative("x"), expect);
    }

    #[test]
    fn eval_simple() {
        let p = x().pow(2).add(&SparsePoly::one());
        let mut asn = BTreeMap::new();
        asn.insert("x".to_string(), Rational::from_int(2));
        assert_eq!(p.eval(&asn).unwrap(), Rational::from_int(5));
        assert!(p.eval(&BTreeMap::new()).is_err());
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let num = x().pow(2).sub(&SparsePoly::one());
        let den = x().sub(&SparsePoly::one());
        assert_eq!(num.div_exact(&den).unwrap(), x().add(&SparsePoly::one()));
        // x^2 + 1 is not a multiple of x - 1
        let other = x().pow(2).add(&SparsePoly::one());
        assert!(other.div_exact(&den).is_none());
    }

    #[test]
    fn division_across_registries() {
        // (q^2 - eta^2) / (q + eta) = q - eta
        let num = q().pow(2).sub(&eta().pow(2));
        let den = q().add(&eta());
        assert_eq!(num.div_exact(&den).unwrap(), q().sub(&eta()));
    }

    #[test]
    fn canonical_prunes_unused_vars() {
        let p = SparsePoly::from_terms(&["x", "y"], &[(&[2, 0], Rational::one())]);
        assert_eq!(p.vars(), &["x".to_string()]);
        assert_eq!(p, x().pow(2));
    }

    #[test]
    fn display_ascending_graded_lex() {
        let p = SparsePoly::one().add(&q()).add(&q().pow(2));
        assert_eq!(p.to_string(), "1+q+q^2");
        let m = SparsePoly::one().sub(&q());
        assert_eq!(m.to_string(), "1-q");
    }

    #[test]
    fn substitute_rational_collapses() {
        let p = q().pow(3).sub(&SparsePoly::one());
        let s = p.substitute_rational("q", &Rational::from_int(1));
        assert!(s.is_zero());
    }
}
