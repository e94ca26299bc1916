//! Rational functions: quotients of sparse polynomials.
//!
//! Normalization keeps the denominator monic under graded lex. Full
//! multivariate gcd reduction is deliberately avoided; instead the arithmetic
//! attempts cheap exact-division cancellations, and equality is decided by
//! cross multiplication, which is correct regardless of shared factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: SparsePoly,
    den: SparsePoly,
}

impl RatFunc {
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RatFunc { num, den };
        f.reduce();
        Ok(f)
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        RatFunc {
            num: p,
            den: SparsePoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_poly(SparsePoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(Rational::from_int(n))
    }

    pub fn symbol(name: &str) -> Self {
        RatFunc::from_poly(SparsePoly::symbol(name))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(SparsePoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(SparsePoly::one())
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.num
    }

    pub fn denominator(&self) -> &SparsePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as a plain rational, when constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            let d = self.den.constant_value();
            Some(self.num.constant_value() / d)
        } else {
            None
        }
    }

    /// Union of numerator and denominator variables, sorted.
    pub fn vars(&self) -> Vec<String> {
        SparsePoly::merged_vars(&self.num, &self.den)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.num = SparsePoly::zero();
            self.den = SparsePoly::one();
            return;
        }
        if self.den.is_constant() {
            let c = self.den.constant_value();
            self.num = self.num.scale(&c.inverse().expect("nonzero denominator"));
            self.den = SparsePoly::one();
            return;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = SparsePoly::one();
            return;
        }
        if !self.num.is_constant() {
            if let Some(w) = self.den.div_exact(&self.num) {
                self.num = SparsePoly::one();
                self.den = w;
            }
        }
        let lc = self.den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inverse().expect("nonzero denominator");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let (num, den) = if self.den == other.den {
            (self.num.add(&other.num), self.den.clone())
        } else if let Some(e) = other.den.div_exact(&self.den) {
            // other.den = self.den * e
            (self.num.mul(&e).add(&other.num), other.den.clone())
        } else if let Some(e) = self.den.div_exact(&other.den) {
            (self.num.add(&other.num.mul(&e)), self.den.clone())
        } else {
            (
                self.num.mul(&other.den).add(&other.num.mul(&self.den)),
                self.den.mul(&other.den),
            )
        };
        RatFunc::new(num, den).expect("nonzero denominator product")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // cancel across the cross pairs before multiplying out
        let (n1, d2) = cancel_pair(&self.num, &other.den);
        let (n2, d1) = cancel_pair(&other.num, &self.den);
        RatFunc::new(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominator product")
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&RatFunc {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn inverse(&self) -> Result<RatFunc> {
        RatFunc::one().div(self)
    }

    pub fn pow(&self, exp: i64) -> Result<RatFunc> {
        if exp == 0 {
            return Ok(RatFunc::one());
        }
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact partial derivative by the quotient rule.
    pub fn derivative(&self, var: &str) -> RatFunc {
        let dn = self.num.partial_derivative(var);
        if self.den.degree_in(var) == 0 {
            return RatFunc::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let dd = self.den.partial_derivative(var);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        RatFunc::new(num, den).expect("nonzero denominator square")
    }

    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let d = self.den.eval(assignment)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format_point(assignment)));
        }
        Ok(self.num.eval(assignment)? / d)
    }

    /// Substitute a rational constant for one variable. Errors when the
    /// denominator collapses to the zero polynomial.
    pub fn substitute_rational(&self, var: &str, value: &Rational) -> Result<RatFunc> {
        let den = self.den.substitute_rational(var, value);
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!("{var} = {value}")));
        }
        RatFunc::new(self.num.substitute_rational(var, value), den)
    }

    /// Substitute a rational function for one variable.
    pub fn substitute(&self, var: &str, value: &RatFunc) -> Result<RatFunc> {
        let num = self.num.substitute(var, value);
        let den = self.den.substitute(var, value);
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!("{var} -> {value}")));
        }
        num.div(&den)
    }

    /// Exact limit as `var` approaches `point`, cancelling common factors of
    /// `(var - point)` in a 0/0 situation.
    pub fn limit(&self, var: &str, point: &Rational) -> Result<RatFunc> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let lin = SparsePoly::symbol(var).sub(&SparsePoly::constant(point.clone()));
        loop {
            let den_at = den.substitute_rational(var, point);
            if !den_at.is_zero() {
                return RatFunc::new(num.substitute_rational(var, point), den_at);
            }
            let num_at = num.substitute_rational(var, point);
            if !num_at.is_zero() {
                return Err(Error::PoleAtPoint(format!("{var} -> {point}")));
            }
            // factor theorem: both vanish at the point, so both divide
            num = num.div_exact(&lin).expect("factor theorem");
            den = den.div_exact(&lin).expect("factor theorem");
        }
    }

    /// Ground-truth equality: cross-multiply and compare canonical forms.
    pub fn equal_exact(&self, other: &RatFunc) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// One-sided randomized equality: evaluates both sides at `trials`
    /// random rational points (numerators and denominators drawn uniformly
    /// from [1, 10^6]), skipping points on poles. A mismatch is definitive;
    /// agreement on all trials reports `true`.
    pub fn equal_probabilistic(&self, other: &RatFunc, seed: u64, trials: u32) -> Result<bool> {
        assert!(trials >= 1, "at least one trial required");
        let mut vars = SparsePoly::merged_vars(&self.num, &self.den);
        vars.extend(SparsePoly::merged_vars(&other.num, &other.den));
        vars.sort();
        vars.dedup();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let mut found = false;
            for _attempt in 0..100 {
                let assignment: BTreeMap<String, Rational> = vars
                    .iter()
                    .map(|v| (v.clone(), random_rational(&mut rng)))
                    .collect();
                let lhs = match self.eval(&assignment) {
                    Ok(v) => v,
                    Err(Error::PoleAtPoint(_)) => continue,
                    Err(e) => return Err(e),
                };
                let rhs = match other.eval(&assignment) {
                    Ok(v) => v,
                    Err(Error::PoleAtPoint(_)) => continue,
                    Err(e) => return Err(e),
                };
                if lhs != rhs {
                    return Ok(false);
                }
                found = true;
                break;
            }
            if !found {
                return Err(Error::DegenerateSample { attempts: 100 });
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    /// Parse either a rational constant (`"p/q"`) or a bare symbol name.
    pub fn parse_value(s: &str) -> Result<RatFunc> {
        let s = s.trim();
        if let Ok(r) = Rational::parse(s) {
            return Ok(RatFunc::from_rational(r));
        }
        let mut chars = s.chars();
        let head_ok = chars
            .next()
            .map(|c| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(false);
        if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Ok(RatFunc::symbol(s));
        }
        Err(Error::Parse(format!(
            "expected a rational like 2/3 or a symbol name, got `{s}`"
        )))
    }
}

fn cancel_pair(num: &SparsePoly, den: &SparsePoly) -> (SparsePoly, SparsePoly) {
    if den.is_one() || num.is_zero() {
        return (num.clone(), den.clone());
    }
    if let Some(q) = num.div_exact(den) {
        return (q, SparsePoly::one());
    }
    if !num.is_constant() {
        if let Some(w) = den.div_exact(num) {
            return (SparsePoly::one(), w);
        }
    }
    (num.clone(), den.clone())
}

fn format_point(assignment: &BTreeMap<String, Rational>) -> String {
    assignment
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Uniform random rational with numerator and denominator in [1, 10^6].
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(1..=1_000_000i64);
    let d = rng.gen_range(1..=1_000_000i64);
    Rational::new(n, d)
}

impl SparsePoly {
    /// Substitute a rational function for one variable of a polynomial.
    pub fn substitute(&self, var: &str, value: &RatFunc) -> RatFunc {
        if self.degree_in(var) == 0 {
            return RatFunc::from_poly(self.clone());
        }
        // collect self as a univariate polynomial in `var` with SparsePoly
        // coefficients, then fold with Horner
        let max = self.degree_in(var);
        let mut by_power: Vec<SparsePoly> = vec![SparsePoly::zero(); (max + 1) as usize];
        let vars = self.vars().to_vec();
        let idx = vars.iter().position(|v| v == var).expect("var present");
        for (m, c) in self.terms() {
            let e = m.0[idx] as usize;
            let mut rest: Vec<u32> = m.0.clone();
            rest[idx] = 0;
            let others: Vec<(&[u32], Rational)> = vec![(&rest[..], c.clone())];
            let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let piece = SparsePoly::from_terms(&var_refs, &others);
            by_power[e] = by_power[e].add(&piece);
        }
        let mut acc = RatFunc::zero();
        for coeff in by_power.into_iter().rev() {
            acc = acc.mul(value).add(&RatFunc::from_poly(coeff));
        }
        acc
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> RatFunc {
        RatFunc::symbol(s)
    }

    fn z1z2() -> RatFunc {
        sym("z1").sub(&sym("z2"))
    }

    #[test]
    fn pole_derivative() {
        // d/dz1 (1/(z1-z2)) = -1/(z1-z2)^2
        let f = RatFunc::one().div(&z1z2()).unwrap();
        let d = f.derivative("z1");
        let expect = RatFunc::from_int(-1).div(&z1z2().mul(&z1z2())).unwrap();
        assert!(d.equal_exact(&expect));
        assert_eq!(d, expect);
    }

    #[test]
    fn self_division_is_one() {
        let a = sym("q").add(&RatFunc::one()).div(&z1z2()).unwrap();
        assert!(a.div(&a).unwrap().is_one());
        assert!(RatFunc::one().div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn cancellation_product() {
        // 1/(1-q) * (1-q) = 1
        let one_minus_q = RatFunc::one().sub(&sym("q"));
        let f = RatFunc::one().div(&one_minus_q).unwrap();
        assert!(f.mul(&one_minus_q).is_one());
    }

    #[test]
    fn exact_equality_cancels() {
        // (z^2-1)/(z-1) == z+1
        let z = sym("z");
        let a = z
            .mul(&z)
            .sub(&RatFunc::one())
            .div(&z.sub(&RatFunc::one()))
            .unwrap();
        let b = z.add(&RatFunc::one());
        assert!(a.equal_exact(&b));
        assert!(!sym("q").equal_exact(&sym("eta")));
    }

    #[test]
    fn probabilistic_matches_exact() {
        let z = sym("z");
        let a = z
            .mul(&z)
            .sub(&RatFunc::one())
            .div(&z.sub(&RatFunc::one()))
            .unwrap();
        let b = z.add(&RatFunc::one());
        assert!(a.equal_probabilistic(&b, 7, 3).unwrap());
        assert!(!sym("q").equal_probabilistic(&sym("eta"), 7, 3).unwrap());
    }

    #[test]
    fn eval_and_poles() {
        let f = RatFunc::one().div(&z1z2()).unwrap();
        let mut point = BTreeMap::new();
        point.insert("z1".to_string(), Rational::from_int(1));
        point.insert("z2".to_string(), Rational::from_int(1));
        assert!(matches!(f.eval(&point), Err(Error::PoleAtPoint(_))));

        // (1-q^3)/(1-q) at q=2 is 7
        let q = sym("q");
        let g = RatFunc::one()
            .sub(&q.pow(3).unwrap())
            .div(&RatFunc::one().sub(&q))
            .unwrap();
        let mut at2 = BTreeMap::new();
        at2.insert("q".to_string(), Rational::from_int(2));
        assert_eq!(g.eval(&at2).unwrap(), Rational::from_int(7));
    }

    #[test]
    fn limit_cancels_zero_over_zero() {
        // (1-q^5)/(1-q) -> 5 as q -> 1
        let q = sym("q");
        let f = RatFunc::one()
            .sub(&q.pow(5).unwrap())
            .div(&RatFunc::one().sub(&q))
            .unwrap();
        let lim = f.limit("q", &Rational::from_int(1)).unwrap();
        assert_eq!(lim, RatFunc::from_int(5));

        // genuine pole still errors
        let g = RatFunc::one().div(&RatFunc::one().sub(&q)).unwrap();
        assert!(g.limit("q", &Rational::from_int(1)).is_err());
    }

    #[test]
    fn substitute_ratfunc_shift() {
        // (z1 - z2) with z1 -> z1 + eta/hbar, z2 -> z2 + eta/hbar is unchanged
        let shift = sym("eta").div(&sym("hbar")).unwrap();
        let f = z1z2();
        let g = f
            .substitute("z1", &sym("z1").add(&shift))
            .unwrap()
            .substitute("z2", &sym("z2").add(&shift))
            .unwrap();
        assert!(g.equal_exact(&f));
    }

    #[test]
    fn display_matches_contract() {
        let f = RatFunc::one()
            .add(&sym("q"))
            .div(&RatFunc::one().add(&sym("eta")))
            .unwrap();
        assert_eq!(f.to_string(), "(1+q)/(1+eta)");
    }

    #[test]
    fn denominator_kept_monic() {
        // (z1) / (2*z2) -> denominator z2 with leading coefficient 1
        let f = sym("z1")
            .div(&sym("z2").scale(&Rational::from_int(2)))
            .unwrap();
        assert!(f.denominator().leading_coeff().is_one());
        let back = f.mul(&sym("z2").scale(&Rational::from_int(2)));
        assert!(back.equal_exact(&sym("z1")));
    }
}
