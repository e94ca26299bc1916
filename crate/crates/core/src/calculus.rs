//! Deformed derivatives as exact difference quotients on univariate
//! polynomials.
//!
//! A shift map x' = scale*x + shift determines the operator
//! f |-> (f(x') - f(x)) / (x' - x). The numerator always vanishes at
//! x' = x, so the univariate division is exact; a nonzero remainder would
//! signal an arithmetic bug, not bad input.

use serde_json::json;

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::report::CheckReport;

/// Univariate polynomial in x with rational-function coefficients,
/// dense by degree with trailing zeros trimmed.
#[derive(Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<RatFunc>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(RatFunc::one())
    }

    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn constant(c: RatFunc) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// Monomial c * x^n.
    pub fn monomial(c: RatFunc, n: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(); n + 1];
        coeffs[n] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<RatFunc>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RatFunc::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of x^n (zero when beyond the stored degree).
    pub fn coeff(&self, n: usize) -> RatFunc {
        self.coeffs.get(n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(RatFunc::neg).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &RatFunc) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// f(scale*x + shift) by Horner's rule.
    pub fn compose_linear(&self, scale: &RatFunc, shift: &RatFunc) -> UniPoly {
        let linear = UniPoly::from_coeffs(vec![shift.clone(), scale.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&linear).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Coefficient-wise mathematical equality (cross-multiplied).
    pub fn equal(&self, other: &UniPoly) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i).equal_exact(&other.coeff(i)))
    }

    /// Exact division, `Err(InexactDivision)` on a nonzero remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Err(Error::InexactDivision(
                "difference quotient left a low-degree remainder".to_string(),
            ));
        }
        let mut quot = vec![RatFunc::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].div(&lead)?;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!(
                "nonzero remainder {:?}",
                UniPoly::from_coeffs(rem)
            )));
        }
        Ok(UniPoly::from_coeffs(quot))
    }

    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The substitution x' = scale*x + shift. The undeformed pair (1, 0) is
/// rejected: its difference quotient is 0/0.
#[derive(Clone, Debug)]
pub struct ShiftMap {
    scale: RatFunc,
    shift: RatFunc,
}

impl ShiftMap {
    pub fn new(scale: RatFunc, shift: RatFunc) -> Result<Self> {
        if scale.is_one() && shift.is_zero() {
            return Err(Error::UndeformedShift);
        }
        Ok(ShiftMap { scale, shift })
    }

    /// x' = qx with symbolic q.
    pub fn q_symbolic() -> Self {
        ShiftMap::new(RatFunc::symbol("q"), RatFunc::zero()).expect("deformed")
    }

    /// x' = x + eta with symbolic eta.
    pub fn eta_symbolic() -> Self {
        ShiftMap::new(RatFunc::one(), RatFunc::symbol("eta")).expect("deformed")
    }

    /// x' = qx + eta with both symbols.
    pub fn q_eta_symbolic() -> Self {
        ShiftMap::new(RatFunc::symbol("q"), RatFunc::symbol("eta")).expect("deformed")
    }

    pub fn scale(&self) -> &RatFunc {
        &self.scale
    }

    pub fn shift(&self) -> &RatFunc {
        &self.shift
    }

    /// The difference denominator x' - x = (scale - 1)x + shift.
    fn denominator(&self) -> UniPoly {
        UniPoly::from_coeffs(vec![self.shift.clone(), self.scale.sub(&RatFunc::one())])
    }
}

/// (f(x') - f(x)) / (x' - x), exact by construction.
pub fn apply_difference_operator(f: &UniPoly, s: &ShiftMap) -> Result<UniPoly> {
    let shifted = f.compose_linear(s.scale(), s.shift());
    let numer = shifted.sub(f);
    if numer.is_zero() {
        return Ok(UniPoly::zero());
    }
    numer.div_exact(&s.denominator())
}

/// Verifies the deformed Leibniz rule
/// del(f g) = (del f) g + f(x') (del g) with exact polynomial equality.
pub fn check_leibniz(f: &UniPoly, g: &UniPoly, s: &ShiftMap) -> CheckReport {
    let name = "calculus/leibniz";
    let run = || -> Result<(UniPoly, UniPoly)> {
        let lhs = apply_difference_operator(&f.mul(g), s)?;
        let df = apply_difference_operator(f, s)?;
        let dg = apply_difference_operator(g, s)?;
        let f_shifted = f.compose_linear(s.scale(), s.shift());
        let rhs = df.mul(g).add(&f_shifted.mul(&dg));
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => CheckReport::of(name, lhs.equal(&rhs), || {
            json!({
                "lhs": lhs.to_coeff_strings(),
                "rhs": rhs.to_coeff_strings(),
            })
        })
        .with_param("scale", s.scale().to_string())
        .with_param("shift", s.shift().to_string()),
        Err(e) => CheckReport::degenerate(name, json!(e.to_string())),
    }
}
