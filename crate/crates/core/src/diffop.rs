//! The algebra of matrix-valued differential operators.
//!
//! An element is a finite sum of derivative monomials (multi-exponents over
//! a fixed, ordered list of differentiation variables) with matrix
//! coefficients whose entries are rational functions. Composition applies
//! the formal Leibniz rule: a derivative moving past a coefficient picks up
//! the coefficient's derivative.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::Result;
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::ratfunc::RatFunc;

#[derive(Clone)]
pub struct DiffOp {
    dim: usize,
    vars: Vec<String>, // differentiation variables, fixed order
    terms: BTreeMap<Vec<u32>, RatMatrix>,
}

impl DiffOp {
    pub fn zero(dim: usize, vars: Vec<String>) -> Self {
        DiffOp {
            dim,
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// A zeroth-order operator: multiplication by a matrix.
    pub fn from_matrix(m: RatMatrix, vars: Vec<String>) -> Self {
        assert!(m.is_square());
        let dim = m.rows();
        let mut op = DiffOp::zero(dim, vars);
        op.add_term(vec![0; op.vars.len()], m);
        op
    }

    /// coeff * d/d(var).
    pub fn first_order(coeff: RatMatrix, var: &str, dim: usize, vars: Vec<String>) -> Self {
        let mut op = DiffOp::zero(dim, vars);
        let idx = op
            .vars
            .iter()
            .position(|v| v == var)
            .expect("derivative variable registered");
        let mut exp = vec![0; op.vars.len()];
        exp[idx] = 1;
        op.add_term(exp, coeff);
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatMatrix)> {
        self.terms.iter()
    }

    /// Coefficient of the given derivative monomial (zero matrix if absent).
    pub fn coeff(&self, exp: &[u32]) -> RatMatrix {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim, self.dim))
    }

    pub fn matrix_part(&self) -> RatMatrix {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exp: Vec<u32>, m: RatMatrix) {
        assert_eq!(exp.len(), self.vars.len());
        assert_eq!(m.rows(), self.dim);
        if m.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(m);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&m);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn compatible(&self, other: &DiffOp) {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        assert_eq!(self.vars, other.vars, "operator variable registry mismatch");
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        self.compatible(other);
        let mut out = self.clone();
        for (exp, m) in &other.terms {
            out.add_term(exp.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(self.dim, self.vars.clone());
        }
        DiffOp {
            dim: self.dim,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, m)| (e.clone(), m.scale(c)))
                .collect(),
        }
    }

    /// Composition in the operator algebra. For each pair of terms
    /// F d^alpha and G d^beta the Leibniz rule gives
    /// sum over gamma <= alpha of C(alpha, gamma) F (d^(alpha-gamma) G) d^(gamma+beta).
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        self.compatible(other);
        let mut out = DiffOp::zero(self.dim, self.vars.clone());
        for (alpha, f) in &self.terms {
            for (beta, g) in &other.terms {
                for gamma in sub_indices(alpha) {
                    let order: Vec<u32> = alpha
                        .iter()
                        .zip(&gamma)
                        .map(|(a, g)| a - g)
                        .collect();
                    let dg = differentiate_matrix(g, &order, &self.vars);
                    if dg.is_zero() {
                        continue;
                    }
                    let binom = multi_binomial(alpha, &gamma);
                    let mat = f.mul(&dg).scale_rational(&binom);
                    let exp: Vec<u32> = gamma.iter().zip(beta).map(|(g, b)| g + b).collect();
                    out.add_term(exp, mat);
                }
            }
        }
        out
    }

    /// AB - BA.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        self.compose(other).sub(&other.compose(self))
    }

    /// Rewrite every coefficient entry.
    pub fn try_map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<DiffOp> {
        let mut out = DiffOp::zero(self.dim, self.vars.clone());
        for (exp, m) in &self.terms {
            out.add_term(exp.clone(), m.try_map(&f)?);
        }
        Ok(out)
    }

    /// Substitute a rational function for a coefficient variable (not a
    /// differentiation variable of an active derivative monomial).
    pub fn substitute(&self, var: &str, value: &RatFunc) -> Result<DiffOp> {
        self.try_map_coeffs(|c| c.substitute(var, value))
    }

    /// All coefficient entries evaluate to zero at the point; a pole
    /// anywhere is reported as an error.
    pub fn is_zero_at(&self, point: &BTreeMap<String, Rational>) -> Result<bool> {
        for m in self.terms.values() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let entry = m.get(i, j);
                    if entry.is_zero() {
                        continue;
                    }
                    if !entry.eval(point)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Union of all variables appearing in coefficient entries.
    pub fn coeff_vars(&self) -> Vec<String> {
        let mut vars = Vec::new();
        for m in self.terms.values() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    vars.extend(m.get(i, j).vars());
                }
            }
        }
        vars.sort();
        vars.dedup();
        vars
    }

    /// Restrict every coefficient to a basis block (for graded spaces whose
    /// operators are block-diagonal).
    pub fn block(&self, range: std::ops::Range<usize>) -> DiffOp {
        let mut out = DiffOp::zero(range.len(), self.vars.clone());
        for (exp, m) in &self.terms {
            out.add_term(exp.clone(), m.block(range.clone(), range.clone()));
        }
        out
    }

    fn mono_label(&self, exp: &[u32]) -> String {
        let parts: Vec<String> = exp
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("d_{}", self.vars[i])
                } else {
                    format!("d_{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// JSON map from derivative-monomial labels to coefficient matrices.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (exp, m) in &self.terms {
            map.insert(self.mono_label(exp), m.to_json());
        }
        Value::Object(map)
    }
}

fn sub_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for prefix in &out {
            for g in 0..=a {
                let mut p = prefix.clone();
                p.push(g);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn multi_binomial(alpha: &[u32], gamma: &[u32]) -> Rational {
    let mut acc = 1i64;
    for (&a, &g) in alpha.iter().zip(gamma) {
        acc *= binomial(a, g);
    }
    Rational::from_int(acc)
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * i64::from(n - i) / i64::from(i + 1);
    }
    acc
}

fn differentiate_matrix(m: &RatMatrix, order: &[u32], vars: &[String]) -> RatMatrix {
    let mut out = m.clone();
    for (idx, &count) in order.iter().enumerate() {
        for _ in 0..count {
            out = out.map(|entry| entry.derivative(&vars[idx]));
            if out.is_zero() {
                return out;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["z1".to_string(), "z2".to_string()]
    }

    fn scalar(f: RatFunc) -> RatMatrix {
        let mut m = RatMatrix::zeros(1, 1);
        m.set(0, 0, f);
        m
    }

    #[test]
    fn canonical_commutation() {
        // [d_z1, z1] = 1
        let d = DiffOp::first_order(RatMatrix::identity(1), "z1", 1, vars());
        let z = DiffOp::from_matrix(scalar(RatFunc::symbol("z1")), vars());
        let c = d.commutator(&z);
        let expect = DiffOp::from_matrix(RatMatrix::identity(1), vars());
        assert!(c.sub(&expect).is_zero());

        // [d_z1, z2] = 0
        let z2 = DiffOp::from_matrix(scalar(RatFunc::symbol("z2")), vars());
        assert!(d.commutator(&z2).is_zero());
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = DiffOp::first_order(scalar(RatFunc::symbol("z2")), "z1", 1, vars())
            .add(&DiffOp::from_matrix(
                scalar(RatFunc::symbol("z1").mul(&RatFunc::symbol("z2"))),
                vars(),
            ));
        assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn second_order_leibniz() {
        // d^2 o f = f d^2 + 2 f' d + f'' with f = z1^2
        let d = DiffOp::first_order(RatMatrix::identity(1), "z1", 1, vars());
        let d2 = d.compose(&d);
        let f = RatFunc::symbol("z1").mul(&RatFunc::symbol("z1"));
        let op_f = DiffOp::from_matrix(scalar(f), vars());
        let composed = d2.compose(&op_f);
        // coefficient of d^0 is f'' = 2
        assert!(composed
            .coeff(&[0, 0])
            .equal(&scalar(RatFunc::from_int(2))));
        // coefficient of d^1 is 2 f' = 4 z1
        assert!(composed.coeff(&[1, 0]).equal(&scalar(
            RatFunc::symbol("z1").scale(&Rational::from_int(4))
        )));
        // coefficient of d^2 is f
        assert!(composed.coeff(&[2, 0]).equal(&scalar(
            RatFunc::symbol("z1").mul(&RatFunc::symbol("z1"))
        )));
    }

    #[test]
    fn derivative_of_pole_coefficient() {
        // [d_z1, 1/(z1-z2)] = -1/(z1-z2)^2
        let d = DiffOp::first_order(RatMatrix::identity(1), "z1", 1, vars());
        let pole = RatFunc::one()
            .div(&RatFunc::symbol("z1").sub(&RatFunc::symbol("z2")))
            .unwrap();
        let op = DiffOp::from_matrix(scalar(pole.clone()), vars());
        let c = d.commutator(&op);
        let expect = pole.mul(&pole).neg();
        assert!(c.coeff(&[0, 0]).equal(&scalar(expect)));
        assert!(c.coeff(&[1, 0]).is_zero());
    }
}
