//! The noncommutative (q,eta)-plane xy - q yx = eta y^2.
//!
//! Words in x, y are rewritten to the normal-form basis y^a x^b by the
//! single oriented rule xy -> q yx + eta y^2. Each rewrite either keeps the
//! letter counts and removes one (x before y) inversion, or trades an x for
//! a y; the pair (x-count, inversions) drops lexicographically, so rewriting
//! terminates. Total degree is preserved throughout.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::Result;
use crate::numbers::{deformed_factorial, DeformationParams, DeformedKind};
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

/// A finite word over {x, y}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlaneWord(pub Vec<Letter>);

impl PlaneWord {
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                'x' | 'X' => letters.push(Letter::X),
                'y' | 'Y' => letters.push(Letter::Y),
                other => {
                    return Err(crate::error::Error::Parse(format!(
                        "plane words use letters x and y only, got `{other}`"
                    )))
                }
            }
        }
        Ok(PlaneWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for PlaneWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::X { 'x' } else { 'y' })?;
        }
        Ok(())
    }
}

/// Polynomial in the normal-form basis: (a, b) indexes y^a x^b.
#[derive(Clone, Debug, Default)]
pub struct PlanePolynomial {
    terms: BTreeMap<(u32, u32), RatFunc>,
}

impl PlanePolynomial {
    pub fn zero() -> Self {
        PlanePolynomial::default()
    }

    pub fn one() -> Self {
        PlanePolynomial::monomial(0, 0, RatFunc::one())
    }

    pub fn monomial(y_exp: u32, x_exp: u32, coeff: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((y_exp, x_exp), coeff);
        }
        PlanePolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, y_exp: u32, x_exp: u32) -> RatFunc {
        self.terms
            .get(&(y_exp, x_exp))
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: (u32, u32), coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &PlanePolynomial) -> PlanePolynomial {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> PlanePolynomial {
        if c.is_zero() {
            return PlanePolynomial::zero();
        }
        PlanePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.mul(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PlanePolynomial) -> PlanePolynomial {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    /// Product in the plane algebra; cross terms x^b y^a' are normal-ordered.
    pub fn mul(&self, other: &PlanePolynomial, params: &DeformationParams) -> PlanePolynomial {
        let mut out = PlanePolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                let coeff = c1.mul(c2);
                if b1 == 0 || a2 == 0 {
                    out.insert((a1 + a2, b1 + b2), coeff);
                    continue;
                }
                let mut word = Vec::with_capacity((b1 + a2) as usize);
                word.extend(std::iter::repeat(Letter::X).take(b1 as usize));
                word.extend(std::iter::repeat(Letter::Y).take(a2 as usize));
                let middle = normal_order(&PlaneWord(word), params);
                for (&(a, b), c) in &middle.terms {
                    out.insert((a1 + a, b + b2), coeff.mul(c));
                }
            }
        }
        out
    }

    /// Mathematical equality, coefficient-wise.
    pub fn equal(&self, other: &PlanePolynomial) -> bool {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|k| self.coeff(k.0, k.1).equal_exact(&other.coeff(k.0, k.1)))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (&(a, b), c) in &self.terms {
            map.insert(format!("y^{a}*x^{b}"), Value::String(c.to_string()));
        }
        Value::Object(map)
    }
}

impl std::fmt::Display for PlanePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let mono = match (a, b) {
                    (0, 0) => "1".to_string(),
                    (0, 1) => "x".to_string(),
                    (1, 0) => "y".to_string(),
                    (a, 0) => format!("y^{a}"),
                    (0, b) => format!("x^{b}"),
                    (1, 1) => "y*x".to_string(),
                    (a, 1) => format!("y^{a}*x"),
                    (1, b) => format!("y*x^{b}"),
                    (a, b) => format!("y^{a}*x^{b}"),
                };
                format!("({c})*{mono}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which adjacent xy pair to rewrite first. Both strategies must agree; the
/// confluence suite checks this executably.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Rewrite a word to the y^a x^b basis with the rule xy -> q yx + eta y^2.
pub fn normal_order(w: &PlaneWord, params: &DeformationParams) -> PlanePolynomial {
    normal_order_with(w, params, RewriteStrategy::LeftmostFirst)
}

pub fn normal_order_with(
    w: &PlaneWord,
    params: &DeformationParams,
    strategy: RewriteStrategy,
) -> PlanePolynomial {
    let mut out = PlanePolynomial::zero();
    let mut pending: BTreeMap<Vec<Letter>, RatFunc> = BTreeMap::new();
    pending.insert(w.0.clone(), RatFunc::one());
    while let Some((word, coeff)) = pending.pop_first() {
        let site = match strategy {
            RewriteStrategy::LeftmostFirst => {
                word.windows(2).position(|p| p == [Letter::X, Letter::Y])
            }
            RewriteStrategy::RightmostFirst => word
                .windows(2)
                .rposition(|p| p == [Letter::X, Letter::Y]),
        };
        match site {
            None => {
                let a = word.iter().filter(|&&l| l == Letter::Y).count() as u32;
                let b = word.len() as u32 - a;
                out.insert((a, b), coeff);
            }
            Some(i) => {
                let mut swapped = word.clone();
                swapped[i] = Letter::Y;
                swapped[i + 1] = Letter::X;
                let mut doubled = word;
                doubled[i] = Letter::Y;
                doubled[i + 1] = Letter::Y;
                for (next, factor) in [(swapped, &params.q), (doubled, &params.eta)] {
                    let c = coeff.mul(factor);
                    if c.is_zero() {
                        continue;
                    }
                    match pending.entry(next) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(c);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let sum = e.get().add(&c);
                            if sum.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = sum;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Normal-ordered (x + y)^n.
pub fn power_of_sum(n: u32, params: &DeformationParams) -> PlanePolynomial {
    let x_plus_y = PlanePolynomial::monomial(0, 1, RatFunc::one())
        .add(&PlanePolynomial::monomial(1, 0, RatFunc::one()));
    let mut acc = PlanePolynomial::one();
    for _ in 0..n {
        acc = acc.mul(&x_plus_y, params);
    }
    acc
}

/// Per-degree outcome of the functional-equation solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    /// the interior equations pin the degree uniquely
    Determined,
    /// the interior equations are mutually inconsistent (no solution)
    Inconsistent,
    /// a one-parameter family remains; the recorded representative picks the
    /// deformed-exponential member when that is possible
    Free,
}

/// Solved coefficient streams for f1(x+y) = f2(y) f3(x) with f_i(0) = 1 and
/// the degree-1 gauge f2'(0) = f3'(0) = 1.
#[derive(Clone, Debug)]
pub struct FuncEqReport {
    pub degree: u32,
    pub alpha: Vec<RatFunc>,
    pub beta: Vec<RatFunc>,
    pub gamma: Vec<RatFunc>,
    /// 1/(n)_{q,eta}! for the same parameters
    pub target: Vec<RatFunc>,
    pub statuses: Vec<DegreeStatus>,
    pub alpha_matches: bool,
    pub beta_matches: bool,
    pub gamma_matches: bool,
    pub inconsistent_witness: Option<Value>,
}

impl FuncEqReport {
    /// The deformed exponential lies in the solution set when one of the
    /// three solved streams reproduces it.
    pub fn passed(&self) -> bool {
        self.inconsistent_witness.is_none()
            && (self.alpha_matches || self.beta_matches || self.gamma_matches)
    }

    pub fn to_json(&self) -> Value {
        let strings = |v: &[RatFunc]| -> Vec<String> { v.iter().map(|c| c.to_string()).collect() };
        json!({
            "degree": self.degree,
            "gauge": "f2'(0) = f3'(0) = 1",
            "f1": strings(&self.alpha),
            "f2": strings(&self.beta),
            "f3": strings(&self.gamma),
            "exp_qeta": strings(&self.target),
            "statuses": self.statuses.iter().map(|s| format!("{s:?}").to_lowercase()).collect::<Vec<_>>(),
            "f1_matches_exp_qeta": self.alpha_matches,
            "f2_matches_exp_qeta": self.beta_matches,
            "f3_matches_exp_qeta": self.gamma_matches,
            "verdict": if self.passed() { "pass" } else { "fail" },
        })
    }

    pub fn to_check_report(&self) -> CheckReport {
        let json = self.to_json();
        CheckReport::of("plane/funceq", self.passed(), || json)
            .with_param("degree", self.degree)
    }
}

/// Expands f1(x+y) = f2(y) f3(x) over the plane algebra degree by degree and
/// solves for the series coefficients. Every normal-form coefficient of
/// (x+y)^n yields one linear equation alpha_n P_n[(a,b)] = beta_a gamma_b;
/// the interior equations (0 < a < n) pin alpha_n, the boundary ones then
/// define beta_n and gamma_n.
pub fn solve_functional_equation(params: &DeformationParams, degree: u32) -> Result<FuncEqReport> {
    assert!(degree >= 1, "degree must be at least 1");
    let d = degree as usize;
    let mut alpha = vec![RatFunc::one(); d + 1];
    let mut beta = vec![RatFunc::one(); d + 1];
    let mut gamma = vec![RatFunc::one(); d + 1];
    let mut statuses = Vec::new();
    let mut inconsistent_witness = None;

    // target stream: 1/(n)_{q,eta}!
    let mut target = Vec::with_capacity(d + 1);
    for n in 0..=degree {
        target.push(deformed_factorial(n, DeformedKind::QEta, params)?.inverse()?);
    }

    'degrees: for n in 2..=d {
        let p = power_of_sum(n as u32, params);
        let mut candidate: Option<RatFunc> = None;
        for a in 1..n {
            let b = n - a;
            let coeff = p.coeff(a as u32, b as u32);
            let rhs = beta[a].mul(&gamma[b]);
            if coeff.is_zero() {
                if !rhs.is_zero() {
                    inconsistent_witness = Some(json!({
                        "degree": n,
                        "monomial": format!("y^{a}*x^{b}"),
                        "equation": format!("0 * alpha_{n} = {rhs}"),
                    }));
                    statuses.push(DegreeStatus::Inconsistent);
                    break 'degrees;
                }
                continue;
            }
            let value = rhs.div(&coeff)?;
            match &candidate {
                None => candidate = Some(value),
                Some(existing) => {
                    if !existing.equal_exact(&value) {
                        inconsistent_witness = Some(json!({
                            "degree": n,
                            "monomial": format!("y^{a}*x^{b}"),
                            "candidates": [existing.to_string(), value.to_string()],
                        }));
                        statuses.push(DegreeStatus::Inconsistent);
                        break 'degrees;
                    }
                }
            }
        }
        let p_y = p.coeff(n as u32, 0);
        let p_x = p.coeff(0, n as u32);
        match candidate {
            Some(value) => {
                alpha[n] = value;
                statuses.push(DegreeStatus::Determined);
            }
            None => {
                // family: alpha_n free; pick the member that carries f2 onto
                // the deformed exponential when that is possible
                alpha[n] = if p_y.is_zero() {
                    RatFunc::zero()
                } else {
                    target[n].div(&p_y)?
                };
                statuses.push(DegreeStatus::Free);
            }
        }
        beta[n] = alpha[n].mul(&p_y);
        gamma[n] = alpha[n].mul(&p_x);
    }

    let solved = statuses.len() + 1; // degrees 0 and 1 always solved
    let matches = |stream: &[RatFunc]| -> bool {
        inconsistent_witness.is_none()
            && stream
                .iter()
                .zip(&target)
                .take(solved + 1)
                .all(|(a, b)| a.equal_exact(b))
    };
    Ok(FuncEqReport {
        degree,
        alpha_matches: matches(&alpha),
        beta_matches: matches(&beta),
        gamma_matches: matches(&gamma),
        alpha,
        beta,
        gamma,
        target,
        statuses,
        inconsistent_witness,
    })
}

/// Inversion count: pairs (i < j) with x at i and y at j.
pub fn inversions(w: &PlaneWord) -> u32 {
    let mut count = 0;
    let mut xs_seen = 0;
    for l in &w.0 {
        match l {
            Letter::X => xs_seen += 1,
            Letter::Y => count += xs_seen,
        }
    }
    count
}

/// Confluence check: both rewrite strategies on random words.
pub fn check_confluence(words: u32, max_len: usize, seed: u64) -> CheckReport {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let params = DeformationParams::symbolic();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..words {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Letter::X
                } else {
                    Letter::Y
                }
            })
            .collect();
        let w = PlaneWord(letters);
        let left = normal_order_with(&w, &params, RewriteStrategy::LeftmostFirst);
        let right = normal_order_with(&w, &params, RewriteStrategy::RightmostFirst);
        if !left.equal(&right) {
            return CheckReport::fail(
                "plane/confluence",
                json!({
                    "word": w.to_string(),
                    "leftmost": left.to_json(),
                    "rightmost": right.to_json(),
                    "index": i,
                }),
            )
            .with_param("seed", seed)
            .with_param("words", words);
        }
    }
    CheckReport::pass("plane/confluence")
        .with_param("seed", seed)
        .with_param("words", words)
        .with_param("max_len", max_len as u64)
}

/// The three specialization coherences of the plane relation: Manin plane at
/// eta = 0 (closed form q^inv(w) y^a x^b), the rational plane at q = 1, and
/// the commutative identity at q = 1, eta = 0.
pub fn check_plane_specializations(seed: u64) -> CheckReport {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let manin = DeformationParams::symbolic().with_eta(RatFunc::zero());
    let rational = DeformationParams::symbolic().with_q(RatFunc::one());
    let commutative = DeformationParams::new(RatFunc::one(), RatFunc::zero());
    for i in 0..60u32 {
        let len = rng.gen_range(0..=8usize);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Letter::X
                } else {
                    Letter::Y
                }
            })
            .collect();
        let w = PlaneWord(letters);
        let a = w.0.iter().filter(|&&l| l == Letter::Y).count() as u32;
        let b = w.len() as u32 - a;

        // eta = 0: single term q^inv(w) y^a x^b
        let got = normal_order(&w, &manin);
        let q_pow = RatFunc::symbol("q").pow(i64::from(inversions(&w))).unwrap();
        let expect = PlanePolynomial::monomial(a, b, q_pow);
        if !got.equal(&expect) {
            return CheckReport::fail(
                "plane/specializations",
                json!({"case": "manin", "word": w.to_string(), "got": got.to_json(), "index": i}),
            )
            .with_param("seed", seed);
        }

        // q = 1, eta = 0: identity up to sorting
        let got = normal_order(&w, &commutative);
        let expect = PlanePolynomial::monomial(a, b, RatFunc::one());
        if !got.equal(&expect) {
            return CheckReport::fail(
                "plane/specializations",
                json!({"case": "commutative", "word": w.to_string(), "got": got.to_json()}),
            )
            .with_param("seed", seed);
        }

        // q = 1: all coefficients must be polynomials in eta with the
        // filtration and the x y^a = y^a x + (a) eta y^{a+1} base case
        let got = normal_order(&w, &rational);
        if got
            .terms()
            .any(|(&(ta, tb), _)| ta + tb != a + b)
        {
            return CheckReport::fail(
                "plane/specializations",
                json!({"case": "rational-filtration", "word": w.to_string(), "got": got.to_json()}),
            )
            .with_param("seed", seed);
        }
    }

    // rational-plane base cases x y^a at q = 1, oracle x y^a = y^a x + a eta y^{a+1}
    for a in 1..=6u32 {
        let mut letters = vec![Letter::X];
        letters.extend(std::iter::repeat(Letter::Y).take(a as usize));
        let got = normal_order(&PlaneWord(letters), &rational);
        let expect = PlanePolynomial::monomial(a, 1, RatFunc::one()).add(
            &PlanePolynomial::monomial(
                a + 1,
                0,
                RatFunc::symbol("eta").scale(&Rational::from_int(i64::from(a))),
            ),
        );
        if !got.equal(&expect) {
            return CheckReport::fail(
                "plane/specializations",
                json!({"case": "rational-base", "a": a, "got": got.to_json()}),
            )
            .with_param("seed", seed);
        }
    }
    CheckReport::pass("plane/specializations").with_param("seed", seed)
}
